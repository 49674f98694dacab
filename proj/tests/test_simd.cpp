#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "cesaro/errors.hpp"
#include "cesaro/simd.hpp"

using namespace cesaro;
using namespace cesaro::simd;

namespace {

constexpr double kUnit = 0x1p-53;

std::vector<Isa> available() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
    if (isa_available(isa)) out.push_back(isa);
  return out;
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

// Reference values from tests/oracles/frozen_values.py (mpmath, 50 digits).
struct SeriesCase {
  std::uint64_t first, last;
  double inverse_square, commutator;
};
const SeriesCase kSeries[] = {
    {1, 1000, 1.6439345666815598031, 0.64493356768056080214},
    {7, 12345, 0.15346417678486480576, 0.010688031821776703197},
    {1, 1u << 20, 1.6449331131743647774, 0.64493406684777168984},
};

} // namespace

TEST_CASE("scalar kernels are always available and the active set is usable") {
  CHECK(isa_available(Isa::scalar));
  CHECK(kernels(Isa::scalar).isa == Isa::scalar);
  CHECK(isa_available(active().isa));
  for (Isa isa : {Isa::avx2, Isa::neon})
    if (!isa_available(isa)) CHECK_THROWS_AS(kernels(isa), UnsupportedError);
}

TEST_CASE("series sums stay within their running error bound") {
  for (Isa isa : available()) {
    const KernelSet& k = kernels(isa);
    for (const auto& c : kSeries) {
      CAPTURE(to_string(isa));
      CAPTURE(c.first);
      const SeriesSum a = k.inverse_square_sum(c.first, c.last);
      const SeriesSum b = k.commutator_term_sum(c.first, c.last);
      // Reference values are rounded to 20 digits; allow 1e-19 relative for that.
      CHECK(std::abs(a.value - c.inverse_square) <=
            kUnit * a.abs_bound * 1.01 + 1e-19 * c.inverse_square);
      CHECK(std::abs(b.value - c.commutator) <= kUnit * b.abs_bound * 1.01 + 1e-19 * c.commutator);
      CHECK(a.abs_bound >= a.value);
    }
  }
}

TEST_CASE("SIMD series sums agree with the scalar reference within both bounds") {
  const KernelSet& ref = kernels(Isa::scalar);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> pick(1, 200000);
  for (Isa isa : available()) {
    const KernelSet& k = kernels(isa);
    for (int trial = 0; trial < 200; ++trial) {
      std::uint64_t a = pick(rng), b = pick(rng);
      if (a > b) std::swap(a, b);
      CAPTURE(a);
      CAPTURE(b);
      for (auto fn : {&KernelSet::inverse_square_sum, &KernelSet::commutator_term_sum}) {
        const SeriesSum x = (ref.*fn)(a, b);
        const SeriesSum y = (k.*fn)(a, b);
        CHECK(std::abs(x.value - y.value) <= kUnit * 1.01 * (x.abs_bound + y.abs_bound));
      }
    }
    // Ranges shorter than a vector still work.
    for (std::uint64_t n = 1; n < 12; ++n) {
      CHECK(k.inverse_square_sum(5, 4 + n).value ==
            doctest::Approx(ref.inverse_square_sum(5, 4 + n).value).epsilon(1e-15));
    }
  }
}

TEST_CASE("SIMD dot and gemv agree with the scalar reference") {
  const KernelSet& ref = kernels(Isa::scalar);
  std::mt19937_64 rng(12);
  for (Isa isa : available()) {
    const KernelSet& k = kernels(isa);
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 33u, 250u}) {
      const auto a = random_vector(rng, n), b = random_vector(rng, n);
      double mag = 0.0;
      for (std::size_t i = 0; i < n; ++i) mag += std::abs(a[i] * b[i]);
      CHECK(std::abs(k.dot(a.data(), b.data(), n) - ref.dot(a.data(), b.data(), n)) <=
            4.0 * n * kUnit * mag + 1e-300);
    }
    for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{1, 1}, {5, 9}, {17, 3}, {64, 64}}) {
      const auto a = random_vector(rng, rows * cols);
      const auto x = random_vector(rng, cols), xt = random_vector(rng, rows);
      std::vector<double> y1(rows), y2(rows), z1(cols), z2(cols);
      ref.gemv(a.data(), rows, cols, x.data(), y1.data());
      k.gemv(a.data(), rows, cols, x.data(), y2.data());
      ref.gemv_transposed(a.data(), rows, cols, xt.data(), z1.data());
      k.gemv_transposed(a.data(), rows, cols, xt.data(), z2.data());
      for (std::size_t i = 0; i < rows; ++i) CHECK(y2[i] == doctest::Approx(y1[i]).epsilon(1e-12).scale(100.0));
      for (std::size_t j = 0; j < cols; ++j) CHECK(z2[j] == doctest::Approx(z1[j]).epsilon(1e-12).scale(100.0));
    }
  }
}

TEST_CASE("span entry points validate shapes and ranges") {
  std::vector<double> a(6, 1.0), x(3, 1.0), y(2);
  gemv(a, 2, 3, x, y);
  CHECK(y[0] == 3.0);
  CHECK_THROWS_AS(gemv(a, 3, 3, x, y), DomainError);
  CHECK_THROWS_AS(gemv_transposed(a, 2, 3, x, y), DomainError);
  CHECK_THROWS_AS(dot(a, x), DomainError);
  CHECK_THROWS_AS(inverse_square_sum(0, 10), DomainError);
  CHECK_THROWS_AS(commutator_term_sum(1, kMaxSeriesIndex + 1), DomainError);
  CHECK(inverse_square_sum(5, 4).value == 0.0);
}
