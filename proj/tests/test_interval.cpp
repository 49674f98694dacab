#include <doctest.h>

#include <cmath>
#include <random>

#include "cesaro/errors.hpp"
#include "cesaro/interval.hpp"

using namespace cesaro;
namespace r = cesaro::rounding;

namespace {

double random_double(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-30, 30);
  return std::ldexp(mant(rng), expo(rng));
}

} // namespace

TEST_CASE("directed addition brackets the exact sum") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20000; ++trial) {
    const double a = random_double(rng), b = random_double(rng);
    const double s = a + b;
    const double err = r::two_sum_error(a, b, s);  // exact = s + err
    const double lo = r::add_down(a, b), hi = r::add_up(a, b);
    CHECK(lo - s <= err);
    CHECK(hi - s >= err);
    CHECK(hi - lo <= std::abs(std::nextafter(s, INFINITY) - s) * 2);
    if (err == 0.0) CHECK(lo == hi);
  }
}

TEST_CASE("directed multiplication and division bracket the exact result") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20000; ++trial) {
    const double a = random_double(rng), b = random_double(rng);
    const double p = a * b;
    const double perr = std::fma(a, b, -p);
    CHECK(r::mul_down(a, b) - p <= perr);
    CHECK(r::mul_up(a, b) - p >= perr);

    if (b == 0.0) continue;
    // q <= a/b  <=>  q*b - a has the sign opposite to b (or is zero).
    const double qd = r::div_down(a, b), qu = r::div_up(a, b);
    const double rd = std::fma(qd, b, -a), ru = std::fma(qu, b, -a);
    CHECK((b > 0 ? rd <= 0.0 : rd >= 0.0));
    CHECK((b > 0 ? ru >= 0.0 : ru <= 0.0));
    CHECK(qu <= std::nextafter(qd, INFINITY));
  }
}

TEST_CASE("directed square roots bracket the exact root") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1e6);
  for (int trial = 0; trial < 20000; ++trial) {
    const double x = u(rng);
    const double lo = r::sqrt_down(x), hi = r::sqrt_up(x);
    CHECK(std::fma(lo, lo, -x) <= 0.0);
    CHECK(std::fma(hi, hi, -x) >= 0.0);
  }
  CHECK(r::sqrt_down(4.0) == 2.0);
  CHECK(r::sqrt_up(4.0) == 2.0);
}

TEST_CASE("reciprocal_of encloses 1/k within one ulp") {
  for (std::uint64_t k = 1; k < 5000; ++k) {
    const Interval x = Interval::reciprocal_of(k);
    const double kd = static_cast<double>(k);
    CHECK(std::fma(x.lo(), kd, -1.0) <= 0.0);
    CHECK(std::fma(x.hi(), kd, -1.0) >= 0.0);
    CHECK(x.hi() <= std::nextafter(x.lo(), INFINITY));
  }
  CHECK(Interval::reciprocal_of(4).is_point());
  CHECK_FALSE(Interval::reciprocal_of(3).is_point());
  CHECK_THROWS_AS(Interval::reciprocal_of(0), DomainError);
}

TEST_CASE("interval operations contain every pointwise result") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 5000; ++trial) {
    double a0 = random_double(rng), a1 = random_double(rng);
    double b0 = random_double(rng), b1 = random_double(rng);
    const Interval A(std::min(a0, a1), std::max(a0, a1));
    const Interval B(std::min(b0, b1), std::max(b0, b1));
    const double x = A.lo() + u(rng) * (A.hi() - A.lo());
    const double y = B.lo() + u(rng) * (B.hi() - B.lo());
    if (!A.contains(x) || !B.contains(y)) continue;
    CHECK((A + B).contains(x + y));
    CHECK((A - B).contains(x - y));
    CHECK((A * B).contains(x * y));
    CHECK((-A).contains(-x));
    CHECK(A.abs().contains(std::abs(x)));
    CHECK(Interval::hull(A, B).contains(A));
    CHECK(Interval::max(A, B).contains(std::max(x, y)));
    if (A.lo() > 0.0) {
      CHECK(A.reciprocal().contains(1.0 / x));
      CHECK(A.sqrt().contains(std::sqrt(x)));
    }
    const double c = u(rng) * 10.0;
    CHECK(A.scaled(c).contains(c * x));
  }
}

TEST_CASE("interval construction and queries") {
  CHECK_THROWS_AS(Interval(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(Interval(NAN, 1.0), DomainError);
  CHECK_THROWS_AS(Interval(1.0, 2.0).scaled(-1.0), DomainError);
  CHECK_THROWS_AS(Interval(-1.0, 2.0).reciprocal(), DomainError);

  const Interval x(1.0, 3.0);
  CHECK(x.mid() == 2.0);
  CHECK(x.width() == 2.0);
  CHECK(x.intersects(Interval(3.0, 4.0)));
  CHECK_FALSE(x.intersects(Interval(3.5, 4.0)));
  CHECK(Interval(-2.0, 1.0).abs() == Interval(0.0, 2.0));
  CHECK(Interval::point(5.0).is_point());
  CHECK(x.inflated(1.0).contains(Interval(0.0, 4.0)));
}
