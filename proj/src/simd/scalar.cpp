// Reference kernels. The other variants are tested against these.

#include <cmath>

#include "variants.hpp"

namespace cesaro::simd::detail::scalar {

SeriesSum inverse_square_sum(std::uint64_t first, std::uint64_t last) {
  SeriesSum out;
  if (first > last) return out;
  for (std::uint64_t k = last + 1; k-- > first;) {
    const auto kd = static_cast<double>(k);
    const double term = 1.0 / (kd * kd);
    out.value += term;
    out.abs_bound += std::fabs(out.value) + term;
  }
  return out;
}

SeriesSum commutator_term_sum(std::uint64_t first, std::uint64_t last) {
  SeriesSum out;
  if (first > last) return out;
  for (std::uint64_t k = last + 1; k-- > first;) {
    const auto kd = static_cast<double>(k);
    const double term = 1.0 / (kd * kd * (kd + 1.0));
    out.value += term;
    out.abs_bound += std::fabs(out.value) + 2.0 * term;
  }
  return out;
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) y[i] = dot(a + i * cols, x, cols);
}

void gemv_transposed(const double* a, std::size_t rows, std::size_t cols, const double* x,
                     double* y) {
  for (std::size_t j = 0; j < cols; ++j) y[j] = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    const double xi = x[i];
    const double* row = a + i * cols;
    for (std::size_t j = 0; j < cols; ++j) y[j] += row[j] * xi;
  }
}

} // namespace cesaro::simd::detail::scalar
