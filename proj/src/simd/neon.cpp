// NEON kernels for aarch64 (two double lanes; NEON is mandatory there).

#include <arm_neon.h>

#include "variants.hpp"

namespace cesaro::simd::detail::neon {
namespace {

inline double magnitude(double x) { return x < 0.0 ? -x : x; }

// Lane l handles k = last - l - 2t.
template <class VecTerm, class ScalarTerm>
SeriesSum descending_series(std::uint64_t first, std::uint64_t last, VecTerm vec_term,
                            ScalarTerm scalar_term, double rounds) {
  SeriesSum out;
  if (first > last) return out;
  const std::uint64_t count = last - first + 1;
  const std::uint64_t blocks = count / 2;
  const std::uint64_t rem = count % 2;

  float64x2_t acc = vdupq_n_f64(0.0);
  float64x2_t bound = vdupq_n_f64(0.0);
  const float64x2_t step = vdupq_n_f64(2.0);
  const float64x2_t charge = vdupq_n_f64(rounds);
  const auto top = static_cast<double>(last);
  const double init[2] = {top, top - 1.0};
  float64x2_t k = vld1q_f64(init);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    const float64x2_t term = vec_term(k);
    acc = vaddq_f64(acc, term);
    bound = vaddq_f64(bound, vaddq_f64(vabsq_f64(acc), vmulq_f64(charge, term)));
    k = vsubq_f64(k, step);
  }

  double s = vgetq_lane_f64(acc, 0);
  s += vgetq_lane_f64(acc, 1);
  double abs_bound = vgetq_lane_f64(bound, 0) + vgetq_lane_f64(bound, 1) + magnitude(s);
  if (rem != 0) {
    const double term = scalar_term(static_cast<double>(first));
    s += term;
    abs_bound += magnitude(s) + rounds * term;
  }
  out.value = s;
  out.abs_bound = abs_bound;
  return out;
}

} // namespace

SeriesSum inverse_square_sum(std::uint64_t first, std::uint64_t last) {
  const float64x2_t one = vdupq_n_f64(1.0);
  return descending_series(
      first, last, [one](float64x2_t k) { return vdivq_f64(one, vmulq_f64(k, k)); },
      [](double k) { return 1.0 / (k * k); }, 1.0);
}

SeriesSum commutator_term_sum(std::uint64_t first, std::uint64_t last) {
  const float64x2_t one = vdupq_n_f64(1.0);
  return descending_series(
      first, last,
      [one](float64x2_t k) {
        const float64x2_t k2 = vmulq_f64(k, k);
        return vdivq_f64(one, vmulq_f64(k2, vaddq_f64(k, one)));
      },
      [](double k) { return 1.0 / (k * k * (k + 1.0)); }, 2.0);
}

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t s0 = vdupq_n_f64(0.0);
  float64x2_t s1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 = vfmaq_f64(s0, vld1q_f64(a + i), vld1q_f64(b + i));
    s1 = vfmaq_f64(s1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(s0, s1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot(a + r * cols, x, cols);
}

void gemv_transposed(const double* a, std::size_t rows, std::size_t cols, const double* x,
                     double* y) {
  for (std::size_t j = 0; j < cols; ++j) y[j] = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    const double xr = x[r];
    if (xr == 0.0) continue;
    const double* row = a + r * cols;
    const float64x2_t xv = vdupq_n_f64(xr);
    std::size_t j = 0;
    for (; j + 2 <= cols; j += 2) {
      vst1q_f64(y + j, vfmaq_f64(vld1q_f64(y + j), vld1q_f64(row + j), xv));
    }
    for (; j < cols; ++j) y[j] += row[j] * xr;
  }
}

} // namespace cesaro::simd::detail::neon
