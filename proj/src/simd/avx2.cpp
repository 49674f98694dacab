// AVX2 + FMA kernels. Compiled with -mavx2 -mfma; only reached after the
// dispatcher has confirmed both features at runtime.

#include <immintrin.h>

#include "variants.hpp"

namespace cesaro::simd::detail::avx2 {
namespace {

inline double magnitude(double x) { return x < 0.0 ? -x : x; }

inline __m256d abs_pd(__m256d v) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(sign, v);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Shared driver for descending series. Lane l handles k = last - l - 4t.
// Term evaluates one vector of terms; Scalar evaluates one term; rounds is
// the number of roundings per term charged to the error bound.
template <class VecTerm, class ScalarTerm>
SeriesSum descending_series(std::uint64_t first, std::uint64_t last, VecTerm vec_term,
                            ScalarTerm scalar_term, double rounds) {
  SeriesSum out;
  if (first > last) return out;
  const std::uint64_t count = last - first + 1;
  const std::uint64_t blocks = count / 4;
  const std::uint64_t rem = count % 4;

  __m256d acc = _mm256_setzero_pd();
  __m256d bound = _mm256_setzero_pd();
  const __m256d step = _mm256_set1_pd(4.0);
  const __m256d charge = _mm256_set1_pd(rounds);
  const auto top = static_cast<double>(last);
  __m256d k = _mm256_set_pd(top - 3.0, top - 2.0, top - 1.0, top);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    const __m256d term = vec_term(k);
    acc = _mm256_add_pd(acc, term);
    bound = _mm256_add_pd(bound, _mm256_add_pd(abs_pd(acc), _mm256_mul_pd(charge, term)));
    k = _mm256_sub_pd(k, step);
  }

  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = lanes[0];
  double abs_bound = hsum(bound);
  for (int l = 1; l < 4; ++l) {
    s += lanes[l];
    abs_bound += magnitude(s);
  }
  for (std::uint64_t i = rem; i-- > 0;) {
    const double term = scalar_term(static_cast<double>(first + i));
    s += term;
    abs_bound += magnitude(s) + rounds * term;
  }
  out.value = s;
  out.abs_bound = abs_bound;
  return out;
}

} // namespace

SeriesSum inverse_square_sum(std::uint64_t first, std::uint64_t last) {
  const __m256d one = _mm256_set1_pd(1.0);
  return descending_series(
      first, last, [one](__m256d k) { return _mm256_div_pd(one, _mm256_mul_pd(k, k)); },
      [](double k) { return 1.0 / (k * k); }, 1.0);
}

SeriesSum commutator_term_sum(std::uint64_t first, std::uint64_t last) {
  const __m256d one = _mm256_set1_pd(1.0);
  return descending_series(
      first, last,
      [one](__m256d k) {
        const __m256d k2 = _mm256_mul_pd(k, k);
        return _mm256_div_pd(one, _mm256_mul_pd(k2, _mm256_add_pd(k, one)));
      },
      [](double k) { return 1.0 / (k * k * (k + 1.0)); }, 2.0);
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  __m256d s2 = _mm256_setzero_pd();
  __m256d s3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), s1);
    s2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), s2);
    s3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), s3);
  }
  for (; i + 4 <= n; i += 4) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
  }
  double s = hsum(_mm256_add_pd(_mm256_add_pd(s0, s1), _mm256_add_pd(s2, s3)));
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
    const __m256d xv = _mm256_set1_pd(xr);
    std::size_t j = 0;
    for (; j + 4 <= cols; j += 4) {
      const __m256d yv = _mm256_loadu_pd(y + j);
      _mm256_storeu_pd(y + j, _mm256_fmadd_pd(_mm256_loadu_pd(row + j), xv, yv));
    }
    for (; j < cols; ++j) y[j] += row[j] * xr;
  }
}

} // namespace cesaro::simd::detail::avx2
