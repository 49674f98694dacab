#pragma once

// Internal declarations shared by the per-ISA translation units. Keep this
// header free of inline code: it is included by files compiled with wider
// instruction sets.

#include <cstddef>
#include <cstdint>

#include "cesaro/simd.hpp"

namespace cesaro::simd::detail {

#define CESARO_DECLARE_VARIANT(ns)                                                              \
  namespace ns {                                                                                 \
  SeriesSum inverse_square_sum(std::uint64_t first, std::uint64_t last);                        \
  SeriesSum commutator_term_sum(std::uint64_t first, std::uint64_t last);                       \
  double dot(const double* a, const double* b, std::size_t n);                                  \
  void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);   \
  void gemv_transposed(const double* a, std::size_t rows, std::size_t cols, const double* x,    \
                       double* y);                                                               \
  }

CESARO_DECLARE_VARIANT(scalar)
CESARO_DECLARE_VARIANT(avx2)
CESARO_DECLARE_VARIANT(neon)

#undef CESARO_DECLARE_VARIANT

} // namespace cesaro::simd::detail
