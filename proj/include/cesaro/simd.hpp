#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation and, where the target supports it, an AVX2 (x86-64) or NEON
// (aarch64) variant. The variant is picked once at startup from the CPU
// features; CESARO_SIMD=scalar|avx2|neon in the environment forces a choice.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace cesaro::simd {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa);

/// Floating sum of positive series terms together with a running error
/// bound: |value - exact| <= u * abs_bound * (1 + O(u)), u = 2^-53, where
/// exact is the sum of the exact terms. abs_bound accumulates the magnitude
/// of every rounded partial sum plus each term once per rounding spent
/// evaluating it.
struct SeriesSum {
  double value = 0.0;
  double abs_bound = 0.0;
};

/// Largest index the series kernels accept; keeps k*k and k*k*(k+1)
/// within one rounding.
inline constexpr std::uint64_t kMaxSeriesIndex = std::uint64_t{1} << 25;

struct KernelSet {
  Isa isa;
  /// sum_{k=first}^{last} 1/k^2, accumulated from k = last downward.
  SeriesSum (*inverse_square_sum)(std::uint64_t first, std::uint64_t last);
  /// sum_{k=first}^{last} 1/(k^2 (k+1)), accumulated from k = last downward.
  SeriesSum (*commutator_term_sum)(std::uint64_t first, std::uint64_t last);
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// y = A x for row-major A (rows x cols).
  void (*gemv)(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
  /// y = A^T x for row-major A (rows x cols); y has cols entries.
  void (*gemv_transposed)(const double* a, std::size_t rows, std::size_t cols, const double* x,
                          double* y);
};

bool isa_available(Isa isa);

/// Kernel table for a specific ISA; throws UnsupportedError when the CPU or
/// build lacks it.
const KernelSet& kernels(Isa isa);

/// Best available ISA, honouring the CESARO_SIMD override.
Isa preferred_isa();

/// Kernel table selected at first use.
const KernelSet& active();

// Span-level entry points over the active kernel set.
SeriesSum inverse_square_sum(std::uint64_t first, std::uint64_t last);
SeriesSum commutator_term_sum(std::uint64_t first, std::uint64_t last);
double dot(std::span<const double> a, std::span<const double> b);
void gemv(std::span<const double> a, std::size_t rows, std::size_t cols,
          std::span<const double> x, std::span<double> y);
void gemv_transposed(std::span<const double> a, std::size_t rows, std::size_t cols,
                     std::span<const double> x, std::span<double> y);

} // namespace cesaro::simd
