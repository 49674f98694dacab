#include <cstdlib>
#include <string>

#include "cesaro/errors.hpp"
#include "variants.hpp"

namespace cesaro::simd {
namespace {

#define CESARO_KERNEL_SET(tag, ns)                                                             \
  KernelSet {                                                                                   \
    Isa::tag, &detail::ns::inverse_square_sum, &detail::ns::commutator_term_sum,               \
        &detail::ns::dot, &detail::ns::gemv, &detail::ns::gemv_transposed                       \
  }

const KernelSet kScalar = CESARO_KERNEL_SET(scalar, scalar);
#if defined(CESARO_HAVE_AVX2)
const KernelSet kAvx2 = CESARO_KERNEL_SET(avx2, avx2);
#endif
#if defined(CESARO_HAVE_NEON)
const KernelSet kNeon = CESARO_KERNEL_SET(neon, neon);
#endif

#undef CESARO_KERNEL_SET

bool cpu_has_avx2() {
#if defined(CESARO_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

void check_range(std::uint64_t first, std::uint64_t last) {
  if (first == 0) throw DomainError("series index must start at 1");
  if (last > kMaxSeriesIndex)
    throw DomainError("series index " + std::to_string(last) + " exceeds supported maximum " +
                      std::to_string(kMaxSeriesIndex));
}

} // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
  case Isa::scalar: return "scalar";
  case Isa::avx2: return "avx2";
  case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
  case Isa::scalar: return true;
  case Isa::avx2: return cpu_has_avx2();
  case Isa::neon:
#if defined(CESARO_HAVE_NEON)
    return true;
#else
    return false;
#endif
  }
  return false;
}

const KernelSet& kernels(Isa isa) {
  if (!isa_available(isa))
    throw UnsupportedError("instruction set '" + std::string(to_string(isa)) +
                           "' is not available on this machine");
  switch (isa) {
#if defined(CESARO_HAVE_AVX2)
  case Isa::avx2: return kAvx2;
#endif
#if defined(CESARO_HAVE_NEON)
  case Isa::neon: return kNeon;
#endif
  default: return kScalar;
  }
}

Isa preferred_isa() {
  if (const char* forced = std::getenv("CESARO_SIMD")) {
    const std::string_view want{forced};
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (want == to_string(isa) && isa_available(isa)) return isa;
    }
  }
  if (isa_available(Isa::avx2)) return Isa::avx2;
  if (isa_available(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

const KernelSet& active() {
  static const KernelSet& selected = kernels(preferred_isa());
  return selected;
}

SeriesSum inverse_square_sum(std::uint64_t first, std::uint64_t last) {
  check_range(first, last);
  return active().inverse_square_sum(first, last);
}

SeriesSum commutator_term_sum(std::uint64_t first, std::uint64_t last) {
  check_range(first, last);
  return active().commutator_term_sum(first, last);
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("dot: length mismatch");
  return active().dot(a.data(), b.data(), a.size());
}

void gemv(std::span<const double> a, std::size_t rows, std::size_t cols,
          std::span<const double> x, std::span<double> y) {
  if (a.size() != rows * cols || x.size() != cols || y.size() != rows)
    throw DomainError("gemv: shape mismatch");
  active().gemv(a.data(), rows, cols, x.data(), y.data());
}

void gemv_transposed(std::span<const double> a, std::size_t rows, std::size_t cols,
                     std::span<const double> x, std::span<double> y) {
  if (a.size() != rows * cols || x.size() != rows || y.size() != cols)
    throw DomainError("gemv_transposed: shape mismatch");
  active().gemv_transposed(a.data(), rows, cols, x.data(), y.data());
}

} // namespace cesaro::simd
