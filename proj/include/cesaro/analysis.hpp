#pragma once

// Finite-section numerics: norms and eigenvalues of dense sections, the
// positive-semidefiniteness witness for the self-commutator, and eigenvector
// probes for the adjoint Cesàro operator.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "cesaro/kernels.hpp"
#include "cesaro/operators.hpp"

namespace cesaro {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed'cafe'f00d'0001ULL;

/// Largest singular value of the section's midpoint matrix (Lanczos on
/// A^T A with full reorthogonalisation, deterministic for a given seed).
double dense_norm(const DenseSection& sec, std::uint64_t seed = kDefaultSeed);

/// Smallest eigenvalue of a symmetric section. Throws DomainError otherwise.
double min_eigenvalue(const DenseSection& sec);

struct SpectralReport {
  std::size_t n = 0;
  double min_eig = 0.0;
  double max_eig = 0.0;
  double norm2 = 0.0;
  double tolerance_used = 0.0;
  double max_width = 0.0;
  bool passed = false;
};

/// Positive-semidefiniteness of the n x n section of C*C - CC*: passes iff
/// its smallest eigenvalue is >= -tol. Refuses tol < n * (section max width).
SpectralReport hyponormality_check(std::size_t n, double tol, const TailConfig& cfg = {});

enum class Summability { inside, outside, inconclusive };

std::string_view to_string(Summability s);

struct EigenProbe {
  std::complex<double> lambda;
  std::vector<std::complex<double>> coeffs;  ///< coeffs[0] = 1
  double residual = 0.0;       ///< ||(C*_n x - lambda x)_{k < n/2}||_2
  double coeff_norm = 0.0;     ///< ||x||_2
  double decay_exponent = 0.0; ///< fitted p in |x_k| ~ k^-p (+inf for finite support)
  Summability verdict = Summability::inconclusive;
};

/// Candidate eigenvector of C* for lambda from consecutive-row differences:
/// x_{k+1} = x_k (1 - 1/(lambda (k+1))), x_0 = 1. Square summability is
/// decided from the decay exponent fitted over the last quarter of indices
/// (the threshold is 1/2; within 0.05 of it the verdict is inconclusive).
EigenProbe adjoint_eigen_probe(std::complex<double> lambda, std::size_t n);

/// Sorted eigenvalues of the n x n section of a symmetric oracle.
std::vector<double> section_spectrum(const EntryOracle& op, std::size_t n);

} // namespace cesaro
