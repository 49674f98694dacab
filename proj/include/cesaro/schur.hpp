#pragma once

// Schur's boundedness test on l^2 (counting measure) with a positive weight
// p: if sum_j |a_{n,j}| p(j) <= alpha p(n) for every row and
// sum_i |a_{i,n}| p(i) <= beta p(n) for every column then ||A||^2 <= alpha beta.
// Rows and columns up to a sweep limit are enclosed numerically; beyond it
// the caller supplies an analytic bound. Also: decay certificates for the
// compactness criterion (row sums beyond N tending to zero) and truncation
// error bounds for ||A - A_N||.
//
// Row numbers in this module are 1-based.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cesaro/interval.hpp"
#include "cesaro/kernels.hpp"
#include "cesaro/operators.hpp"

namespace cesaro {

struct SchurWeight {
  /// p(index), 0-based; must enclose a strictly positive value.
  std::function<Interval(Index)> p;
  std::string label;
  /// Set when p(n) = (n+1)^-r; enables analytic tails of power-decaying rows.
  std::optional<double> power;

  static SchurWeight unit();
  /// p(n) = (n+1)^-r, r >= 0.
  static SchurWeight power_law(double r);
  bool is_unit() const { return power && *power == 0.0; }
};

struct RowSum {
  std::size_t n = 0;  ///< 1-based row
  Interval value;
};

/// Partial sums above this value count as divergence.
inline constexpr double kDivergenceCeiling = 1e6;

/// Encloses sum_j |a_{n,j}| p(j)/p(n) for n in [first, last] (1-based).
/// tail_budget.cutoff bounds how many terms of an infinite row are summed
/// before its analytic tail takes over. Throws DivergentRowError when a row
/// provably diverges and UnsupportedError when no certified route exists.
std::vector<RowSum> row_sum_sweep(const EntryOracle& op, std::size_t first, std::size_t last,
                                  const SchurWeight& weight, const TailConfig& tail_budget = {});

/// Analytic bounds on weighted row (and column) sums beyond a sweep limit:
/// rows(n1) bounds sup_{n>n1} of the weighted row sums.
struct AnalyticTail {
  std::function<double(std::size_t)> rows;
  std::function<double(std::size_t)> cols;
};

/// Row tail from the oracle's row envelope (unit weight only).
AnalyticTail envelope_tail(const EntryOracle& op);

/// Tails for the Cesàro matrix with p(n) = (n+1)^-1/2: weighted row sums
/// are below 2, weighted column n sums below 2 + 1/n.
AnalyticTail cesaro_sqrt_weight_tail();

struct SchurCertificate {
  std::string operator_name;
  SchurWeight weight;
  Interval alpha;
  Interval beta;
  double norm_bound = 0.0;  ///< sqrt(alpha.hi * beta.hi), rounded up
  std::size_t sweep_first = 0;
  std::size_t sweep_last = 0;
  std::size_t alpha_row = 0;  ///< row attaining the largest swept upper bound
  bool beta_from_symmetry = false;
};

struct DivergenceWitness {
  std::string line;  ///< "row" or "column"
  std::size_t index = 0;
  double partial_sum = 0.0;
  std::string reason;
};

struct SchurResult {
  std::optional<SchurCertificate> certificate;
  std::optional<DivergenceWitness> failure;
  bool ok() const { return certificate.has_value(); }
};

/// Runs the weighted Schur test over rows/columns [first, last] plus the
/// analytic tail. Refuses (UnsupportedError) without a tail bound.
SchurResult schur_test(const EntryOracle& op, const SchurWeight& weight, std::size_t first,
                       std::size_t last, const AnalyticTail& tail,
                       const TailConfig& tail_budget = {});

struct DecaySample {
  std::size_t N = 0;
  Interval sup;           ///< encloses max_{N < n <= N+window} of the row sums
  double envelope = 0.0;  ///< envelope at n = N+1
};

struct DecayCertificate {
  RowEnvelope envelope;
  std::size_t window = 0;
  std::vector<DecaySample> samples;
  bool vanishes = false;
};

/// For a symmetric oracle with closed-form row sums and a row envelope.
/// Row and column conditions coincide by symmetry, so only rows are checked.
DecayCertificate compactness_certificate(const EntryOracle& op, std::vector<std::size_t> Ns,
                                         std::size_t window = 1000);

/// Encloses the Schur bound max(sup_{n<=N} sum_{j>N} t_j, sup_{n>N} row_n)
/// on ||A - A_N|| for the self-commutator. Requires N >= 2.
Interval truncation_error_bound(const EntryOracle& op, std::size_t N);

} // namespace cesaro
