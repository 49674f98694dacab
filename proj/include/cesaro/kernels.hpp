#pragma once

// Certified enclosures of the scalar sequences behind the Cesàro
// self-commutator:
//
//   s_m = sum_{k>=m} 1/k^2,      t_m = s_m - 1/m = sum_{k>=m} 1/(k^2 (k+1)).
//
// Each value is an explicit floating sum over m <= k <= cutoff plus an
// analytic bracket for the remainder. Rounding error of the explicit part is
// bounded by a running error estimate scaled by TailConfig::rounding_slack.

#include <cfloat>
#include <cstddef>
#include <memory>
#include <vector>

#include "cesaro/interval.hpp"

namespace cesaro {

struct TailConfig {
  /// Last explicitly summed index M.
  std::size_t cutoff = 1'000'000;
  /// Relative slack charged per accumulated term. Must be at least
  /// DBL_EPSILON / 2 for the enclosures to be rigorous.
  double rounding_slack = DBL_EPSILON;

  /// Throws DomainError unless 2 <= cutoff <= 2^25 and
  /// 0 <= rounding_slack <= 1e-9.
  void validate() const;

  friend bool operator==(const TailConfig&, const TailConfig&) = default;
};

/// Encloses s_m. Requires m >= 1 and cfg.cutoff >= m.
Interval basel_tail(std::size_t m, const TailConfig& cfg = {});

/// Encloses t_m. Requires m >= 1 and cfg.cutoff >= m.
Interval commutator_tail(std::size_t m, const TailConfig& cfg = {});

struct IdentityWitness {
  std::size_t m = 0;
  Interval lhs;  ///< s_m - 1/m
  Interval rhs;  ///< t_m
  bool consistent = false;
};

/// Checks s_m - 1/m = t_m by intersecting the two independent enclosures.
IdentityWitness verify_identity(std::size_t m, const TailConfig& cfg = {});

/// 1/(2(m-1)^2) rounded up; strict upper bound for t_m. Requires m >= 2.
double commutator_tail_bound(std::size_t m);

/// (2n-1)/(2(n-1)^2) rounded up; strict upper bound for the absolute row
/// sum of row n (1-based) of the self-commutator. Requires n >= 2.
double row_sum_estimate(std::size_t n);

/// Enclosures of s_m and t_m for every 1 <= m <= cutoff, built in one
/// descending pass. Also stores prefix sums of t so that the tail
/// sum_{j>n} t_j = 1 - sum_{j<=n} t_j is O(1).
class TailTable {
public:
  explicit TailTable(const TailConfig& cfg = {});

  /// Process-wide cached instance per configuration.
  static std::shared_ptr<const TailTable> shared(const TailConfig& cfg = {});

  const TailConfig& config() const noexcept { return cfg_; }
  std::size_t cutoff() const noexcept { return cfg_.cutoff; }

  Interval basel_tail(std::size_t m) const;
  Interval commutator_tail(std::size_t m) const;
  IdentityWitness verify_identity(std::size_t m) const;

  /// Encloses sum_{j=1}^{n} t_j (0 for n = 0).
  Interval commutator_prefix(std::size_t n) const;

  /// Encloses sum_{j>n} t_j, using sum_{j>=1} t_j = 1.
  Interval commutator_tail_sum(std::size_t n) const;

  /// Encloses n t_n + sum_{j>n} t_j, the absolute row sum of row n (1-based)
  /// of the self-commutator.
  Interval commutator_row_sum(std::size_t n) const;

private:
  void check_index(std::size_t m) const;

  TailConfig cfg_;
  Interval basel_bracket_;
  Interval commutator_bracket_;
  std::vector<double> basel_lo_, basel_hi_;
  std::vector<double> comm_lo_, comm_hi_;
  std::vector<double> prefix_lo_, prefix_hi_;
};

} // namespace cesaro
