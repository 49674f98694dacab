#pragma once

// Lazy infinite matrices on l^2 (0-based indices). For the matrices whose
// closed forms are indexed by max(i, j), m(i, j) = max(i, j) + 1 is the
// 1-based index used by s_m and t_m.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cesaro/interval.hpp"
#include "cesaro/kernels.hpp"

namespace cesaro {

using Index = std::size_t;

enum class OperatorKind { cesaro, cesaro_adjoint, gram, cogram, commutator, custom };

/// |a(i, j)| = c(i) (j+1)^-exponent for all j >= start(i). When exact is
/// false the relation is only an upper bound.
struct PowerDecay {
  std::function<Index(Index)> start;
  std::function<Interval(Index)> coefficient;
  double exponent = 0.0;
  bool exact = false;
};

/// Analytic bound on the absolute row sum of row n (1-based), valid and
/// nonincreasing for n >= valid_from.
struct RowEnvelope {
  std::function<double(std::size_t)> bound;
  std::string formula_id;
  std::size_t valid_from = 2;
};

struct EntryOracle {
  std::string name;
  OperatorKind kind = OperatorKind::custom;
  bool symmetric = false;
  std::function<Interval(Index, Index)> entry;
  /// Closed-form absolute row sum of row i (0-based), when known.
  std::function<Interval(Index)> row_abs_sum;
  /// Exclusive end of the nonzero part of row i, for eventually-zero rows.
  std::function<Index(Index)> row_support_end;
  std::optional<PowerDecay> row_decay;
  std::optional<RowEnvelope> row_envelope;
  /// Oracle of the transposed matrix, when available.
  std::function<EntryOracle()> transpose;
};

/// m(i, j) = max(i, j) + 1.
inline std::size_t closed_form_index(Index i, Index j) { return (i > j ? i : j) + 1; }

EntryOracle cesaro();
EntryOracle cesaro_adjoint();
/// C*C, entries s_{m(i,j)}.
EntryOracle gram(const TailConfig& cfg = {});
/// CC*, entries 1/m(i,j).
EntryOracle cogram();
/// C*C - CC*, entries t_{m(i,j)}.
EntryOracle commutator(const TailConfig& cfg = {});

/// Row envelope (2n-1)/(2(n-1)^2) of the self-commutator.
RowEnvelope commutator_row_envelope();

/// Upper-left n x n block collapsed to interval midpoints.
struct DenseSection {
  std::size_t n = 0;
  std::vector<double> data;  ///< row-major
  double max_width = 0.0;    ///< widest entry interval collapsed

  double at(std::size_t i, std::size_t j) const { return data[i * n + j]; }
  bool is_symmetric() const;
};

DenseSection truncate(const EntryOracle& op, std::size_t n);

/// y_i = sum_{j<n} mid(a(i, j)) x_j for i < n.
std::vector<double> apply(const EntryOracle& op, std::span<const double> x, std::size_t n);

/// Header "c0,...,c{n-1}" followed by one row per line, shortest round-trip
/// decimal representation.
void write_csv(const DenseSection& sec, std::ostream& os);

// Brute-force checks of the closed forms against the defining products.

/// sum_{k<terms} C*(i, k) C(k, j) plus the bracket (1/(terms+1), 1/terms) for
/// the remaining k. Requires terms > max(i, j).
Interval gram_partial_product(Index i, Index j, std::size_t terms);

struct Rational {
  long long num = 0;
  long long den = 1;
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Exact value of sum_k C(i, k) C*(k, j); the sum stops at k = min(i, j).
Rational cogram_finite_product(Index i, Index j);

/// Exact closed form 1/m(i, j) of CC*.
Rational cogram_closed_form(Index i, Index j);

} // namespace cesaro
