#include "cesaro/operators.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <ostream>
#include <system_error>

namespace cesaro {
namespace {

PowerDecay reciprocal_from_diagonal() {
  return PowerDecay{[](Index i) { return i; }, [](Index) { return Interval::point(1.0); }, 1.0,
                    true};
}

void put_double(std::ostream& os, double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  os.write(buf, res.ptr - buf);
}

Rational reduce(long long num, long long den) {
  const long long g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

Rational add(const Rational& a, const Rational& b) {
  return reduce(a.num * b.den + b.num * a.den, a.den * b.den);
}

Rational mul(const Rational& a, const Rational& b) { return reduce(a.num * b.num, a.den * b.den); }

// Exact entries of C and C*.
Rational cesaro_rational(Index i, Index j) {
  return j <= i ? Rational{1, static_cast<long long>(i + 1)} : Rational{0, 1};
}
Rational adjoint_rational(Index i, Index j) {
  return j >= i ? Rational{1, static_cast<long long>(j + 1)} : Rational{0, 1};
}

} // namespace

EntryOracle cesaro() {
  EntryOracle op;
  op.name = "cesaro";
  op.kind = OperatorKind::cesaro;
  op.entry = [](Index i, Index j) {
    return j <= i ? Interval::reciprocal_of(i + 1) : Interval::point(0.0);
  };
  op.row_abs_sum = [](Index) { return Interval::point(1.0); };
  op.row_support_end = [](Index i) { return i + 1; };
  op.transpose = [] { return cesaro_adjoint(); };
  return op;
}

EntryOracle cesaro_adjoint() {
  EntryOracle op;
  op.name = "cesaro_adjoint";
  op.kind = OperatorKind::cesaro_adjoint;
  op.entry = [](Index i, Index j) {
    return j >= i ? Interval::reciprocal_of(j + 1) : Interval::point(0.0);
  };
  // Row sums are harmonic tails: divergent, so no closed form.
  op.row_decay = reciprocal_from_diagonal();
  op.transpose = [] { return cesaro(); };
  return op;
}

EntryOracle gram(const TailConfig& cfg) {
  auto table = TailTable::shared(cfg);
  EntryOracle op;
  op.name = "gram";
  op.kind = OperatorKind::gram;
  op.symmetric = true;
  op.entry = [table](Index i, Index j) { return table->basel_tail(closed_form_index(i, j)); };
  op.transpose = [table] { return gram(table->config()); };
  return op;
}

EntryOracle cogram() {
  EntryOracle op;
  op.name = "cogram";
  op.kind = OperatorKind::cogram;
  op.symmetric = true;
  op.entry = [](Index i, Index j) { return Interval::reciprocal_of(closed_form_index(i, j)); };
  op.row_decay = reciprocal_from_diagonal();
  op.transpose = [] { return cogram(); };
  return op;
}

RowEnvelope commutator_row_envelope() {
  return RowEnvelope{[](std::size_t n) { return row_sum_estimate(n); }, "(2n-1)/(2(n-1)^2)", 2};
}

EntryOracle commutator(const TailConfig& cfg) {
  auto table = TailTable::shared(cfg);
  EntryOracle op;
  op.name = "commutator";
  op.kind = OperatorKind::commutator;
  op.symmetric = true;
  op.entry = [table](Index i, Index j) {
    return table->commutator_tail(closed_form_index(i, j));
  };
  // Row i (1-based row n = i+1): n t_n + sum_{j>n} t_j.
  op.row_abs_sum = [table](Index i) { return table->commutator_row_sum(i + 1); };
  op.row_envelope = commutator_row_envelope();
  op.transpose = [table] { return commutator(table->config()); };
  return op;
}

bool DenseSection::is_symmetric() const {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (data[i * n + j] != data[j * n + i]) return false;
  return true;
}

DenseSection truncate(const EntryOracle& op, std::size_t n) {
  if (n < 1) throw DomainError("section size must be >= 1");
  DenseSection sec;
  sec.n = n;
  sec.data.assign(n * n, 0.0);
  double widest = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j0 = op.symmetric ? i : 0;
    for (std::size_t j = j0; j < n; ++j) {
      const Interval a = op.entry(i, j);
      widest = std::max(widest, a.width());
      sec.data[i * n + j] = a.mid();
      if (op.symmetric) sec.data[j * n + i] = sec.data[i * n + j];
    }
  }
  sec.max_width = widest;
  return sec;
}

std::vector<double> apply(const EntryOracle& op, std::span<const double> x, std::size_t n) {
  if (x.size() != n)
    throw DomainError("apply: vector length " + std::to_string(x.size()) +
                      " does not match section size " + std::to_string(n));
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t end = op.row_support_end ? std::min(n, op.row_support_end(i)) : n;
    double acc = 0.0;
    for (std::size_t j = 0; j < end; ++j) acc += op.entry(i, j).mid() * x[j];
    y[i] = acc;
  }
  return y;
}

void write_csv(const DenseSection& sec, std::ostream& os) {
  for (std::size_t j = 0; j < sec.n; ++j) {
    if (j) os << ',';
    os << 'c' << j;
  }
  os << '\n';
  for (std::size_t i = 0; i < sec.n; ++i) {
    for (std::size_t j = 0; j < sec.n; ++j) {
      if (j) os << ',';
      put_double(os, sec.at(i, j));
    }
    os << '\n';
  }
}

Interval gram_partial_product(Index i, Index j, std::size_t terms) {
  if (terms <= std::max(i, j)) throw DomainError("partial product needs terms > max(i, j)");
  const EntryOracle adj = cesaro_adjoint();
  const EntryOracle ces = cesaro();
  Interval acc = Interval::point(0.0);
  for (Index k = 0; k < terms; ++k) acc = acc + adj.entry(i, k) * ces.entry(k, j);
  // Remaining k >= terms contribute 1/(k+1)^2, i.e. s_{terms+1}.
  return acc + Interval(rounding::div_down(1.0, static_cast<double>(terms) + 1.0),
                        rounding::div_up(1.0, static_cast<double>(terms)));
}

Rational cogram_finite_product(Index i, Index j) {
  Rational acc{0, 1};
  for (Index k = 0; k <= std::max(i, j); ++k) {
    const Rational term = mul(cesaro_rational(i, k), adjoint_rational(k, j));
    if (term.num == 0) {
      if (k > std::min(i, j)) break;
      continue;
    }
    acc = add(acc, term);
  }
  return acc;
}

Rational cogram_closed_form(Index i, Index j) {
  return Rational{1, static_cast<long long>(closed_form_index(i, j))};
}

} // namespace cesaro
