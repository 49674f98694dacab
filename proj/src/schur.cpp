#include "cesaro/schur.hpp"

#include <algorithm>
#include <cmath>

namespace cesaro {
namespace {

using rounding::next_down;
using rounding::next_up;

// glibc pow is accurate to < 1 ulp; two ulps each way is a safe enclosure.
Interval pow_enclosure(double x, double e) {
  const double v = std::pow(x, e);
  return {next_down(next_down(v)), next_up(next_up(v))};
}

// Encloses sum_{l>=L} l^-s for s > 1. Upper: L^-s + int_L^inf x^-s dx.
// Lower: int_L^inf x^-s dx.
Interval power_tail(double L, double s) {
  const Interval integral = pow_enclosure(L, 1.0 - s) * Interval::quotient(1.0, s - 1.0);
  const Interval first = pow_enclosure(L, -s);
  return {integral.lo(), (integral + first).hi()};
}

class WeightCache {
public:
  explicit WeightCache(const SchurWeight& w) : weight_(w) {}

  const Interval& at(Index j) {
    while (values_.size() <= j) {
      const Interval p = weight_.p(values_.size());
      if (!(p.lo() > 0.0)) throw DomainError("Schur weight must be strictly positive");
      values_.push_back(p);
    }
    return values_[j];
  }

private:
  const SchurWeight& weight_;
  std::vector<Interval> values_;
};

void check_ceiling(std::size_t n, const Interval& partial) {
  if (partial.lo() > kDivergenceCeiling)
    throw DivergentRowError(n, partial.lo(), "partial sum exceeds divergence ceiling");
}

Interval weighted_row_sum(const EntryOracle& op, Index i, const SchurWeight& weight,
                          WeightCache& p, const TailConfig& budget) {
  const std::size_t n = i + 1;
  if (weight.is_unit() && op.row_abs_sum) return op.row_abs_sum(i);

  Interval acc = Interval::point(0.0);
  if (op.row_support_end) {
    const Index end = op.row_support_end(i);
    for (Index j = 0; j < end; ++j) {
      acc = acc + op.entry(i, j).abs() * p.at(j);
      check_ceiling(n, acc);
    }
    return acc * p.at(i).reciprocal();
  }

  if (op.row_decay && weight.power) {
    const PowerDecay& decay = *op.row_decay;
    const Index explicit_end = std::max<Index>(decay.start(i), budget.cutoff);
    const double s = decay.exponent + *weight.power;
    if (s <= 1.0) {
      // Summing the explicit part gives the witness partial sum.
      for (Index j = 0; j < explicit_end; ++j) acc = acc + op.entry(i, j).abs() * p.at(j);
      if (decay.exact)
        throw DivergentRowError(n, acc.lo(),
                                "terms decay like j^-" + std::to_string(s) + " with exponent <= 1");
      throw UnsupportedError("row " + std::to_string(n) +
                             ": decay bound too weak to decide convergence");
    }
    for (Index j = 0; j < explicit_end; ++j) {
      acc = acc + op.entry(i, j).abs() * p.at(j);
      check_ceiling(n, acc);
    }
    // sum_{j >= explicit_end} c_i (j+1)^-s = c_i sum_{l >= explicit_end+1} l^-s
    Interval tail = decay.coefficient(i) * power_tail(static_cast<double>(explicit_end) + 1.0, s);
    if (!decay.exact) tail = Interval(0.0, tail.hi());
    return (acc + tail) * p.at(i).reciprocal();
  }

  throw UnsupportedError("operator '" + op.name + "' has no certified row-sum route for weight '" +
                         weight.label + "'");
}

} // namespace

SchurWeight SchurWeight::unit() {
  return SchurWeight{[](Index) { return Interval::point(1.0); }, "p(n)=1", 0.0};
}

SchurWeight SchurWeight::power_law(double r) {
  if (!(r >= 0.0)) throw DomainError("weight exponent must be nonnegative");
  if (r == 0.0) return unit();
  SchurWeight w;
  w.power = r;
  if (r == 0.5) {
    w.label = "p(n)=(n+1)^(-1/2)";
    w.p = [](Index n) {
      return Interval::point(static_cast<double>(n) + 1.0).sqrt().reciprocal();
    };
  } else {
    w.label = "p(n)=(n+1)^(-" + std::to_string(r) + ")";
    w.p = [r](Index n) { return pow_enclosure(static_cast<double>(n) + 1.0, -r); };
  }
  return w;
}

std::vector<RowSum> row_sum_sweep(const EntryOracle& op, std::size_t first, std::size_t last,
                                  const SchurWeight& weight, const TailConfig& tail_budget) {
  if (first < 1 || last < first) throw DomainError("row range must satisfy 1 <= first <= last");
  if (!weight.p) throw DomainError("Schur weight has no function");
  WeightCache p(weight);
  std::vector<RowSum> out;
  out.reserve(last - first + 1);
  for (std::size_t n = first; n <= last; ++n)
    out.push_back({n, weighted_row_sum(op, n - 1, weight, p, tail_budget)});
  return out;
}

AnalyticTail envelope_tail(const EntryOracle& op) {
  if (!op.row_envelope) throw UnsupportedError("operator '" + op.name + "' has no row envelope");
  const RowEnvelope env = *op.row_envelope;
  AnalyticTail t;
  t.rows = [env](std::size_t last) { return env.bound(std::max(last + 1, env.valid_from)); };
  if (op.symmetric) t.cols = t.rows;
  return t;
}

AnalyticTail cesaro_sqrt_weight_tail() {
  AnalyticTail t;
  t.rows = [](std::size_t) { return 2.0; };
  t.cols = [](std::size_t last) {
    return rounding::add_up(2.0, rounding::div_up(1.0, static_cast<double>(last) + 1.0));
  };
  return t;
}

SchurResult schur_test(const EntryOracle& op, const SchurWeight& weight, std::size_t first,
                       std::size_t last, const AnalyticTail& tail, const TailConfig& tail_budget) {
  if (!tail.rows) throw UnsupportedError("Schur test needs an analytic row tail beyond the sweep");
  if (!op.symmetric && !tail.cols)
    throw UnsupportedError("Schur test needs an analytic column tail for a nonsymmetric operator");

  SchurResult result;
  std::vector<RowSum> rows;
  try {
    rows = row_sum_sweep(op, first, last, weight, tail_budget);
  } catch (const DivergentRowError& e) {
    result.failure = DivergenceWitness{"row", e.row(), e.partial_sum(), e.what()};
    return result;
  }

  SchurCertificate cert;
  cert.operator_name = op.name;
  cert.weight = weight;
  cert.sweep_first = first;
  cert.sweep_last = last;

  auto reduce = [&](const std::vector<RowSum>& sums, double analytic, std::size_t* argmax) {
    Interval acc = sums.front().value;
    std::size_t best = sums.front().n;
    for (const auto& rs : sums) {
      if (rs.value.hi() > acc.hi()) best = rs.n;
      acc = Interval::max(acc, rs.value);
    }
    if (argmax) *argmax = best;
    return Interval(acc.lo(), std::max(acc.hi(), analytic));
  };

  cert.alpha = reduce(rows, tail.rows(last), &cert.alpha_row);
  if (op.symmetric) {
    cert.beta = cert.alpha;
    cert.beta_from_symmetry = true;
  } else {
    if (!op.transpose)
      throw UnsupportedError("operator '" + op.name + "' exposes no transpose for column sums");
    std::vector<RowSum> cols;
    try {
      cols = row_sum_sweep(op.transpose(), first, last, weight, tail_budget);
    } catch (const DivergentRowError& e) {
      result.failure = DivergenceWitness{"column", e.row(), e.partial_sum(), e.what()};
      return result;
    }
    cert.beta = reduce(cols, tail.cols(last), nullptr);
  }
  cert.norm_bound = rounding::sqrt_up(rounding::mul_up(cert.alpha.hi(), cert.beta.hi()));
  result.certificate = std::move(cert);
  return result;
}

DecayCertificate compactness_certificate(const EntryOracle& op, std::vector<std::size_t> Ns,
                                         std::size_t window) {
  if (!op.symmetric)
    throw UnsupportedError("compactness certificate needs a symmetric operator");
  if (!op.row_abs_sum || !op.row_envelope)
    throw UnsupportedError("compactness certificate needs closed row sums and a row envelope");
  if (Ns.empty()) throw DomainError("no truncation sizes given");
  if (window < 1) throw DomainError("sample window must be >= 1");

  std::sort(Ns.begin(), Ns.end());
  DecayCertificate cert;
  cert.envelope = *op.row_envelope;
  cert.window = window;

  bool ok = true;
  for (std::size_t N : Ns) {
    if (N + 1 < cert.envelope.valid_from)
      throw DomainError("envelope is only valid from row " +
                        std::to_string(cert.envelope.valid_from));
    DecaySample s;
    s.N = N;
    s.envelope = cert.envelope.bound(N + 1);
    s.sup = op.row_abs_sum(N);  // row N+1
    for (std::size_t n = N + 2; n <= N + window; ++n)
      s.sup = Interval::max(s.sup, op.row_abs_sum(n - 1));
    ok = ok && s.sup.hi() <= s.envelope;
    if (!cert.samples.empty()) ok = ok && s.envelope <= cert.samples.back().envelope;
    cert.samples.push_back(s);
  }
  if (cert.samples.size() > 1)
    ok = ok && cert.samples.back().envelope < cert.samples.front().envelope;
  cert.vanishes = ok;
  return cert;
}

Interval truncation_error_bound(const EntryOracle& op, std::size_t N) {
  if (op.kind != OperatorKind::commutator || !op.row_abs_sum || !op.row_envelope)
    throw UnsupportedError("truncation error bound is specific to the self-commutator");
  if (N < 2) throw DomainError("truncation error bound needs N >= 2");

  // Rows n <= N of A - A_N hold t_j for j > N only: sum_{j>N} t_j
  // = row_N - N t_N, and < (1/2) sum_{j>=N} 1/j^2 < 1/(2(N-1)).
  const Interval row_n = op.row_abs_sum(N - 1);
  const Interval t_n = op.entry(N - 1, N - 1);
  Interval head = row_n - t_n.scaled(static_cast<double>(N));
  const double device = rounding::div_up(1.0, 2.0 * static_cast<double>(N - 1));
  head = Interval(std::max(0.0, head.lo()), std::min(head.hi(), device));

  // Rows n > N keep their full row sum, bounded by the monotone envelope.
  const Interval first_excluded = op.row_abs_sum(N);
  const Interval rest(first_excluded.lo(),
                      std::max(first_excluded.hi(), op.row_envelope->bound(N + 1)));
  return Interval::max(head, rest);
}

} // namespace cesaro
