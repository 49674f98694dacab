#include "cesaro/kernels.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "cesaro/simd.hpp"

namespace cesaro {
namespace {

using rounding::add_down;
using rounding::add_up;
using rounding::div_down;
using rounding::div_up;
using rounding::mul_down;
using rounding::mul_up;

// sum_{k>M} 1/k^2 lies strictly between 1/(M+1) and 1/M (integral comparison).
Interval basel_bracket(std::size_t cutoff) {
  const auto m = static_cast<double>(cutoff);
  return {div_down(1.0, m + 1.0), div_up(1.0, m)};
}

// Upper: 1/(k^2(k+1)) < 1/k^3 and sum_{k>M} 1/k^3 < int_M^inf dx/x^3 = 1/(2M^2).
// Lower: 1/(k^2(k+1)) > int_k^{k+1} dx/x^3 = (2k+1)/(2k^2(k+1)^2), so the tail
// exceeds int_{M+1}^inf dx/x^3 = 1/(2(M+1)^2).
Interval commutator_bracket(std::size_t cutoff) {
  const auto m = static_cast<double>(cutoff);
  return {div_down(1.0, 2.0 * (m + 1.0) * (m + 1.0)), div_up(1.0, 2.0 * m * m)};
}

Interval enclose(double value, double abs_bound, double slack) {
  const double err = mul_up(slack, abs_bound);
  return {add_down(value, -err), add_up(value, err)};
}

void check_tail_args(std::size_t m, const TailConfig& cfg) {
  cfg.validate();
  if (m < 1) throw DomainError("tail index must be >= 1");
  if (cfg.cutoff < m)
    throw DomainError("cutoff " + std::to_string(cfg.cutoff) + " is below tail index " +
                      std::to_string(m));
}

} // namespace

void TailConfig::validate() const {
  if (cutoff < 2) throw DomainError("cutoff must be >= 2, got " + std::to_string(cutoff));
  if (cutoff > simd::kMaxSeriesIndex)
    throw DomainError("cutoff " + std::to_string(cutoff) + " exceeds 2^25");
  if (!(rounding_slack >= 0.0) || rounding_slack > 1e-9)
    throw DomainError("rounding slack must lie in [0, 1e-9]");
}

Interval basel_tail(std::size_t m, const TailConfig& cfg) {
  check_tail_args(m, cfg);
  const auto sum = simd::inverse_square_sum(m, cfg.cutoff);
  return enclose(sum.value, sum.abs_bound, cfg.rounding_slack) + basel_bracket(cfg.cutoff);
}

Interval commutator_tail(std::size_t m, const TailConfig& cfg) {
  check_tail_args(m, cfg);
  const auto sum = simd::commutator_term_sum(m, cfg.cutoff);
  return enclose(sum.value, sum.abs_bound, cfg.rounding_slack) +
         commutator_bracket(cfg.cutoff);
}

IdentityWitness verify_identity(std::size_t m, const TailConfig& cfg) {
  IdentityWitness w;
  w.m = m;
  w.lhs = basel_tail(m, cfg) - Interval::reciprocal_of(m);
  w.rhs = commutator_tail(m, cfg);
  w.consistent = w.lhs.intersects(w.rhs);
  return w;
}

double commutator_tail_bound(std::size_t m) {
  if (m < 2) throw DomainError("the t-tail bound needs m > 1");
  const auto d = static_cast<double>(m - 1);
  return div_up(1.0, mul_down(2.0, mul_down(d, d)));
}

double row_sum_estimate(std::size_t n) {
  if (n < 2) throw DomainError("the row-sum estimate needs n > 1");
  const auto nd = static_cast<double>(n);
  const auto d = static_cast<double>(n - 1);
  return div_up(add_up(mul_up(2.0, nd), -1.0), mul_down(2.0, mul_down(d, d)));
}

TailTable::TailTable(const TailConfig& cfg)
    : cfg_(cfg), basel_bracket_(0.0, 0.0), commutator_bracket_(0.0, 0.0) {
  cfg_.validate();
  const std::size_t top = cfg_.cutoff;
  basel_bracket_ = basel_bracket(top);
  commutator_bracket_ = commutator_bracket(top);

  basel_lo_.assign(top + 1, 0.0);
  basel_hi_.assign(top + 1, 0.0);
  comm_lo_.assign(top + 1, 0.0);
  comm_hi_.assign(top + 1, 0.0);

  // Same operation order as the scalar series kernels, smallest terms first.
  double s2 = 0.0, a2 = 0.0, s3 = 0.0, a3 = 0.0;
  for (std::size_t k = top; k >= 1; --k) {
    const auto kd = static_cast<double>(k);
    const double sq = 1.0 / (kd * kd);
    s2 += sq;
    a2 += std::fabs(s2) + sq;
    const double cu = 1.0 / (kd * kd * (kd + 1.0));
    s3 += cu;
    a3 += std::fabs(s3) + 2.0 * cu;

    const Interval b = enclose(s2, a2, cfg_.rounding_slack) + basel_bracket_;
    const Interval c = enclose(s3, a3, cfg_.rounding_slack) + commutator_bracket_;
    basel_lo_[k] = b.lo();
    basel_hi_[k] = b.hi();
    comm_lo_[k] = c.lo();
    comm_hi_[k] = c.hi();
  }

  prefix_lo_.assign(top + 1, 0.0);
  prefix_hi_.assign(top + 1, 0.0);
  Interval acc = Interval::point(0.0);
  for (std::size_t n = 1; n <= top; ++n) {
    acc = acc + Interval(comm_lo_[n], comm_hi_[n]);
    prefix_lo_[n] = acc.lo();
    prefix_hi_[n] = acc.hi();
  }
}

std::shared_ptr<const TailTable> TailTable::shared(const TailConfig& cfg) {
  // Tables stay cached after their last user goes away; oracles are cheap
  // to recreate but a table costs a full pass over the cutoff range.
  constexpr std::size_t kKeep = 4;
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, double>, std::shared_ptr<const TailTable>> cache;
  const std::lock_guard lock(mutex);
  const std::pair key{cfg.cutoff, cfg.rounding_slack};
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  if (cache.size() >= kKeep)
    std::erase_if(cache, [](const auto& kv) { return kv.second.use_count() == 1; });
  auto table = std::make_shared<const TailTable>(cfg);
  cache.emplace(key, table);
  return table;
}

void TailTable::check_index(std::size_t m) const {
  if (m < 1 || m > cfg_.cutoff)
    throw DomainError("tail index " + std::to_string(m) + " outside [1, " +
                      std::to_string(cfg_.cutoff) + "]");
}

Interval TailTable::basel_tail(std::size_t m) const {
  check_index(m);
  return {basel_lo_[m], basel_hi_[m]};
}

Interval TailTable::commutator_tail(std::size_t m) const {
  check_index(m);
  return {comm_lo_[m], comm_hi_[m]};
}

IdentityWitness TailTable::verify_identity(std::size_t m) const {
  IdentityWitness w;
  w.m = m;
  w.lhs = basel_tail(m) - Interval::reciprocal_of(m);
  w.rhs = commutator_tail(m);
  w.consistent = w.lhs.intersects(w.rhs);
  return w;
}

Interval TailTable::commutator_prefix(std::size_t n) const {
  if (n > cfg_.cutoff) check_index(n);
  return {prefix_lo_[n], prefix_hi_[n]};
}

Interval TailTable::commutator_tail_sum(std::size_t n) const {
  return Interval::point(1.0) - commutator_prefix(n);
}

Interval TailTable::commutator_row_sum(std::size_t n) const {
  check_index(n);
  return commutator_tail(n).scaled(static_cast<double>(n)) + commutator_tail_sum(n);
}

} // namespace cesaro
