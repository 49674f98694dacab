#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>

#include "cesaro/errors.hpp"

namespace cesaro {

// Directed rounding emulated on top of round-to-nearest: every result is
// computed once, the exact rounding error is recovered with an error-free
// transformation, and the result is nudged one ulp outward only when the
// error points the wrong way. Valid away from overflow and gradual underflow.
namespace rounding {

inline double next_down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double next_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

/// Error of s = fl(a + b), i.e. a + b = s + err exactly.
inline double two_sum_error(double a, double b, double s) {
  const double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

inline double add_down(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) return s;
  return two_sum_error(a, b, s) < 0.0 ? next_down(s) : s;
}

inline double add_up(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) return s;
  return two_sum_error(a, b, s) > 0.0 ? next_up(s) : s;
}

inline double mul_down(double a, double b) {
  const double p = a * b;
  if (!std::isfinite(p)) return p;
  return std::fma(a, b, -p) < 0.0 ? next_down(p) : p;
}

inline double mul_up(double a, double b) {
  const double p = a * b;
  if (!std::isfinite(p)) return p;
  return std::fma(a, b, -p) > 0.0 ? next_up(p) : p;
}

/// fl(a / b) rounded toward -inf; b must be nonzero.
inline double div_down(double a, double b) {
  const double q = a / b;
  if (!std::isfinite(q)) return q;
  // sign(q - a/b) = sign(q*b - a) * sign(b)
  const double r = std::fma(q, b, -a);
  const bool too_big = (b > 0.0) ? (r > 0.0) : (r < 0.0);
  return too_big ? next_down(q) : q;
}

inline double div_up(double a, double b) {
  const double q = a / b;
  if (!std::isfinite(q)) return q;
  const double r = std::fma(q, b, -a);
  const bool too_small = (b > 0.0) ? (r < 0.0) : (r > 0.0);
  return too_small ? next_up(q) : q;
}

inline double sqrt_down(double x) {
  const double s = std::sqrt(x);
  return std::fma(s, s, -x) > 0.0 ? next_down(s) : s;
}

inline double sqrt_up(double x) {
  const double s = std::sqrt(x);
  return std::fma(s, s, -x) < 0.0 ? next_up(s) : s;
}

} // namespace rounding

/// Closed real interval [lo, hi] with outward-rounded arithmetic.
class Interval {
public:
  constexpr Interval() = default;

  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo <= hi)) throw DomainError("interval endpoints out of order");
  }

  static Interval point(double x) { return {x, x}; }

  /// Tightest enclosure of 1/k.
  static Interval reciprocal_of(std::uint64_t k) {
    if (k == 0) throw DomainError("reciprocal of zero");
    const auto d = static_cast<double>(k);
    return {rounding::div_down(1.0, d), rounding::div_up(1.0, d)};
  }

  /// Tightest enclosure of num/den.
  static Interval quotient(double num, double den) {
    if (den == 0.0) throw DomainError("division by zero");
    return {rounding::div_down(num, den), rounding::div_up(num, den)};
  }

  static Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_)};
  }

  /// Enclosure of max(x, y) for x in a, y in b.
  static Interval max(const Interval& a, const Interval& b) {
    return {std::max(a.lo_, b.lo_), std::max(a.hi_, b.hi_)};
  }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  double mid() const noexcept {
    const double m = (lo_ + hi_) / 2.0;
    return std::isfinite(m) ? m : lo_ / 2.0 + hi_ / 2.0;
  }

  /// Upper bound on hi - lo.
  double width() const noexcept { return rounding::add_up(hi_, -lo_); }

  bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& o) const noexcept { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool intersects(const Interval& o) const noexcept { return lo_ <= o.hi_ && o.lo_ <= hi_; }
  bool is_point() const noexcept { return lo_ == hi_; }

  Interval operator-() const { return {-hi_, -lo_}; }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return {rounding::add_down(a.lo_, b.lo_), rounding::add_up(a.hi_, b.hi_)};
  }

  friend Interval operator-(const Interval& a, const Interval& b) {
    return {rounding::add_down(a.lo_, -b.hi_), rounding::add_up(a.hi_, -b.lo_)};
  }

  friend Interval operator*(const Interval& a, const Interval& b) {
    using rounding::mul_down;
    using rounding::mul_up;
    const double lo = std::min({mul_down(a.lo_, b.lo_), mul_down(a.lo_, b.hi_),
                                mul_down(a.hi_, b.lo_), mul_down(a.hi_, b.hi_)});
    const double hi = std::max({mul_up(a.lo_, b.lo_), mul_up(a.lo_, b.hi_),
                                mul_up(a.hi_, b.lo_), mul_up(a.hi_, b.hi_)});
    return {lo, hi};
  }

  /// Multiply by a nonnegative scalar.
  Interval scaled(double c) const {
    if (!(c >= 0.0)) throw DomainError("scale factor must be nonnegative");
    return {rounding::mul_down(lo_, c), rounding::mul_up(hi_, c)};
  }

  /// 1/x for a strictly positive interval.
  Interval reciprocal() const {
    if (!(lo_ > 0.0)) throw DomainError("reciprocal of a non-positive interval");
    return {rounding::div_down(1.0, hi_), rounding::div_up(1.0, lo_)};
  }

  Interval sqrt() const {
    if (!(lo_ >= 0.0)) throw DomainError("square root of a negative interval");
    return {rounding::sqrt_down(lo_), rounding::sqrt_up(hi_)};
  }

  /// Enclosure of |x| for x in this interval.
  Interval abs() const {
    if (lo_ >= 0.0) return *this;
    if (hi_ <= 0.0) return -*this;
    return {0.0, std::max(-lo_, hi_)};
  }

  /// Grow both endpoints outward by a nonnegative amount.
  Interval inflated(double r) const {
    if (!(r >= 0.0)) throw DomainError("inflation must be nonnegative");
    return {rounding::add_down(lo_, -r), rounding::add_up(hi_, r)};
  }

  friend bool operator==(const Interval&, const Interval&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Interval& x) {
    return os << '[' << x.lo_ << ", " << x.hi_ << ']';
  }

private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

} // namespace cesaro
