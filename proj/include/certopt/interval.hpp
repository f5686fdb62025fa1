#pragma once

#include <cmath>
#include <limits>
#include <ostream>
#include <string>

namespace certopt {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed interval [lo, hi] over the extended reals with outward-rounded
/// endpoints. Endpoints are never NaN; the empty set is the sentinel
/// [+inf, -inf]. All operations are pure and containment-safe: the computed
/// interval always encloses the exact point-wise result despite rounding.
class Interval {
 public:
  Interval() : lo_(0.0), hi_(0.0) {}
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {}
  explicit Interval(double point) : lo_(point), hi_(point) {}

  static Interval empty() { return Interval(kInf, -kInf); }
  static Interval entire() { return Interval(-kInf, kInf); }

  double lo() const { return lo_; }
  double hi() const { return hi_; }

  bool is_empty() const { return lo_ > hi_; }
  bool is_degenerate() const { return lo_ == hi_; }
  bool is_bounded() const { return !is_empty() && std::isfinite(lo_) && std::isfinite(hi_); }

  /// hi - lo; empty intervals report -inf, unbounded ones +inf.
  double width() const { return is_empty() ? -kInf : hi_ - lo_; }

  /// A finite point inside the interval; unbounded ends are clamped.
  double mid() const;

  /// max(|lo|, |hi|) over the interval (0 for empty).
  double mag() const;

  bool contains(double x) const { return !is_empty() && lo_ <= x && x <= hi_; }
  bool contains(const Interval& other) const {
    return other.is_empty() || (!is_empty() && lo_ <= other.lo_ && other.hi_ <= hi_);
  }
  bool strictly_contains(const Interval& other) const {
    return !other.is_empty() && !is_empty() && lo_ < other.lo_ && other.hi_ < hi_;
  }
  bool same(const Interval& other) const {
    return (is_empty() && other.is_empty()) || (lo_ == other.lo_ && hi_ == other.hi_);
  }

  Interval intersect(const Interval& other) const {
    if (is_empty() || other.is_empty()) return empty();
    double l = std::max(lo_, other.lo_);
    double h = std::min(hi_, other.hi_);
    return l <= h ? Interval(l, h) : empty();
  }

  Interval hull(const Interval& other) const {
    if (is_empty()) return other;
    if (other.is_empty()) return *this;
    return Interval(std::min(lo_, other.lo_), std::max(hi_, other.hi_));
  }

  /// Widened by `ulps` adjacent floats on each side.
  Interval widened(int ulps = 1) const;

 private:
  double lo_;
  double hi_;
};

bool operator==(const Interval& a, const Interval& b);
std::ostream& operator<<(std::ostream& os, const Interval& iv);
std::string to_string(const Interval& iv);

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);

Interval sqr(const Interval& a);
Interval sqrt(const Interval& a);
Interval exp(const Interval& a);
Interval log(const Interval& a);
Interval sin(const Interval& a);
Interval cos(const Interval& a);
Interval pow_int(const Interval& a, int exponent);

namespace rounding {

inline double next_up(double x) {
  if (std::isinf(x) && x > 0) return x;
  return std::nextafter(x, kInf);
}

inline double next_down(double x) {
  if (std::isinf(x) && x < 0) return x;
  return std::nextafter(x, -kInf);
}

/// TwoSum residual: exact a+b equals s + err when s is finite.
inline double sum_err(double a, double b, double s) {
  double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

/// Lower bound of the exact sum a+b.
inline double add_down(double a, double b) {
  double s = a + b;
  if (std::isnan(s)) return -kInf;
  if (std::isinf(s)) {
    if (std::isinf(a) || std::isinf(b)) return s;
    return s > 0 ? std::numeric_limits<double>::max() : s;
  }
  double e = sum_err(a, b, s);
  return e < 0 ? next_down(s) : s;
}

/// Upper bound of the exact sum a+b.
inline double add_up(double a, double b) {
  double s = a + b;
  if (std::isnan(s)) return kInf;
  if (std::isinf(s)) {
    if (std::isinf(a) || std::isinf(b)) return s;
    return s < 0 ? -std::numeric_limits<double>::max() : s;
  }
  double e = sum_err(a, b, s);
  return e > 0 ? next_up(s) : s;
}

inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

/// Lower bound of the exact product; 0 * inf follows the endpoint
/// convention and yields 0.
inline double mul_down(double a, double b) {
  if ((a == 0.0 && std::isinf(b)) || (b == 0.0 && std::isinf(a))) return 0.0;
  double p = a * b;
  if (std::isinf(p)) {
    if (std::isinf(a) || std::isinf(b)) return p;
    return p > 0 ? std::numeric_limits<double>::max() : p;
  }
  double e = std::fma(a, b, -p);
  return e < 0 ? next_down(p) : p;
}

inline double mul_up(double a, double b) {
  if ((a == 0.0 && std::isinf(b)) || (b == 0.0 && std::isinf(a))) return 0.0;
  double p = a * b;
  if (std::isinf(p)) {
    if (std::isinf(a) || std::isinf(b)) return p;
    return p < 0 ? -std::numeric_limits<double>::max() : p;
  }
  double e = std::fma(a, b, -p);
  return e > 0 ? next_up(p) : p;
}

/// Lower bound of the exact quotient; caller guarantees b != 0.
inline double div_down(double a, double b) {
  if (std::isinf(b)) return std::isinf(a) ? -kInf : 0.0;
  if (std::isinf(a)) return (a > 0) == (b > 0) ? kInf : -kInf;
  double q = a / b;
  if (std::isinf(q)) return q > 0 ? std::numeric_limits<double>::max() : q;
  double e = std::fma(q, b, -a);  // q*b - a; exact quotient differs by -e/b
  if (e == 0.0) return q;
  bool q_too_high = (e > 0) == (b > 0);
  return q_too_high ? next_down(q) : q;
}

inline double div_up(double a, double b) {
  if (std::isinf(b)) return std::isinf(a) ? kInf : 0.0;
  if (std::isinf(a)) return (a > 0) == (b > 0) ? kInf : -kInf;
  double q = a / b;
  if (std::isinf(q)) return q < 0 ? -std::numeric_limits<double>::max() : q;
  double e = std::fma(q, b, -a);
  if (e == 0.0) return q;
  bool q_too_low = (e > 0) != (b > 0);
  return q_too_low ? next_up(q) : q;
}

inline double sqrt_down(double x) {
  double s = std::sqrt(x);
  if (!std::isfinite(s)) return s;
  double e = std::fma(s, s, -x);
  return e > 0 ? next_down(s) : s;
}

inline double sqrt_up(double x) {
  double s = std::sqrt(x);
  if (!std::isfinite(s)) return s;
  double e = std::fma(s, s, -x);
  return e < 0 ? next_up(s) : s;
}

}  // namespace rounding

}  // namespace certopt
