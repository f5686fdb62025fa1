#include "certopt/interval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace certopt {

using rounding::add_down;
using rounding::add_up;
using rounding::div_down;
using rounding::div_up;
using rounding::mul_down;
using rounding::mul_up;
using rounding::next_down;
using rounding::next_up;
using rounding::sqrt_down;
using rounding::sqrt_up;
using rounding::sub_down;
using rounding::sub_up;

namespace {

constexpr double kClampMag = 1e8;

// libm transcendentals are not correctly rounded; two adjacent floats of
// slack cover the documented <= 1 ulp error with margin.
double libm_down(double v) { return next_down(next_down(v)); }
double libm_up(double v) { return next_up(next_up(v)); }

// pi/2 and 2*pi rounded to nearest; critical-point tests add a relative
// margin that dominates both this rounding and the division error.
constexpr double kHalfPi = 1.5707963267948966;
constexpr double kTwoPi = 6.283185307179586;

// Conservatively decide whether c + 2*pi*k lies in [lo, hi] for some
// integer k. Over-inclusion is sound (result only widens).
bool may_contain_critical(double c, double lo, double hi) {
  double margin = 1e-12 * (1.0 + std::abs(lo) + std::abs(hi));
  double k1 = std::ceil((lo - c) / kTwoPi - margin);
  double k2 = std::floor((hi - c) / kTwoPi + margin);
  return k1 <= k2;
}

Interval periodic_range(const Interval& a, bool is_sin) {
  if (a.is_empty()) return Interval::empty();
  if (!(a.width() < kTwoPi)) return Interval(-1.0, 1.0);
  double flo, fhi;
  if (is_sin) {
    flo = std::sin(a.lo());
    fhi = std::sin(a.hi());
  } else {
    flo = std::cos(a.lo());
    fhi = std::cos(a.hi());
  }
  double lo = std::min(libm_down(flo), libm_down(fhi));
  double hi = std::max(libm_up(flo), libm_up(fhi));
  double max_at = is_sin ? kHalfPi : 0.0;
  double min_at = is_sin ? -kHalfPi : -2.0 * kHalfPi;
  if (may_contain_critical(max_at, a.lo(), a.hi())) hi = 1.0;
  if (may_contain_critical(min_at, a.lo(), a.hi())) lo = -1.0;
  return Interval(std::max(lo, -1.0), std::min(hi, 1.0));
}

// |a| as an interval; a non-empty.
Interval abs_interval(const Interval& a) {
  if (a.lo() >= 0) return a;
  if (a.hi() <= 0) return Interval(-a.hi(), -a.lo());
  return Interval(0.0, std::max(-a.lo(), a.hi()));
}

// x^p for integer p >= 1 via interval binary exponentiation on [x, x].
Interval ipow_point(double x, int p) {
  Interval base(x, x);
  Interval acc(1.0, 1.0);
  while (p > 0) {
    if (p & 1) acc = acc * base;
    p >>= 1;
    if (p > 0) base = sqr(base);
  }
  return acc;
}

}  // namespace

double Interval::mid() const {
  if (is_empty()) return std::numeric_limits<double>::quiet_NaN();
  double l = std::isfinite(lo_) ? lo_ : std::min(-kClampMag, hi_);
  double h = std::isfinite(hi_) ? hi_ : std::max(kClampMag, lo_);
  double m = 0.5 * (l + h);
  if (!std::isfinite(m)) m = 0.5 * l + 0.5 * h;
  return std::min(std::max(m, l), h);
}

double Interval::mag() const {
  if (is_empty()) return 0.0;
  return std::max(std::abs(lo_), std::abs(hi_));
}

Interval Interval::widened(int ulps) const {
  if (is_empty()) return *this;
  double l = lo_, h = hi_;
  for (int i = 0; i < ulps; ++i) {
    l = next_down(l);
    h = next_up(h);
  }
  return Interval(l, h);
}

bool operator==(const Interval& a, const Interval& b) { return a.same(b); }

std::ostream& operator<<(std::ostream& os, const Interval& iv) {
  if (iv.is_empty()) return os << "[empty]";
  return os << '[' << iv.lo() << ", " << iv.hi() << ']';
}

std::string to_string(const Interval& iv) {
  std::ostringstream os;
  os.precision(17);
  os << iv;
  return os.str();
}

Interval operator+(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  return Interval(add_down(a.lo(), b.lo()), add_up(a.hi(), b.hi()));
}

Interval operator-(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  return Interval(sub_down(a.lo(), b.hi()), sub_up(a.hi(), b.lo()));
}

Interval operator-(const Interval& a) {
  if (a.is_empty()) return a;
  return Interval(-a.hi(), -a.lo());
}

Interval operator*(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  double lo = std::min(std::min(mul_down(a.lo(), b.lo()), mul_down(a.lo(), b.hi())),
                       std::min(mul_down(a.hi(), b.lo()), mul_down(a.hi(), b.hi())));
  double hi = std::max(std::max(mul_up(a.lo(), b.lo()), mul_up(a.lo(), b.hi())),
                       std::max(mul_up(a.hi(), b.lo()), mul_up(a.hi(), b.hi())));
  return Interval(lo, hi);
}

Interval operator/(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  if (b.lo() == 0.0 && b.hi() == 0.0) {
    return a.contains(0.0) ? Interval::entire() : Interval::empty();
  }
  if (b.contains(0.0)) {
    // Extended division: hull of the (possibly two-ray) quotient set.
    if (a.contains(0.0)) return Interval::entire();
    if (b.lo() < 0.0 && b.hi() > 0.0) return Interval::entire();
    if (a.hi() < 0.0) {
      if (b.hi() == 0.0) return Interval(div_down(a.hi(), b.lo()), kInf);
      return Interval(-kInf, div_up(a.hi(), b.hi()));
    }
    // a.lo() > 0
    if (b.hi() == 0.0) return Interval(-kInf, div_up(a.lo(), b.lo()));
    return Interval(div_down(a.lo(), b.hi()), kInf);
  }
  double cd[4] = {div_down(a.lo(), b.lo()), div_down(a.lo(), b.hi()),
                  div_down(a.hi(), b.lo()), div_down(a.hi(), b.hi())};
  double cu[4] = {div_up(a.lo(), b.lo()), div_up(a.lo(), b.hi()),
                  div_up(a.hi(), b.lo()), div_up(a.hi(), b.hi())};
  double lo = kInf, hi = -kInf;
  for (int i = 0; i < 4; ++i) {
    if (!std::isnan(cd[i])) lo = std::min(lo, cd[i]);
    if (!std::isnan(cu[i])) hi = std::max(hi, cu[i]);
  }
  return Interval(lo, hi);
}

Interval sqr(const Interval& a) {
  if (a.is_empty()) return a;
  Interval m = abs_interval(a);
  double lo = m.lo() == 0.0 ? 0.0 : mul_down(m.lo(), m.lo());
  double hi = mul_up(m.hi(), m.hi());
  return Interval(lo, hi);
}

Interval sqrt(const Interval& a) {
  if (a.is_empty() || a.hi() < 0.0) return Interval::empty();
  double lo = a.lo() <= 0.0 ? 0.0 : sqrt_down(a.lo());
  double hi = std::isinf(a.hi()) ? kInf : sqrt_up(a.hi());
  return Interval(lo, hi);
}

Interval exp(const Interval& a) {
  if (a.is_empty()) return a;
  double lo = std::isinf(a.lo()) ? 0.0 : std::max(0.0, libm_down(std::exp(a.lo())));
  double hi = std::isinf(a.hi()) ? kInf : libm_up(std::exp(a.hi()));
  return Interval(lo, hi);
}

Interval log(const Interval& a) {
  if (a.is_empty() || a.hi() <= 0.0) return Interval::empty();
  double lo = a.lo() <= 0.0 ? -kInf : libm_down(std::log(a.lo()));
  double hi = std::isinf(a.hi()) ? kInf : libm_up(std::log(a.hi()));
  return Interval(lo, hi);
}

Interval sin(const Interval& a) { return periodic_range(a, true); }

Interval cos(const Interval& a) { return periodic_range(a, false); }

Interval pow_int(const Interval& a, int exponent) {
  if (a.is_empty()) return a;
  if (exponent == 0) return Interval(1.0, 1.0);
  if (exponent < 0) return Interval(1.0, 1.0) / pow_int(a, -exponent);
  if (exponent == 1) return a;
  if (exponent % 2 == 0) {
    Interval m = abs_interval(a);
    double lo = m.lo() == 0.0 ? 0.0 : ipow_point(m.lo(), exponent).lo();
    double hi = std::isinf(m.hi()) ? kInf : ipow_point(m.hi(), exponent).hi();
    return Interval(lo, hi);
  }
  double lo = std::isinf(a.lo()) ? -kInf : ipow_point(a.lo(), exponent).lo();
  double hi = std::isinf(a.hi()) ? kInf : ipow_point(a.hi(), exponent).hi();
  return Interval(lo, hi);
}

}  // namespace certopt
