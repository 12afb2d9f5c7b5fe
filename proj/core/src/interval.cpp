#include "subdiv/interval.hpp"

#include <algorithm>
#include <cfloat>

namespace subdiv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMax = std::numeric_limits<double>::max();

// Knuth two-sum: exact error of a round-to-nearest addition.
double two_sum_err(double a, double b, double s) {
  double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

}  // namespace

double add_down(double a, double b) {
  double s = a + b;
  if (std::isinf(a) || std::isinf(b)) return s;
  if (std::isinf(s)) return s > 0 ? kMax : s;
  return two_sum_err(a, b, s) < 0 ? next_down(s) : s;
}

double add_up(double a, double b) {
  double s = a + b;
  if (std::isinf(a) || std::isinf(b)) return s;
  if (std::isinf(s)) return s > 0 ? s : -kMax;
  return two_sum_err(a, b, s) > 0 ? next_up(s) : s;
}

double sub_down(double a, double b) { return add_down(a, -b); }
double sub_up(double a, double b) { return add_up(a, -b); }

double mul_down(double a, double b) {
  double p = a * b;
  if (std::isinf(a) || std::isinf(b)) return p;
  if (std::isinf(p)) return p > 0 ? kMax : p;
  return std::fma(a, b, -p) < 0 ? next_down(p) : p;
}

double mul_up(double a, double b) {
  double p = a * b;
  if (std::isinf(a) || std::isinf(b)) return p;
  if (std::isinf(p)) return p > 0 ? p : -kMax;
  return std::fma(a, b, -p) > 0 ? next_up(p) : p;
}

double div_down(double a, double b) {
  double q = a / b;
  if (std::isinf(a) || std::isinf(b) || std::isinf(q)) {
    if (std::isinf(q) && std::isfinite(a) && std::isfinite(b))
      return q > 0 ? kMax : q;
    return q;
  }
  // a = q*b + rem, true quotient - q = rem/b with rem = -fma(q,b,-a).
  double rem = -std::fma(q, b, -a);
  double corr = (b > 0) ? rem : -rem;
  return corr < 0 ? next_down(q) : q;
}

double div_up(double a, double b) {
  double q = a / b;
  if (std::isinf(a) || std::isinf(b) || std::isinf(q)) {
    if (std::isinf(q) && std::isfinite(a) && std::isfinite(b))
      return q > 0 ? q : -kMax;
    return q;
  }
  double rem = -std::fma(q, b, -a);
  double corr = (b > 0) ? rem : -rem;
  return corr > 0 ? next_up(q) : q;
}

double sqrt_down(double a) {
  double r = std::sqrt(a);
  if (!std::isfinite(r) || r == 0.0) return r;
  return std::fma(r, r, -a) > 0 ? next_down(r) : r;
}

double sqrt_up(double a) {
  double r = std::sqrt(a);
  if (!std::isfinite(r) || r == 0.0) return r;
  return std::fma(r, r, -a) < 0 ? next_up(r) : r;
}

double width(const Interval& x) {
  if (std::isinf(x.lo) || std::isinf(x.hi)) {
    return (x.lo == x.hi) ? 0.0 : kInf;
  }
  return sub_up(x.hi, x.lo);
}

double midpoint(const Interval& x) {
  if (!x.is_finite()) throw DomainViolation("unbounded midpoint");
  double m = 0.5 * (x.lo + x.hi);
  if (!std::isfinite(m)) m = 0.5 * x.lo + 0.5 * x.hi;
  return std::clamp(m, x.lo, x.hi);
}

Interval hull(const Interval& x, const Interval& y) {
  return Interval(std::min(x.lo, y.lo), std::max(x.hi, y.hi));
}

std::optional<Interval> intersect(const Interval& x, const Interval& y) {
  double lo = std::max(x.lo, y.lo);
  double hi = std::min(x.hi, y.hi);
  if (lo > hi) return std::nullopt;
  return Interval(lo, hi);
}

Interval iv_add(const Interval& x, const Interval& y) {
  return Interval(add_down(x.lo, y.lo), add_up(x.hi, y.hi));
}

Interval iv_sub(const Interval& x, const Interval& y) {
  return Interval(sub_down(x.lo, y.hi), sub_up(x.hi, y.lo));
}

Interval iv_neg(const Interval& x) { return Interval(-x.hi, -x.lo); }

namespace {
// 0 * inf is 0 for containment purposes (the image of {0} x anything).
double prod_or_zero(double a, double b, bool up) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return up ? mul_up(a, b) : mul_down(a, b);
}
}  // namespace

Interval iv_mul(const Interval& x, const Interval& y) {
  double lo = std::min(std::min(prod_or_zero(x.lo, y.lo, false),
                                prod_or_zero(x.lo, y.hi, false)),
                       std::min(prod_or_zero(x.hi, y.lo, false),
                                prod_or_zero(x.hi, y.hi, false)));
  double hi = std::max(std::max(prod_or_zero(x.lo, y.lo, true),
                                prod_or_zero(x.lo, y.hi, true)),
                       std::max(prod_or_zero(x.hi, y.lo, true),
                                prod_or_zero(x.hi, y.hi, true)));
  return Interval(lo, hi);
}

Interval iv_div(const Interval& x, const Interval& y) {
  if (y.lo <= 0.0 && 0.0 <= y.hi) throw DivisionByZero();
  double q1 = div_down(x.lo, y.lo), q2 = div_down(x.lo, y.hi);
  double q3 = div_down(x.hi, y.lo), q4 = div_down(x.hi, y.hi);
  double u1 = div_up(x.lo, y.lo), u2 = div_up(x.lo, y.hi);
  double u3 = div_up(x.hi, y.lo), u4 = div_up(x.hi, y.hi);
  return Interval(std::min(std::min(q1, q2), std::min(q3, q4)),
                  std::max(std::max(u1, u2), std::max(u3, u4)));
}

namespace {

// x^k for x >= 0 via repeated directed multiplication.
double pow_nonneg(double x, int k, bool up) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = up ? mul_up(r, x) : mul_down(r, x);
  return r;
}

double pow_down_signed(double x, int k) {
  if (x >= 0.0) return pow_nonneg(x, k, false);
  double m = pow_nonneg(-x, k, true);  // |x|^k rounded up
  return (k % 2 == 0) ? pow_nonneg(-x, k, false) : -m;
}

double pow_up_signed(double x, int k) {
  if (x >= 0.0) return pow_nonneg(x, k, true);
  double m = pow_nonneg(-x, k, false);
  return (k % 2 == 0) ? pow_nonneg(-x, k, true) : -m;
}

}  // namespace

Interval iv_pow_int(const Interval& x, int k) {
  if (k == 0) return Interval(1.0, 1.0);
  if (k < 0) return iv_div(Interval(1.0, 1.0), iv_pow_int(x, -k));
  if (k % 2 != 0) {
    // odd powers are monotone
    return Interval(pow_down_signed(x.lo, k), pow_up_signed(x.hi, k));
  }
  // even powers: image of |x|
  double alo = (x.lo <= 0.0 && 0.0 <= x.hi) ? 0.0
                                            : std::min(std::abs(x.lo), std::abs(x.hi));
  double ahi = std::max(std::abs(x.lo), std::abs(x.hi));
  return Interval(pow_nonneg(alo, k, false), pow_nonneg(ahi, k, true));
}

Interval iv_sqrt(const Interval& x, EvalFlags* flags) {
  if (x.hi < 0.0) throw DomainViolation("sqrt domain violation");
  double lo = x.lo;
  if (lo < 0.0) {
    lo = 0.0;
    if (flags) flags->clipped = true;
  }
  return Interval(sqrt_down(lo), sqrt_up(x.hi));
}

Interval iv_exp(const Interval& x) {
  double lo = std::isinf(x.lo) && x.lo < 0 ? 0.0 : std::max(0.0, next_down(std::exp(x.lo)));
  double hi = std::isinf(x.hi) ? kInf : next_up(std::exp(x.hi));
  return Interval(lo, hi);
}

Interval iv_log(const Interval& x, EvalFlags* flags) {
  if (x.hi <= 0.0) throw DomainViolation("log domain violation");
  double lo;
  if (x.lo <= 0.0) {
    lo = -kInf;
    if (flags) flags->clipped = true;
  } else {
    lo = next_down(std::log(x.lo));
  }
  double hi = std::isinf(x.hi) ? kInf : next_up(std::log(x.hi));
  return Interval(lo, hi);
}

Interval iv_tanh(const Interval& x) {
  double lo = std::max(-1.0, next_down(std::tanh(x.lo)));
  double hi = std::min(1.0, next_up(std::tanh(x.hi)));
  return Interval(lo, hi);
}

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Conservatively test whether some offset + 2*pi*k lies in x. Errs
// toward "contains", which only loosens sin/cos bounds.
bool maybe_contains_grid(const Interval& x, double offset) {
  if (width(x) >= kTwoPi) return true;
  if (std::abs(x.lo) > 1e15 || std::abs(x.hi) > 1e15) return true;
  double k0 = std::floor((x.lo - offset) / kTwoPi) - 1;
  double k1 = std::ceil((x.hi - offset) / kTwoPi) + 1;
  for (double k = k0; k <= k1; k += 1.0) {
    double c = offset + kTwoPi * k;
    double slack = 4e-15 * (1.0 + std::abs(c));
    if (c >= x.lo - slack && c <= x.hi + slack) return true;
  }
  return false;
}

constexpr double kHalfPi = 1.5707963267948966192313216916398;
constexpr double kPi = 3.1415926535897932384626433832795;

}  // namespace

Interval iv_sin(const Interval& x) {
  if (!x.is_finite() || width(x) >= kTwoPi) return Interval(-1.0, 1.0);
  double slo = std::sin(x.lo), shi = std::sin(x.hi);
  double lo = std::min(next_down(slo), next_down(shi));
  double hi = std::max(next_up(slo), next_up(shi));
  if (maybe_contains_grid(x, kHalfPi)) hi = 1.0;
  if (maybe_contains_grid(x, -kHalfPi)) lo = -1.0;
  return Interval(std::max(-1.0, lo), std::min(1.0, hi));
}

Interval iv_cos(const Interval& x) {
  if (!x.is_finite() || width(x) >= kTwoPi) return Interval(-1.0, 1.0);
  double clo = std::cos(x.lo), chi = std::cos(x.hi);
  double lo = std::min(next_down(clo), next_down(chi));
  double hi = std::max(next_up(clo), next_up(chi));
  if (maybe_contains_grid(x, 0.0)) hi = 1.0;
  if (maybe_contains_grid(x, kPi)) lo = -1.0;
  return Interval(std::max(-1.0, lo), std::min(1.0, hi));
}

std::ostream& operator<<(std::ostream& os, const Interval& x) {
  return os << "[" << x.lo << ", " << x.hi << "]";
}

}  // namespace subdiv
