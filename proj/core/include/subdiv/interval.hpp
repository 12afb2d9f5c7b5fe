#ifndef SUBDIV_INTERVAL_HPP
#define SUBDIV_INTERVAL_HPP

#include <cassert>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>

#include "subdiv/errors.hpp"

namespace subdiv {

// Flags accumulated while evaluating over intervals. "clipped" records
// that an argument was intersected with an intrinsic's natural domain;
// "unbounded" that a division by a zero-containing interval was mapped
// to the whole line.
struct EvalFlags {
  bool clipped = false;
  bool unbounded = false;
};

// A non-empty compact interval [lo, hi] with outward-rounded endpoints.
// Endpoints are finite or +-infinity; NaN is forbidden. The empty set is
// never stored; operations that can produce it (intersect) signal it
// out-of-band.
struct Interval {
  double lo;
  double hi;

  Interval() : lo(0.0), hi(0.0) {}
  explicit Interval(double point) : lo(point), hi(point) {
    assert(!std::isnan(point));
  }
  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    assert(!std::isnan(lo_) && !std::isnan(hi_));
    assert(lo_ <= hi_);
  }

  static Interval whole() {
    return Interval(-std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity());
  }

  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  bool is_point() const { return lo == hi; }
  bool is_finite() const { return std::isfinite(lo) && std::isfinite(hi); }

  bool operator==(const Interval&) const = default;
};

// hi - lo rounded up; never underestimates the true width.
double width(const Interval& x);
// Round-to-nearest (lo + hi)/2 clamped into [lo, hi]; errors on
// infinite endpoints.
double midpoint(const Interval& x);
Interval hull(const Interval& x, const Interval& y);
std::optional<Interval> intersect(const Interval& x, const Interval& y);

Interval iv_add(const Interval& x, const Interval& y);
Interval iv_sub(const Interval& x, const Interval& y);
Interval iv_mul(const Interval& x, const Interval& y);
// Throws DivisionByZero when 0 is contained in y.
Interval iv_div(const Interval& x, const Interval& y);
Interval iv_neg(const Interval& x);

Interval iv_pow_int(const Interval& x, int k);
Interval iv_sqrt(const Interval& x, EvalFlags* flags = nullptr);
Interval iv_exp(const Interval& x);
Interval iv_log(const Interval& x, EvalFlags* flags = nullptr);
Interval iv_sin(const Interval& x);
Interval iv_cos(const Interval& x);
Interval iv_tanh(const Interval& x);

// Directed-rounding scalar helpers. For +, -, *, /, sqrt the result
// equals the exact operation rounded toward -inf / +inf (realized via
// error-free transformations, no rounding-mode switches).
double add_down(double a, double b);
double add_up(double a, double b);
double sub_down(double a, double b);
double sub_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double div_down(double a, double b);
double div_up(double a, double b);
double sqrt_down(double a);
double sqrt_up(double a);

inline double next_down(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double next_up(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}

// Encloses a round-to-nearest value within one ulp on each side.
inline Interval wrap_ulp(double v) { return Interval(next_down(v), next_up(v)); }

std::ostream& operator<<(std::ostream& os, const Interval& x);

}  // namespace subdiv

#endif
