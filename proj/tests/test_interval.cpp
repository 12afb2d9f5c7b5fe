#include <doctest.h>

#include <cmath>
#include <random>

#include "subdiv/box.hpp"
#include "subdiv/interval.hpp"
#include "test_util.hpp"

using namespace subdiv;
namespace tu = subdiv::testutil;

TEST_CASE("width examples") {
  CHECK(width(Interval(-3, 3)) == 6.0);
  CHECK(width(Interval(1.25)) == 0.0);
  IntervalBox box;
  box.dims = {Interval(-3, 1), Interval(0, 2)};
  CHECK(width(box) == 4.0);
}

TEST_CASE("midpoint examples") {
  CHECK(midpoint(Interval(-1, 1)) == 0.0);
  CHECK(midpoint(Interval(3, 9)) == 6.0);
  CHECK(midpoint(Interval(5.5)) == 5.5);
  CHECK_THROWS_WITH_AS(midpoint(Interval::whole()), "unbounded midpoint",
                       DomainViolation);
}

TEST_CASE("hull examples and algebra") {
  CHECK(hull(Interval(0, 1), Interval(2, 3)) == Interval(0, 3));
  Interval x(-1.5, 2.5);
  CHECK(hull(x, x) == x);
  CHECK(hull(Interval(-4, 8), Interval(-1, 2)) == Interval(-4, 8));
  // commutative / associative / idempotent on exact endpoints
  auto rng = tu::make_rng(11);
  for (int i = 0; i < 1000; ++i) {
    Interval a(tu::uniform(rng, -10, 0), tu::uniform(rng, 0, 10));
    Interval b(tu::uniform(rng, -10, 0), tu::uniform(rng, 0, 10));
    Interval c(tu::uniform(rng, -10, 0), tu::uniform(rng, 0, 10));
    CHECK(hull(a, b) == hull(b, a));
    CHECK(hull(hull(a, b), c) == hull(a, hull(b, c)));
    CHECK(hull(a, a) == a);
  }
}

TEST_CASE("intersect examples") {
  CHECK(intersect(Interval(0, 2), Interval(1, 3)) == Interval(1, 2));
  CHECK(!intersect(Interval(0, 1), Interval(2, 3)).has_value());
  Interval x(0.25, 0.75);
  CHECK(intersect(x, x) == x);
}

TEST_CASE("arithmetic examples") {
  Interval s = iv_add(Interval(1, 2), Interval(3, 4));
  CHECK(s.lo <= 4.0);
  CHECK(s.hi >= 6.0);
  CHECK(width(s) <= 2.0 + 4 * tu::ulp_of(6.0));

  Interval m = iv_mul(Interval(-1, 2), Interval(3, 4));
  CHECK(m.contains(Interval(-4, 8)));
  CHECK(width(m) <= 12.0 + 4 * tu::ulp_of(8.0));

  Interval d = iv_div(Interval(1, 2), Interval(2, 4));
  CHECK(d.contains(Interval(0.25, 1.0)));
  CHECK(width(d) <= 0.75 + 4 * tu::ulp_of(1.0));

  CHECK(iv_neg(Interval(-1, 2)) == Interval(-2, 1));
  CHECK_THROWS_AS(iv_div(Interval(1, 2), Interval(-1, 1)), DivisionByZero);
}

TEST_CASE("transcendental examples") {
  Interval r = iv_sqrt(Interval(4, 9));
  CHECK(r.contains(Interval(2, 3)));
  CHECK(r.lo >= 2.0 - 2 * tu::ulp_of(2.0));
  CHECK(r.hi <= 3.0 + 2 * tu::ulp_of(3.0));

  Interval t = iv_tanh(Interval(0.0));
  CHECK(t.contains(0.0));
  CHECK(t.lo >= -tu::ulp_of(0.0));
  CHECK(t.hi <= tu::ulp_of(0.0));

  // pi/2 inside [0,4] forces the upper bound to 1
  Interval sn = iv_sin(Interval(0, 4));
  CHECK(sn.hi >= 1.0);
  CHECK(sn.hi <= 1.0 + tu::ulp_of(1.0));
  CHECK(sn.lo <= std::sin(4.0));
  CHECK(sn.lo >= std::sin(4.0) - 4 * tu::ulp_of(1.0));

  CHECK(iv_pow_int(Interval(0, 1), 3).contains(Interval(0, 1)));
  CHECK(width(iv_pow_int(Interval(0, 1), 3)) <= 1.0 + 4 * tu::ulp_of(1.0));
  // even power of a sign-crossing interval is the image of |X|
  Interval p = iv_pow_int(Interval(-2, 1), 2);
  CHECK(p.lo <= 0.0);
  CHECK(p.contains(Interval(0, 4)));
  CHECK(width(p) <= 4.0 + 4 * tu::ulp_of(4.0));
}

TEST_CASE("domain clipping and violations") {
  EvalFlags flags;
  Interval l = iv_log(Interval(-1, 2), &flags);
  CHECK(flags.clipped);
  CHECK(l.hi >= std::log(2.0));
  CHECK_THROWS_AS(iv_log(Interval(-3, -1)), DomainViolation);
  CHECK_THROWS_AS(iv_sqrt(Interval(-3, -1)), DomainViolation);
  EvalFlags f2;
  Interval q = iv_sqrt(Interval(-1, 4), &f2);
  CHECK(f2.clipped);
  CHECK(q.contains(Interval(0, 2)));
}

// For +, -, *, /, sqrt the endpoints must equal the directed rounding of
// the exact result. Verified against error-free transformations coded
// independently here.
TEST_CASE("directed rounding is exact for the basic five") {
  auto rng = tu::make_rng(23);
  auto expect_down = [](double rn, double err) {
    return err < 0 ? next_down(rn) : rn;
  };
  auto expect_up = [](double rn, double err) {
    return err > 0 ? next_up(rn) : rn;
  };
  for (int i = 0; i < 20000; ++i) {
    double a = tu::uniform(rng, -1e6, 1e6);
    double b = tu::uniform(rng, -1e6, 1e6);

    {  // addition: Knuth two-sum residual
      double s = a + b;
      double bb = s - a;
      double err = (a - (s - bb)) + (b - bb);
      CHECK(add_down(a, b) == expect_down(s, err));
      CHECK(add_up(a, b) == expect_up(s, err));
      double d = a - b;
      double bb2 = a - d;
      double err2 = (a - (d + bb2)) + (bb2 - b);
      CHECK(sub_down(a, b) == expect_down(d, err2));
      CHECK(sub_up(a, b) == expect_up(d, err2));
    }
    {  // multiplication: fma residual is exact
      double p = a * b;
      double err = std::fma(a, b, -p);
      CHECK(mul_down(a, b) == expect_down(p, err));
      CHECK(mul_up(a, b) == expect_up(p, err));
    }
    if (b != 0.0) {  // division: sign of the remainder against sign of b
      double q = a / b;
      double rem = -std::fma(q, b, -a);
      double err = (b > 0) ? rem : -rem;
      CHECK(div_down(a, b) == expect_down(q, err));
      CHECK(div_up(a, b) == expect_up(q, err));
    }
    {  // sqrt of |a|
      double x = std::abs(a);
      double r = std::sqrt(x);
      double rem = -std::fma(r, r, -x);
      CHECK(sqrt_down(x) == expect_down(r, rem));
      CHECK(sqrt_up(x) == expect_up(r, rem));
    }
  }
}

namespace {

using UnaryIv = Interval (*)(const Interval&);
using UnaryReal = double (*)(double);

void check_unary(UnaryIv ivf, UnaryReal rf, double lo, double hi,
                 std::uint64_t seed) {
  auto rng = tu::make_rng(seed);
  for (int i = 0; i < 10000; ++i) {
    double a = tu::uniform(rng, lo, hi);
    double b = tu::uniform(rng, lo, hi);
    if (a > b) std::swap(a, b);
    Interval x(a, b);
    Interval y = ivf(x);
    double p = tu::uniform(rng, a, b);
    REQUIRE(y.contains(rf(p)));
    // isotonicity on a nested subinterval
    double c = tu::uniform(rng, a, b);
    double d = tu::uniform(rng, a, b);
    if (c > d) std::swap(c, d);
    REQUIRE(y.contains(ivf(Interval(c, d))));
  }
}

Interval sqrt_noflags(const Interval& x) { return iv_sqrt(x); }
Interval log_noflags(const Interval& x) { return iv_log(x); }
Interval pow3(const Interval& x) { return iv_pow_int(x, 3); }
Interval pow4(const Interval& x) { return iv_pow_int(x, 4); }
double rpow3(double x) { return x * x * x; }
double rpow4(double x) { return (x * x) * (x * x); }

}  // namespace

TEST_CASE("containment and isotonicity, unary intrinsics") {
  check_unary(&sqrt_noflags, [](double v) { return std::sqrt(v); }, 0.0, 100.0,
              31);
  check_unary(&log_noflags, [](double v) { return std::log(v); }, 1e-3, 50.0,
              32);
  check_unary(&iv_exp, [](double v) { return std::exp(v); }, -20.0, 20.0, 33);
  check_unary(&iv_sin, [](double v) { return std::sin(v); }, -20.0, 20.0, 34);
  check_unary(&iv_cos, [](double v) { return std::cos(v); }, -20.0, 20.0, 35);
  check_unary(&iv_tanh, [](double v) { return std::tanh(v); }, -10.0, 10.0, 36);
  check_unary(&pow3, &rpow3, -5.0, 5.0, 37);
  check_unary(&pow4, &rpow4, -5.0, 5.0, 38);
}

TEST_CASE("containment and isotonicity, binary ops") {
  auto rng = tu::make_rng(41);
  for (int i = 0; i < 10000; ++i) {
    auto rand_iv = [&](double lo, double hi) {
      double a = tu::uniform(rng, lo, hi);
      double b = tu::uniform(rng, lo, hi);
      if (a > b) std::swap(a, b);
      return Interval(a, b);
    };
    Interval x = rand_iv(-100, 100);
    Interval y = rand_iv(-100, 100);
    double px = tu::uniform(rng, x.lo, x.hi);
    double py = tu::uniform(rng, y.lo, y.hi);
    REQUIRE(iv_add(x, y).contains(px + py));
    REQUIRE(iv_sub(x, y).contains(px - py));
    REQUIRE(iv_mul(x, y).contains(px * py));
    REQUIRE(iv_neg(x).contains(-px));
    Interval ypos = rand_iv(0.5, 100);
    double pyp = tu::uniform(rng, ypos.lo, ypos.hi);
    REQUIRE(iv_div(x, ypos).contains(px / pyp));

    // nested operands give nested results
    auto sub_of = [&](const Interval& v) {
      double a = tu::uniform(rng, v.lo, v.hi);
      double b = tu::uniform(rng, v.lo, v.hi);
      if (a > b) std::swap(a, b);
      return Interval(a, b);
    };
    Interval xs = sub_of(x), ys = sub_of(y);
    REQUIRE(iv_add(x, y).contains(iv_add(xs, ys)));
    REQUIRE(iv_mul(x, y).contains(iv_mul(xs, ys)));
    Interval yps = sub_of(ypos);
    REQUIRE(iv_div(x, ypos).contains(iv_div(xs, yps)));
  }
}

TEST_CASE("box utilities") {
  IntervalBox box;
  box.dims = {Interval(-3, 1), Interval(0, 2)};
  CHECK(widest_dim(box) == 0);
  auto m = midpoint(box);
  CHECK(m == std::vector<double>{-1.0, 1.0});
  IntervalBox tie;
  tie.dims = {Interval(0, 1), Interval(0, 1)};
  CHECK(widest_dim(tie) == 0);
}
