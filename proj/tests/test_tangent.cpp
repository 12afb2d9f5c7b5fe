#include <doctest.h>

#include <cmath>

#include "subdiv/dag.hpp"
#include "test_util.hpp"

using namespace subdiv;
namespace tu = subdiv::testutil;

TEST_CASE("tangent rule examples") {
  // product rule: x=(2,1), y=(3,0) -> (6,3)
  Tangent<double> x{2.0, 1.0}, y{3.0, 0.0};
  Tangent<double> m = ar_mul(x, y);
  CHECK(m.val == 6.0);
  CHECK(m.der == 3.0);

  // tanh at 0 with unit seed: derivative 1 - tanh^2 = 1
  Tangent<double> t = ar_unary(UnOp::Tanh, 0, Tangent<double>{0.0, 1.0}, nullptr);
  CHECK(t.val == 0.0);
  CHECK(t.der == 1.0);

  // interval chain rule through a square: [1,2] seeded with [1,1]
  Tangent<Interval> xi{Interval(1, 2), Interval(1.0)};
  Tangent<Interval> sq = ar_unary(UnOp::PowInt, 2, xi, nullptr);
  CHECK(sq.val.contains(Interval(1, 4)));
  CHECK(sq.der.contains(Interval(2, 4)));
  CHECK(width(sq.der) <= 2.0 + 8 * tu::ulp_of(4.0));
}

TEST_CASE("interval_gradient examples") {
  {
    DagBuilder b;
    NodeId root = b.unary(UnOp::PowInt, b.variable(0), 2);
    Problem p;
    p.n = 1;
    p.box.dims = {Interval(1, 2)};
    p.objective = root;
    p.dag = b.take();
    IntervalGradient g = interval_gradient(p, p.objective, p.box);
    REQUIRE(g.size() == 1);
    CHECK(g[0].contains(Interval(2, 4)));
    CHECK(width(g[0]) <= 2.0 + 8 * tu::ulp_of(4.0));
  }
  {
    DagBuilder b;
    NodeId root = b.binary(BinOp::Mul, b.variable(0), b.variable(1));
    Problem p;
    p.n = 2;
    p.box.dims = {Interval(0, 1), Interval(2, 3)};
    p.objective = root;
    p.dag = b.take();
    IntervalGradient g = interval_gradient(p, p.objective, p.box);
    REQUIRE(g.size() == 2);
    CHECK(g[0].contains(Interval(2, 3)));
    CHECK(g[1].contains(Interval(0, 1)));
  }
  {
    DagBuilder b;
    NodeId root = b.unary(UnOp::Sin, b.variable(0));
    Problem p;
    p.n = 1;
    p.box.dims = {Interval(0.0)};
    p.objective = root;
    p.dag = b.take();
    IntervalGradient g = interval_gradient(p, p.objective, p.box);
    CHECK(g[0].contains(1.0));
    CHECK(width(g[0]) <= 4 * tu::ulp_of(1.0));
  }
}

TEST_CASE("finite differences lie inside the interval gradient") {
  auto rng = tu::make_rng(101);
  int done = 0;
  while (done < 200) {
    Problem p = tu::random_problem(rng, 3, 5);
    std::vector<double> x = tu::sample_point(rng, p.box);
    // keep the point away from the box faces so central steps stay inside
    bool interior = true;
    const double h = 1e-6;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] - h < p.box.dims[i].lo || x[i] + h > p.box.dims[i].hi)
        interior = false;
    }
    if (!interior) continue;
    IntervalGradient g = interval_gradient(p, p.objective, p.box);
    for (std::size_t i = 0; i < x.size(); ++i) {
      std::vector<double> xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      double fd =
          (eval_real(p, p.objective, xp) - eval_real(p, p.objective, xm)) /
          (2 * h);
      double tol = 1e-4 * std::max(1.0, std::abs(fd));
      REQUIRE(g[i].lo - tol <= fd);
      REQUIRE(fd <= g[i].hi + tol);
    }
    ++done;
  }
}

TEST_CASE("degenerate-box gradient equals the real derivative") {
  auto rng = tu::make_rng(103);
  for (int c = 0; c < 300; ++c) {
    Problem p = tu::random_problem(rng, 3, 5);
    std::vector<double> x = tu::sample_point(rng, p.box);
    IntervalBox point_box;
    for (double v : x) point_box.dims.emplace_back(v);
    IntervalGradient g = interval_gradient(p, p.objective, point_box);
    std::vector<double> rg = real_gradient(p, p.objective, x);
    for (std::size_t i = 0; i < x.size(); ++i) {
      REQUIRE(g[i].contains(rg[i]));
      REQUIRE(width(g[i]) <= 256 * tu::ulp_of(rg[i]));
    }
  }
}

// Running the tangent rules over real scalars reproduces the midpoints
// of the interval-tangent run on degenerate boxes.
TEST_CASE("arithmetic genericity") {
  auto rng = tu::make_rng(107);
  for (int c = 0; c < 200; ++c) {
    Problem p = tu::random_problem(rng, 3, 4);
    std::vector<double> x = tu::sample_point(rng, p.box);
    for (std::uint32_t seed_var = 0; seed_var < p.n; ++seed_var) {
      std::vector<Tangent<double>> seeds_r(p.n);
      std::vector<Tangent<Interval>> seeds_i(p.n);
      for (std::uint32_t i = 0; i < p.n; ++i) {
        double d = i == seed_var ? 1.0 : 0.0;
        seeds_r[i] = {x[i], d};
        seeds_i[i] = {Interval(x[i]), Interval(d)};
      }
      std::vector<Tangent<double>> out_r;
      std::vector<Tangent<Interval>> out_i;
      eval_dag(p.dag, seeds_r, out_r, nullptr, nullptr);
      eval_dag(p.dag, seeds_i, out_i, nullptr, nullptr);
      const auto& ri = out_i[p.objective];
      const auto& rr = out_r[p.objective];
      REQUIRE(ri.val.contains(rr.val));
      REQUIRE(ri.der.contains(rr.der));
      REQUIRE(midpoint(ri.val) == doctest::Approx(rr.val).epsilon(1e-13));
      if (std::isfinite(rr.der))
        REQUIRE(midpoint(ri.der) == doctest::Approx(rr.der).epsilon(1e-13));
    }
  }
}
