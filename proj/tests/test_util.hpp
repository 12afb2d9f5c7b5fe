#ifndef SUBDIV_TEST_UTIL_HPP
#define SUBDIV_TEST_UTIL_HPP

#include <cmath>
#include <random>
#include <vector>

#include "subdiv/bounder.hpp"
#include "subdiv/dag.hpp"

namespace subdiv::testutil {

// Deterministic RNG for reproducible property tests.
inline std::mt19937_64 make_rng(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::vector<double> sample_point(std::mt19937_64& rng,
                                        const IntervalBox& box) {
  std::vector<double> x(box.size());
  for (std::size_t i = 0; i < box.size(); ++i)
    x[i] = uniform(rng, box.dims[i].lo, box.dims[i].hi);
  return x;
}

// Random sub-box of `box` (for isotonicity tests).
inline IntervalBox sample_subbox(std::mt19937_64& rng, const IntervalBox& box) {
  IntervalBox sub;
  sub.dims.reserve(box.size());
  for (const Interval& d : box.dims) {
    double a = uniform(rng, d.lo, d.hi);
    double b = uniform(rng, d.lo, d.hi);
    if (a > b) std::swap(a, b);
    sub.dims.emplace_back(a, b);
  }
  return sub;
}

// Domain-safe random factorable DAG: every intrinsic appears, but
// log/sqrt arguments are kept positive and exp arguments bounded, so no
// clipping occurs over boxes within [-2, 2]^n.
struct RandomProblem {
  Problem problem;
};

inline NodeId random_expr(DagBuilder& b, std::mt19937_64& rng,
                          std::uint32_t n_vars, int depth) {
  if (depth <= 0) {
    if (std::uniform_int_distribution<int>(0, 2)(rng) == 0)
      return b.constant(uniform(rng, -2.0, 2.0));
    return b.variable(std::uniform_int_distribution<std::uint32_t>(
        0, n_vars - 1)(rng));
  }
  int pick = std::uniform_int_distribution<int>(0, 11)(rng);
  switch (pick) {
    case 0:
      return b.binary(BinOp::Add, random_expr(b, rng, n_vars, depth - 1),
                      random_expr(b, rng, n_vars, depth - 1));
    case 1:
      return b.binary(BinOp::Sub, random_expr(b, rng, n_vars, depth - 1),
                      random_expr(b, rng, n_vars, depth - 1));
    case 2:
      return b.binary(BinOp::Mul, random_expr(b, rng, n_vars, depth - 1),
                      random_expr(b, rng, n_vars, depth - 1));
    case 3: {
      // denominator bounded away from zero: 1.5 + sin(e)
      NodeId den = b.binary(
          BinOp::Add, b.constant(1.5),
          b.unary(UnOp::Sin, random_expr(b, rng, n_vars, depth - 1)));
      return b.binary(BinOp::Div, random_expr(b, rng, n_vars, depth - 1), den);
    }
    case 4:
      return b.unary(UnOp::Neg, random_expr(b, rng, n_vars, depth - 1));
    case 5:
      return b.unary(UnOp::Sin, random_expr(b, rng, n_vars, depth - 1));
    case 6:
      return b.unary(UnOp::Cos, random_expr(b, rng, n_vars, depth - 1));
    case 7:
      return b.unary(UnOp::Tanh, random_expr(b, rng, n_vars, depth - 1));
    case 8:
      // exp of a bounded argument
      return b.unary(UnOp::Exp,
                     b.unary(UnOp::Tanh, random_expr(b, rng, n_vars, depth - 1)));
    case 9: {
      // log(1 + e^2) > 0
      NodeId sq = b.unary(UnOp::PowInt,
                          b.unary(UnOp::Tanh,
                                  random_expr(b, rng, n_vars, depth - 1)),
                          2);
      return b.unary(UnOp::Log, b.binary(BinOp::Add, b.constant(1.0), sq));
    }
    case 10: {
      // sqrt(1 + e^2)
      NodeId sq = b.unary(UnOp::PowInt,
                          b.unary(UnOp::Tanh,
                                  random_expr(b, rng, n_vars, depth - 1)),
                          2);
      return b.unary(UnOp::Sqrt, b.binary(BinOp::Add, b.constant(1.0), sq));
    }
    default: {
      int k = std::uniform_int_distribution<int>(2, 3)(rng);
      return b.unary(UnOp::PowInt,
                     b.unary(UnOp::Tanh, random_expr(b, rng, n_vars, depth - 1)),
                     k);
    }
  }
}

inline Problem random_problem(std::mt19937_64& rng, std::uint32_t max_vars = 4,
                              int max_depth = 8) {
  std::uint32_t n =
      std::uniform_int_distribution<std::uint32_t>(1, max_vars)(rng);
  int depth = std::uniform_int_distribution<int>(2, max_depth)(rng);
  DagBuilder b;
  NodeId root = random_expr(b, rng, n, depth);
  Problem p;
  p.n = n;
  for (std::uint32_t i = 0; i < n; ++i) {
    double a = uniform(rng, -2.0, 1.0);
    double w = uniform(rng, 0.1, 1.0);
    p.box.dims.emplace_back(a, a + w);
    p.names.push_back("x" + std::to_string(i + 1));
  }
  p.objective = root;
  p.dag = b.take();
  return p;
}

// Dense-sampling range oracle for the exact image set, independent of
// the interval evaluators.
inline Interval sample_range(const Problem& p, NodeId root,
                             const IntervalBox& box, std::int64_t samples,
                             std::uint64_t seed = 7) {
  auto rng = make_rng(seed);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::int64_t s = 0; s < samples; ++s) {
    std::vector<double> x = sample_point(rng, box);
    double v = eval_real(p, root, x);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return Interval(lo, hi);
}

inline double ulp_of(double v) {
  double a = std::abs(v);
  if (a < 1.0) a = 1.0;
  return std::nextafter(a, std::numeric_limits<double>::infinity()) - a;
}

}  // namespace subdiv::testutil

#endif
