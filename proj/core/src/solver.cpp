#include "subdiv/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>

namespace subdiv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct NodeOrder {
  // best-bound-first, ties by creation order
  bool operator()(const BnbNode& a, const BnbNode& b) const {
    if (a.lb != b.lb) return a.lb > b.lb;
    return a.id > b.id;
  }
};

// max constraint violation at a point; +inf on evaluation failure
double violation(const Problem& p, const std::vector<double>& x) {
  try {
    double obj;
    std::vector<double> g, h;
    eval_real_all(p, x, obj, g, h);
    double v = 0.0;
    for (double gi : g) v = std::max(v, gi);
    for (double hj : h) v = std::max(v, std::abs(hj));
    if (std::isnan(obj) || std::isnan(v)) return kInf;
    return v;
  } catch (const DomainViolation&) {
    return kInf;
  }
}

double objective_at(const Problem& p, const std::vector<double>& x) {
  try {
    double v = eval_real(p, p.objective, x);
    return std::isnan(v) ? kInf : v;
  } catch (const DomainViolation&) {
    return kInf;
  }
}

// Lexicographic merit: excess violation first, then objective.
struct Merit {
  double excess;
  double value;
  bool operator<(const Merit& o) const {
    if (excess != o.excess) return excess < o.excess;
    return value < o.value;
  }
};

Merit merit_at(const Problem& p, const std::vector<double>& x,
               double feas_tol) {
  double v = violation(p, x);
  return {std::max(v - feas_tol, 0.0), objective_at(p, x)};
}

// Projected coordinate descent inside the node box: per-sweep line
// minimization with step halving, at most `max_sweeps` sweeps.
std::vector<double> polish(const Problem& p, const IntervalBox& box,
                           std::vector<double> x, double feas_tol,
                           int max_sweeps) {
  Merit cur = merit_at(p, x, feas_tol);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool moved = false;
    for (std::size_t d = 0; d < box.size(); ++d) {
      double w = width(box.dims[d]);
      if (w == 0.0) continue;
      double step = 0.5 * w;
      double floor_step = 1e-14 * std::max(1.0, std::abs(x[d]));
      for (int it = 0; it < 60 && step > floor_step; ++it) {
        bool improved = false;
        for (double s : {step, -step}) {
          double old = x[d];
          x[d] = std::clamp(old + s, box.dims[d].lo, box.dims[d].hi);
          if (x[d] != old) {
            Merit m = merit_at(p, x, feas_tol);
            if (m < cur) {
              cur = m;
              improved = true;
              moved = true;
              break;
            }
          }
          x[d] = old;
        }
        if (!improved) step *= 0.5;
      }
    }
    if (!moved) break;
  }
  return x;
}

}  // namespace

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::MaxIter: return "max_iter";
    case SolveStatus::TimeLimit: return "time_limit";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "?";
}

PruneDecision feasibility_check(const Refinement& bounds) {
  for (const Interval& g : bounds.hull_ineq)
    if (g.lo > 0.0) return PruneDecision::Prune;
  for (const Interval& h : bounds.hull_eq)
    if (h.lo > 0.0 || h.hi < 0.0) return PruneDecision::Prune;
  return PruneDecision::Keep;
}

PruneDecision lower_bound_test(double node_lb, double ub,
                               const SolverConfig& config) {
  if (node_lb >= ub - config.eps_abs &&
      node_lb >= ub - config.eps_rel * std::max(1.0, std::abs(ub)))
    return PruneDecision::Prune;
  return PruneDecision::Keep;
}

std::optional<Candidate> upper_bound_node(const Problem& p, const BnbNode& node,
                                          const Refinement& refinement,
                                          const SolverConfig& config) {
  std::vector<std::vector<double>> starts;
  try {
    starts.push_back(midpoint(node.box));
  } catch (const DomainViolation&) {
  }
  // midpoint of the subdomain with the smallest objective lower bound
  if (refinement.obj_bounds.size() > 1) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < refinement.obj_bounds.size(); ++k)
      if (refinement.obj_bounds[k].lo < refinement.obj_bounds[best].lo)
        best = k;
    SubdomainGrid grid =
        make_grid(node.box, make_plan(config.partition, node.box,
                                      config.target_subdomains));
    try {
      starts.push_back(midpoint(grid.subdomain((std::int64_t)best)));
    } catch (const DomainViolation&) {
    }
  }

  std::optional<Candidate> result;
  for (const auto& start : starts) {
    std::vector<double> x = polish(p, node.box, start, config.feas_tol, 50);
    if (violation(p, x) <= config.feas_tol) {
      double v = objective_at(p, x);
      if (!result || v < result->value) result = Candidate{x, v};
    }
  }
  return result;
}

std::pair<BnbNode, BnbNode> branch(const BnbNode& node) {
  std::size_t d = widest_dim(node.box);
  if (width(node.box.dims[d]) == 0.0)
    throw std::runtime_error("cannot branch point box");
  double m = midpoint(node.box.dims[d]);
  // guard against a midpoint landing on an endpoint at tiny widths
  if (m <= node.box.dims[d].lo || m >= node.box.dims[d].hi)
    throw std::runtime_error("cannot branch point box");
  BnbNode left = node;
  BnbNode right = node;
  left.box.dims[d] = Interval(node.box.dims[d].lo, m);
  right.box.dims[d] = Interval(m, node.box.dims[d].hi);
  left.depth = right.depth = node.depth + 1;
  return {left, right};
}

SolverResult solve(const Problem& p, const SolverConfig& config) {
  using Clock = std::chrono::steady_clock;
  auto t0 = Clock::now();
  auto wall_ms = [&] {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  };

  SolverResult res;
  std::priority_queue<BnbNode, std::vector<BnbNode>, NodeOrder> open;
  std::int64_t next_id = 0;

  BnbNode root;
  root.box = p.box;
  root.id = next_id++;
  open.push(root);
  res.nodes_created = 1;

  double ub = kInf;
  std::optional<std::vector<double>> incumbent;
  double global_lb = -kInf;

  SolveStatus status = SolveStatus::Infeasible;
  bool budget_hit = false;

  while (!open.empty()) {
    if (res.iterations >= config.max_iter) {
      status = SolveStatus::MaxIter;
      budget_hit = true;
      break;
    }
    if (wall_ms() > config.time_limit_s * 1000.0) {
      status = SolveStatus::TimeLimit;
      budget_hit = true;
      break;
    }

    BnbNode node = open.top();
    open.pop();
    ++res.iterations;
    global_lb = std::max(global_lb, node.lb);

    SubdomainGrid grid =
        make_grid(node.box, make_plan(config.partition, node.box,
                                      config.target_subdomains));
    Refinement ref =
        refine(p, grid, config.bounder, config.schedule, config.workers);

    if (feasibility_check(ref) == PruneDecision::Prune) {
      ++res.nodes_pruned_infeasible;
      res.history.push_back({res.iterations, (std::int64_t)open.size(),
                             global_lb, ub, wall_ms()});
      continue;
    }

    // monotone node bound; an entirely unreliable refinement keeps the
    // inherited bound (never prune on an unverified bound)
    double node_lb = node.lb;
    if (!ref.all_unreliable())
      node_lb = std::max(node.lb, ref.hull_obj.lo);

    if (lower_bound_test(node_lb, ub, config) == PruneDecision::Prune) {
      ++res.nodes_pruned_bound;
      res.history.push_back({res.iterations, (std::int64_t)open.size(),
                             global_lb, ub, wall_ms()});
      continue;
    }

    if (auto cand = upper_bound_node(p, node, ref, config)) {
      if (cand->value < ub) {
        ub = cand->value;
        incumbent = cand->point;
      }
    }

    // re-test against a possibly improved incumbent
    if (lower_bound_test(node_lb, ub, config) == PruneDecision::Prune) {
      ++res.nodes_pruned_bound;
      res.history.push_back({res.iterations, (std::int64_t)open.size(),
                             global_lb, ub, wall_ms()});
      continue;
    }

    BnbNode survivor = node;
    survivor.lb = node_lb;
    auto [left, right] = branch(survivor);
    left.id = next_id++;
    right.id = next_id++;
    open.push(left);
    open.push(right);
    res.nodes_created += 2;

    double open_lb = open.top().lb;
    global_lb = std::max(global_lb, std::min(open_lb, ub));
    res.history.push_back({res.iterations, (std::int64_t)open.size(), global_lb,
                           ub, wall_ms()});
  }

  if (!budget_hit) {
    if (incumbent) {
      status = SolveStatus::Optimal;
      global_lb = ub;  // queue exhausted: every open bound met the gap test
    } else {
      status = SolveStatus::Infeasible;
      global_lb = kInf;
    }
  }

  res.status = status;
  res.incumbent = incumbent;
  res.ub = ub;
  res.lb = global_lb;
  res.history.push_back({res.iterations, (std::int64_t)open.size(), global_lb,
                         ub, wall_ms()});
  return res;
}

}  // namespace subdiv
