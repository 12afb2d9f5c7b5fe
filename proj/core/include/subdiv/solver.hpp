#ifndef SUBDIV_SOLVER_HPP
#define SUBDIV_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subdiv/bounder.hpp"

namespace subdiv {

// A live search-tree node: its box, the best known lower bound of the
// objective on the box (-inf before first bounding) and bookkeeping.
struct BnbNode {
  IntervalBox box;
  double lb = -std::numeric_limits<double>::infinity();
  int depth = 0;
  std::int64_t id = 0;  // creation order, tie-breaker for selection
};

struct SolverConfig {
  Bounder bounder = Bounder::Mvf;
  PartitionStrategy partition = PartitionStrategy::Adaptive;
  std::int64_t target_subdomains = 1024;
  Schedule schedule = Schedule::Staged;
  int workers = 1;
  double eps_abs = 1e-4;
  double eps_rel = 1e-4;
  std::int64_t max_iter = 1000000;
  double time_limit_s = std::numeric_limits<double>::infinity();
  double feas_tol = 1e-6;
};

enum class SolveStatus { Optimal, MaxIter, TimeLimit, Infeasible };

const char* status_name(SolveStatus s);

struct HistoryRow {
  std::int64_t iteration;
  std::int64_t nodes_open;
  double lb;
  double ub;
  double wall_ms;
};

struct SolverResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<std::vector<double>> incumbent;
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  std::int64_t iterations = 0;
  std::int64_t nodes_created = 0;
  std::int64_t nodes_pruned_bound = 0;
  std::int64_t nodes_pruned_infeasible = 0;
  std::vector<HistoryRow> history;
};

enum class PruneDecision { Keep, Prune };

// Prune iff some inequality hull has a positive lower endpoint or some
// equality hull excludes zero.
PruneDecision feasibility_check(const Refinement& bounds);

// Prune iff lb is within both tolerances of the incumbent value.
PruneDecision lower_bound_test(double node_lb, double ub,
                               const SolverConfig& config);

// Midpoint candidates (node midpoint and midpoint of the best
// subdomain) polished by projected coordinate descent; returns the best
// point meeting the feasibility tolerance, if any.
struct Candidate {
  std::vector<double> point;
  double value;
};
std::optional<Candidate> upper_bound_node(const Problem& p, const BnbNode& node,
                                          const Refinement& refinement,
                                          const SolverConfig& config);

// Bisect the widest dimension (ties: lowest index) at its midpoint; the
// children's union is exactly the parent box. Throws on a point box.
std::pair<BnbNode, BnbNode> branch(const BnbNode& node);

// Complete spatial branch-and-bound loop with Subdomain Lower Bounding.
SolverResult solve(const Problem& p, const SolverConfig& config);

}  // namespace subdiv

#endif
