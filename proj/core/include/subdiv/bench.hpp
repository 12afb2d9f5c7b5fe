#ifndef SUBDIV_BENCH_HPP
#define SUBDIV_BENCH_HPP

#include <string>
#include <vector>

#include "subdiv/solver.hpp"

namespace subdiv {

// One solver run plus its reporting surface.
struct RunRecord {
  std::string problem_name;
  SolverConfig config;
  SolveStatus status;
  double lb;
  double ub;
  double gap;
  std::int64_t iterations;
  std::int64_t nodes_created;
  std::int64_t nodes_pruned_bound;
  std::int64_t nodes_pruned_infeasible;
  std::optional<std::vector<double>> incumbent;
  double wall_ms;
  std::vector<HistoryRow> history;
};

RunRecord run_solve(const Problem& p, const std::string& name,
                    const SolverConfig& config);

// iteration,nodes_open,lb,ub,gap,wall_ms
std::string history_csv(const RunRecord& rec);

struct SweepSpec {
  std::vector<std::int64_t> subdomain_counts;
  std::vector<Bounder> bounders;
  std::vector<PartitionStrategy> partitions;
  int repetitions = 1;
};

struct SweepRow {
  std::string problem_name;
  Bounder bounder;
  PartitionStrategy partition;
  std::int64_t subdomains;
  double root_lb;
  std::int64_t iterations;
  SolveStatus status;
  double wall_ms;
};

// One row per (count, bounder, partition): root-node lower bound plus a
// full solve for the iteration count.
std::vector<SweepRow> run_sweep(const Problem& p, const std::string& name,
                                const SolverConfig& base,
                                const SweepSpec& spec);

// problem,bounder,partition,subdomains,root_lb,iterations,status,wall_ms
std::string sweep_csv(const std::vector<SweepRow>& rows);

const char* bounder_name(Bounder b);
const char* partition_name(PartitionStrategy s);
const char* schedule_name(Schedule s);

}  // namespace subdiv

#endif
