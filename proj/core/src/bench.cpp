#include "subdiv/bench.hpp"

#include <chrono>
#include <sstream>

namespace subdiv {

const char* bounder_name(Bounder b) {
  return b == Bounder::Nie ? "nie" : "mvf";
}

const char* partition_name(PartitionStrategy s) {
  switch (s) {
    case PartitionStrategy::Uniform: return "uniform";
    case PartitionStrategy::Largest: return "largest";
    case PartitionStrategy::Adaptive: return "adaptive";
  }
  return "?";
}

const char* schedule_name(Schedule s) {
  return s == Schedule::Fused ? "fused" : "staged";
}

RunRecord run_solve(const Problem& p, const std::string& name,
                    const SolverConfig& config) {
  using Clock = std::chrono::steady_clock;
  auto t0 = Clock::now();
  SolverResult res = solve(p, config);
  double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

  RunRecord rec;
  rec.problem_name = name;
  rec.config = config;
  rec.status = res.status;
  rec.lb = res.lb;
  rec.ub = res.ub;
  rec.gap = res.ub - res.lb;
  rec.iterations = res.iterations;
  rec.nodes_created = res.nodes_created;
  rec.nodes_pruned_bound = res.nodes_pruned_bound;
  rec.nodes_pruned_infeasible = res.nodes_pruned_infeasible;
  rec.incumbent = res.incumbent;
  rec.wall_ms = ms;
  rec.history = res.history;
  return rec;
}

std::string history_csv(const RunRecord& rec) {
  std::ostringstream os;
  os.precision(17);
  os << "iteration,nodes_open,lb,ub,gap,wall_ms\n";
  for (const HistoryRow& row : rec.history) {
    os << row.iteration << "," << row.nodes_open << "," << row.lb << ","
       << row.ub << "," << (row.ub - row.lb) << "," << row.wall_ms << "\n";
  }
  return os.str();
}

std::vector<SweepRow> run_sweep(const Problem& p, const std::string& name,
                                const SolverConfig& base,
                                const SweepSpec& spec) {
  using Clock = std::chrono::steady_clock;
  std::vector<SweepRow> rows;
  for (std::int64_t count : spec.subdomain_counts) {
    for (Bounder b : spec.bounders) {
      for (PartitionStrategy part : spec.partitions) {
        for (int rep = 0; rep < std::max(1, spec.repetitions); ++rep) {
          SolverConfig cfg = base;
          cfg.bounder = b;
          cfg.partition = part;
          cfg.target_subdomains = count;

          auto t0 = Clock::now();
          SubdomainGrid grid = make_grid(p.box, make_plan(part, p.box, count));
          Refinement root_ref =
              refine(p, grid, b, cfg.schedule, cfg.workers);
          SolverResult res = solve(p, cfg);
          double ms =
              std::chrono::duration<double, std::milli>(Clock::now() - t0)
                  .count();

          rows.push_back({name, b, part, count, root_ref.hull_obj.lo,
                          res.iterations, res.status, ms});
        }
      }
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << "problem,bounder,partition,subdomains,root_lb,iterations,status,"
        "wall_ms\n";
  for (const SweepRow& r : rows) {
    os << r.problem_name << "," << bounder_name(r.bounder) << ","
       << partition_name(r.partition) << "," << r.subdomains << "," << r.root_lb
       << "," << r.iterations << "," << status_name(r.status) << ","
       << r.wall_ms << "\n";
  }
  return os.str();
}

}  // namespace subdiv
