// Command-line front end: solve problem files or builtins, run sweep
// benchmarks, list the shipped benchmark problems.
//
// Exit codes: 0 optimal, 2 budget exhausted, 3 infeasible, 1 usage or
// parse error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "subdiv/bench.hpp"
#include "subdiv/builtins.hpp"
#include "subdiv/parallel.hpp"
#include "subdiv/parser.hpp"

namespace {

using namespace subdiv;

Bounder parse_bounder(const std::string& s) {
  if (s == "nie") return Bounder::Nie;
  if (s == "mvf") return Bounder::Mvf;
  throw CLI::ValidationError("--bounder", "expected 'nie' or 'mvf'");
}

PartitionStrategy parse_partition(const std::string& s) {
  if (s == "uniform") return PartitionStrategy::Uniform;
  if (s == "largest") return PartitionStrategy::Largest;
  if (s == "adaptive") return PartitionStrategy::Adaptive;
  throw CLI::ValidationError("--partition",
                             "expected 'uniform', 'largest' or 'adaptive'");
}

Schedule parse_schedule(const std::string& s) {
  if (s == "fused") return Schedule::Fused;
  if (s == "staged") return Schedule::Staged;
  throw CLI::ValidationError("--schedule", "expected 'fused' or 'staged'");
}

int default_threads() {
  if (const char* env = std::getenv("SUBDIV_THREADS")) {
    int t = std::atoi(env);
    if (t >= 1) return t;
  }
  return 1;
}

Problem load_problem(const std::string& spec_arg, const std::string& weights) {
  if (std::filesystem::exists(spec_arg)) return parse_problem_file(spec_arg);
  return builtin_problem(spec_arg, weights);
}

int exit_code(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return 0;
    case SolveStatus::MaxIter:
    case SolveStatus::TimeLimit: return 2;
    case SolveStatus::Infeasible: return 3;
  }
  return 1;
}

void print_summary(const RunRecord& rec) {
  std::cout << "problem:    " << rec.problem_name << "\n"
            << "status:     " << status_name(rec.status) << "\n"
            << "bounder:    " << bounder_name(rec.config.bounder)
            << "  partition: " << partition_name(rec.config.partition)
            << "  subdomains: " << rec.config.target_subdomains
            << "  schedule: " << schedule_name(rec.config.schedule)
            << "  threads: " << rec.config.workers << "\n";
  std::cout.precision(12);
  std::cout << "lb:         " << rec.lb << "\n"
            << "ub:         " << rec.ub << "\n"
            << "gap:        " << rec.gap << "\n"
            << "iterations: " << rec.iterations << "\n"
            << "nodes:      " << rec.nodes_created << " created, "
            << rec.nodes_pruned_bound << " pruned by bound, "
            << rec.nodes_pruned_infeasible << " pruned infeasible\n"
            << "wall_ms:    " << rec.wall_ms << "\n";
  if (rec.incumbent) {
    std::cout << "incumbent: ";
    for (double v : *rec.incumbent) std::cout << " " << v;
    std::cout << "\n";
  }
}

std::vector<std::int64_t> parse_counts(const std::string& csv) {
  std::vector<std::int64_t> counts;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) counts.push_back(std::stoll(item));
  if (counts.empty()) throw CLI::ValidationError("--subdomains", "empty list");
  return counts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subdiv: interval branch-and-bound solver with subdomain "
               "lower bounding"};
  app.require_subcommand(1);

  std::string file, log_path, weights;
  std::string bounder_s = "mvf", partition_s = "adaptive", schedule_s = "staged";
  std::int64_t subdomains = 1024, max_iter = 1000000;
  int threads = default_threads();
  double eps_abs = 1e-4, eps_rel = 1e-4, feas_tol = 1e-6;
  double time_limit = std::numeric_limits<double>::infinity();

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--bounder", bounder_s, "nie|mvf");
    cmd->add_option("--partition", partition_s, "uniform|largest|adaptive");
    cmd->add_option("--schedule", schedule_s, "fused|staged");
    cmd->add_option("--threads", threads, "bounding engine worker count");
    cmd->add_option("--eps-abs", eps_abs, "absolute optimality tolerance");
    cmd->add_option("--eps-rel", eps_rel, "relative optimality tolerance");
    cmd->add_option("--feas-tol", feas_tol, "constraint feasibility tolerance");
    cmd->add_option("--max-iter", max_iter, "iteration budget");
    cmd->add_option("--time-limit", time_limit, "time budget in seconds");
    cmd->add_option("--weights", weights, "ANN weights file for ann builtins");
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve a problem");
  solve_cmd->add_option("file", file, "problem file or builtin name")
      ->required();
  solve_cmd->add_option("--subdomains", subdomains,
                        "target subdomain count per node");
  solve_cmd->add_option("--log", log_path, "write CSV iteration history");
  add_common(solve_cmd);

  std::string counts_csv = "1,4,16,64,256,1024";
  std::string bounders_csv = "mvf";
  std::string partitions_csv;
  std::string out_path;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "sweep subdomain counts and bounders");
  bench_cmd->add_option("file", file, "problem file or builtin name")
      ->required();
  bench_cmd->add_option("--subdomains", counts_csv,
                        "comma-separated subdomain counts");
  bench_cmd->add_option("--bounders", bounders_csv,
                        "comma-separated subset of nie,mvf");
  bench_cmd->add_option("--partitions", partitions_csv,
                        "comma-separated partition strategies");
  bench_cmd->add_option("--out", out_path, "write sweep CSV to file");
  add_common(bench_cmd);

  CLI::App* list_cmd = app.add_subcommand("list", "list builtin problems");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (list_cmd->parsed()) {
      for (const std::string& name : builtin_names()) std::cout << name << "\n";
      return 0;
    }

    SolverConfig cfg;
    cfg.bounder = parse_bounder(bounder_s);
    cfg.partition = parse_partition(partition_s);
    cfg.schedule = parse_schedule(schedule_s);
    cfg.workers = threads;
    cfg.eps_abs = eps_abs;
    cfg.eps_rel = eps_rel;
    cfg.feas_tol = feas_tol;
    cfg.max_iter = max_iter;
    cfg.time_limit_s = time_limit;

    Problem problem = load_problem(file, weights);

    if (solve_cmd->parsed()) {
      cfg.target_subdomains = subdomains;
      RunRecord rec = run_solve(problem, file, cfg);
      print_summary(rec);
      if (!log_path.empty()) {
        std::ofstream out(log_path);
        out << history_csv(rec);
      }
      return exit_code(rec.status);
    }

    // bench
    SweepSpec spec;
    spec.subdomain_counts = parse_counts(counts_csv);
    {
      std::stringstream ss(bounders_csv);
      std::string item;
      while (std::getline(ss, item, ','))
        spec.bounders.push_back(parse_bounder(item));
    }
    if (partitions_csv.empty()) {
      spec.partitions = {PartitionStrategy::Uniform};
    } else {
      std::stringstream ss(partitions_csv);
      std::string item;
      while (std::getline(ss, item, ','))
        spec.partitions.push_back(parse_partition(item));
    }
    std::vector<SweepRow> rows = run_sweep(problem, file, cfg, spec);
    std::string csv = sweep_csv(rows);
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      out << csv;
    }
    std::cout << csv;
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
