// Refinement throughput on the peaks benchmark problem across bounders,
// schedules and subdomain counts.

#include <benchmark/benchmark.h>

#include "subdiv/bounder.hpp"
#include "subdiv/builtins.hpp"

using namespace subdiv;

static const Problem& peaks() {
  static Problem p = builtin_problem("peaks", "");
  return p;
}

static void BM_Refine(benchmark::State& state, Bounder b, Schedule s) {
  const Problem& p = peaks();
  auto count = static_cast<std::int64_t>(state.range(0));
  SubdomainGrid grid =
      make_grid(p.box, make_plan(PartitionStrategy::Uniform, p.box, count));
  for (auto _ : state) {
    Refinement r = refine(p, grid, b, s, 1);
    benchmark::DoNotOptimize(r.hull_obj);
  }
  state.SetItemsProcessed(state.iterations() * grid.plan.total);
}

BENCHMARK_CAPTURE(BM_Refine, nie_fused, Bounder::Nie, Schedule::Fused)
    ->RangeMultiplier(4)
    ->Range(1, 1024);
BENCHMARK_CAPTURE(BM_Refine, nie_staged, Bounder::Nie, Schedule::Staged)
    ->RangeMultiplier(4)
    ->Range(1, 1024);
BENCHMARK_CAPTURE(BM_Refine, mvf_fused, Bounder::Mvf, Schedule::Fused)
    ->RangeMultiplier(4)
    ->Range(1, 1024);
BENCHMARK_CAPTURE(BM_Refine, mvf_staged, Bounder::Mvf, Schedule::Staged)
    ->RangeMultiplier(4)
    ->Range(1, 1024);

BENCHMARK_MAIN();
