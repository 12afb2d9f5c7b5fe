#include "subdiv/partition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace subdiv {

namespace {

// product with saturation so count increments cannot overflow
std::int64_t safe_total(const std::vector<int>& counts) {
  std::int64_t t = 1;
  for (int c : counts) {
    if (t > (std::int64_t{1} << 62) / c) return std::int64_t{1} << 62;
    t *= c;
  }
  return t;
}

}  // namespace

SubdomainGrid make_grid(const IntervalBox& X, const PartitionPlan& plan) {
  SubdomainGrid grid;
  grid.plan = plan;
  grid.breaks.resize(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) {
    int n = plan.counts[i];
    double lo = X.dims[i].lo, hi = X.dims[i].hi;
    double w = hi - lo;
    std::vector<double>& b = grid.breaks[i];
    b.resize(n + 1);
    b[0] = lo;
    for (int j = 1; j < n; ++j) {
      double v = lo + static_cast<double>(j) * (w / n);
      b[j] = std::min(std::max(v, b[j - 1]), hi);
    }
    b[n] = hi;
  }
  return grid;
}

PartitionPlan plan_uniform(const IntervalBox& X, std::int64_t target) {
  if (target < 1) throw std::invalid_argument("subdomain target must be >= 1");
  std::size_t n = X.size();
  int N = 1;
  for (;;) {
    std::vector<int> trial(n, N + 1);
    if (safe_total(trial) > target) break;
    ++N;
  }
  PartitionPlan plan;
  plan.counts.assign(n, N);
  plan.total = safe_total(plan.counts);
  return plan;
}

PartitionPlan plan_largest(const IntervalBox& X, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("subdomain target must be >= 1");
  PartitionPlan plan;
  plan.counts.assign(X.size(), 1);
  plan.counts[widest_dim(X)] = static_cast<int>(m);
  plan.total = m;
  return plan;
}

PartitionPlan plan_adaptive(const IntervalBox& X, std::int64_t budget) {
  PartitionPlan plan = plan_uniform(X, budget);
  std::size_t n = X.size();

  // dimensions ordered by width descending, index ascending
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return width(X.dims[a]) > width(X.dims[b]);
  });

  bool any = true;
  while (any) {
    any = false;
    for (std::size_t d : order) {
      plan.counts[d] += 1;
      if (safe_total(plan.counts) <= budget) {
        any = true;
      } else {
        plan.counts[d] -= 1;
      }
    }
  }
  plan.total = safe_total(plan.counts);
  return plan;
}

PartitionPlan make_plan(PartitionStrategy strategy, const IntervalBox& X,
                        std::int64_t target) {
  switch (strategy) {
    case PartitionStrategy::Uniform: return plan_uniform(X, target);
    case PartitionStrategy::Largest: return plan_largest(X, target);
    case PartitionStrategy::Adaptive: return plan_adaptive(X, target);
  }
  return plan_uniform(X, target);
}

SubdomainGrid partition_uniform(const IntervalBox& X, std::int64_t target) {
  return make_grid(X, plan_uniform(X, target));
}

SubdomainGrid partition_largest(const IntervalBox& X, std::int64_t m) {
  return make_grid(X, plan_largest(X, m));
}

SubdomainGrid partition_adaptive(const IntervalBox& X, std::int64_t budget) {
  return make_grid(X, plan_adaptive(X, budget));
}

}  // namespace subdiv
