#ifndef SUBDIV_PARTITION_HPP
#define SUBDIV_PARTITION_HPP

#include <cstdint>
#include <vector>

#include "subdiv/box.hpp"

namespace subdiv {

// Number of subintervals per dimension; total = product of counts.
struct PartitionPlan {
  std::vector<int> counts;
  std::int64_t total = 1;
};

// Materialized partition: one shared breakpoint sequence per dimension.
// Breakpoint j is the round-to-nearest evaluation of lo + j*(w/N),
// clamped monotone, with the first and last breakpoints pinned to the
// exact box endpoints. Subdomains reference the sequence, so the union
// of subdomains reproduces the box bitwise and power-of-two grids nest
// exactly.
struct SubdomainGrid {
  PartitionPlan plan;
  std::vector<std::vector<double>> breaks;  // per dimension, counts[i]+1 points

  std::int64_t total() const { return plan.total; }

  // Mixed-radix decode, dimension 0 fastest.
  IntervalBox subdomain(std::int64_t k) const {
    IntervalBox box;
    box.dims.reserve(breaks.size());
    for (std::size_t i = 0; i < breaks.size(); ++i) {
      std::int64_t j = k % plan.counts[i];
      k /= plan.counts[i];
      box.dims.emplace_back(breaks[i][j], breaks[i][j + 1]);
    }
    return box;
  }
};

SubdomainGrid make_grid(const IntervalBox& X, const PartitionPlan& plan);

// All counts equal to the largest N with N^n <= target.
PartitionPlan plan_uniform(const IntervalBox& X, std::int64_t target);
// Only the widest dimension (ties: lowest index) gets M subintervals.
PartitionPlan plan_largest(const IntervalBox& X, std::int64_t m);
// Start uniform, then greedily increment counts of wider dimensions
// while the total stays within budget.
PartitionPlan plan_adaptive(const IntervalBox& X, std::int64_t budget);

enum class PartitionStrategy { Uniform, Largest, Adaptive };

PartitionPlan make_plan(PartitionStrategy strategy, const IntervalBox& X,
                        std::int64_t target);

SubdomainGrid partition_uniform(const IntervalBox& X, std::int64_t target);
SubdomainGrid partition_largest(const IntervalBox& X, std::int64_t m);
SubdomainGrid partition_adaptive(const IntervalBox& X, std::int64_t budget);

}  // namespace subdiv

#endif
