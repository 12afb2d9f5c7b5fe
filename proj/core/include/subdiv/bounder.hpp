#ifndef SUBDIV_BOUNDER_HPP
#define SUBDIV_BOUNDER_HPP

#include <cstdint>
#include <vector>

#include "subdiv/dag.hpp"
#include "subdiv/partition.hpp"

namespace subdiv {

enum class Bounder { Nie, Mvf };
enum class Schedule { Fused, Staged };

// Per-subdomain status bits.
enum SubdomainFlag : std::uint8_t {
  kFlagClipped = 1,    // some argument was clipped to a natural domain
  kFlagUnbounded = 2,  // a division produced a whole-line bound
  kFlagFallback = 4,   // MVF fell back to NIE for at least one root
};

// Output of Subdomain Lower Bounding for one node: the per-subdomain
// bound table and its interval hull, per root.
struct Refinement {
  std::vector<Interval> obj_bounds;                 // one per subdomain
  std::vector<std::vector<Interval>> ineq_bounds;   // [constraint][subdomain]
  std::vector<std::vector<Interval>> eq_bounds;
  Interval hull_obj;
  std::vector<Interval> hull_ineq;
  std::vector<Interval> hull_eq;
  std::vector<std::uint8_t> flags;  // per subdomain, SubdomainFlag bits

  bool any_flagged() const {
    for (std::uint8_t f : flags)
      if (f) return true;
    return false;
  }
  bool all_unreliable() const {
    for (std::uint8_t f : flags)
      if (!(f & (kFlagClipped | kFlagUnbounded))) return false;
    return true;
  }
};

// Natural Interval Extension bounds of all roots on one subdomain.
IntervalBounds bound_nie(const Problem& p, const IntervalBox& box,
                         EvalFlags* flags = nullptr);

// Mean Value Form bounds of all roots on one subdomain:
// f(m) wrapped to one ulp, plus the outward-rounded inner product of
// the interval gradient with the centered box. Falls back to NIE per
// root when the midpoint evaluation or a gradient sweep hits a domain
// problem.
IntervalBounds bound_mvf(const Problem& p, const IntervalBox& box,
                         std::uint8_t* subflags = nullptr);

// Evaluate the chosen bounder on every subdomain of the grid under the
// chosen schedule and reduce to the hull. Results are bitwise
// independent of schedule and worker count.
Refinement refine(const Problem& p, const SubdomainGrid& grid,
                  Bounder bounder, Schedule schedule, int workers);

// Convenience overload: partition X uniformly into plan and refine.
Refinement refine(const Problem& p, const IntervalBox& X,
                  const PartitionPlan& plan, Bounder bounder,
                  Schedule schedule, int workers);

// Least-squares slope of log excess-width against log N over uniform
// N-per-dimension partitions. `exact_width` is the width of the true
// image set, supplied by an external oracle. Ns whose excess width
// falls below the rounding-noise floor are dropped; if fewer than two
// points remain the bound is reported exact.
struct ConvergenceFit {
  double slope = 0.0;
  bool exact = false;
  std::vector<std::int64_t> used_ns;
  std::vector<double> excess_widths;
};

ConvergenceFit estimate_convergence_order(const Problem& p, NodeId root,
                                          const IntervalBox& X, Bounder bounder,
                                          const std::vector<std::int64_t>& ns,
                                          double exact_width);

}  // namespace subdiv

#endif
