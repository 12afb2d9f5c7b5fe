#include "subdiv/bounder.hpp"

#include <algorithm>
#include <cmath>

#include "subdiv/parallel.hpp"

namespace subdiv {

namespace {

std::vector<NodeId> all_roots(const Problem& p) {
  std::vector<NodeId> roots;
  roots.reserve(p.num_roots());
  roots.push_back(p.objective);
  roots.insert(roots.end(), p.ineq.begin(), p.ineq.end());
  roots.insert(roots.end(), p.eq.begin(), p.eq.end());
  return roots;
}

// Real forward pass that records domain failures as taint instead of
// aborting, so MVF can fall back per root. Shared by the fused and
// staged schedules (per-value arithmetic must match bitwise).
template <class GetVal, class GetTaint>
double real_node_taint(const DagNode& n, const std::vector<double>& x,
                       GetVal&& val, GetTaint&& tnt, std::uint8_t& taint_out) {
  try {
    return compute_node<double>(n, x, val, tnt, nullptr, taint_out);
  } catch (const DomainViolation&) {
    taint_out = 1;
    return std::numeric_limits<double>::quiet_NaN();
  }
}

void real_eval_taint(const std::vector<DagNode>& dag,
                     const std::vector<double>& x, std::vector<double>& out,
                     std::vector<std::uint8_t>& taint) {
  out.resize(dag.size());
  taint.assign(dag.size(), 0);
  for (std::size_t i = 0; i < dag.size(); ++i) {
    out[i] = real_node_taint(
        dag[i], x, [&](NodeId id) -> const double& { return out[id]; },
        [&](NodeId id) { return taint[id]; }, taint[i]);
  }
}

// f(m) wrapped to one ulp plus <grad, X - m>, folded in dimension order.
Interval mvf_combine(double fm, const std::vector<Interval>& grad,
                     const IntervalBox& box, const std::vector<double>& m) {
  Interval acc = wrap_ulp(fm);
  for (std::size_t i = 0; i < box.size(); ++i) {
    Interval centered = iv_sub(box.dims[i], Interval(m[i]));
    acc = iv_add(acc, iv_mul(grad[i], centered));
  }
  return acc;
}

struct SubdomainResult {
  std::vector<Interval> bounds;  // per root
  std::uint8_t flags = 0;
};

void flags_from(const EvalFlags& ef, std::uint8_t& fl) {
  if (ef.clipped) fl |= kFlagClipped;
  if (ef.unbounded) fl |= kFlagUnbounded;
}

// NIE on one subdomain; a total domain violation yields whole-line
// bounds flagged unreliable rather than an error, keeping bounding
// total inside the engine.
SubdomainResult nie_subdomain(const Problem& p,
                              const std::vector<NodeId>& roots,
                              const IntervalBox& box) {
  SubdomainResult r;
  r.bounds.resize(roots.size());
  EvalFlags ef;
  try {
    std::vector<Interval> vals;
    eval_dag(p.dag, box.dims, vals, &ef, nullptr);
    for (std::size_t i = 0; i < roots.size(); ++i) r.bounds[i] = vals[roots[i]];
    flags_from(ef, r.flags);
  } catch (const DomainViolation&) {
    for (auto& b : r.bounds) b = Interval::whole();
    r.flags |= kFlagClipped | kFlagUnbounded;
  }
  return r;
}

SubdomainResult mvf_subdomain(const Problem& p,
                              const std::vector<NodeId>& roots,
                              const IntervalBox& box) {
  SubdomainResult r;
  r.bounds.resize(roots.size());

  std::vector<double> m;
  bool midpoint_ok = true;
  try {
    m = midpoint(box);
  } catch (const DomainViolation&) {
    midpoint_ok = false;
  }
  if (!midpoint_ok) {
    SubdomainResult nie = nie_subdomain(p, roots, box);
    nie.flags |= kFlagFallback;
    return nie;
  }

  // midpoint values per root, failures tainted
  std::vector<double> rvals;
  std::vector<std::uint8_t> rtaint;
  real_eval_taint(p.dag, m, rvals, rtaint);

  // n interval-tangent sweeps shared by all roots
  std::vector<std::vector<Interval>> grads(roots.size(),
                                           std::vector<Interval>(p.n));
  std::vector<std::uint8_t> root_taint(roots.size(), 0);
  for (std::size_t i = 0; i < roots.size(); ++i)
    root_taint[i] = rtaint[roots[i]];

  EvalFlags ef;
  std::vector<Tangent<Interval>> seeds(p.n);
  std::vector<Tangent<Interval>> tvals;
  std::vector<std::uint8_t> ttaint;
  for (std::uint32_t s = 0; s < p.n; ++s) {
    for (std::uint32_t j = 0; j < p.n; ++j)
      seeds[j] = {box.dims[j], Interval(s == j ? 1.0 : 0.0)};
    try {
      eval_dag(p.dag, seeds, tvals, &ef, &ttaint);
      for (std::size_t i = 0; i < roots.size(); ++i) {
        grads[i][s] = tvals[roots[i]].der;
        root_taint[i] |= ttaint[roots[i]];
      }
    } catch (const DomainViolation&) {
      for (std::size_t i = 0; i < roots.size(); ++i) root_taint[i] = 1;
      ef.clipped = true;
    }
  }
  flags_from(ef, r.flags);

  bool any_taint = false;
  for (std::uint8_t t : root_taint) any_taint |= (t != 0);
  SubdomainResult nie;
  if (any_taint) {
    nie = nie_subdomain(p, roots, box);
    r.flags |= nie.flags | kFlagFallback;
  }

  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (root_taint[i]) {
      r.bounds[i] = nie.bounds[i];
    } else {
      r.bounds[i] = mvf_combine(rvals[roots[i]], grads[i], box, m);
    }
  }
  return r;
}

void reduce_hulls(const Problem& p, Refinement& ref) {
  std::int64_t K = static_cast<std::int64_t>(ref.obj_bounds.size());
  // min/max fold; order-independent on NaN-free endpoints
  ref.hull_obj = ref.obj_bounds[0];
  for (std::int64_t k = 1; k < K; ++k)
    ref.hull_obj = hull(ref.hull_obj, ref.obj_bounds[k]);
  ref.hull_ineq.resize(p.ineq.size());
  for (std::size_t c = 0; c < p.ineq.size(); ++c) {
    ref.hull_ineq[c] = ref.ineq_bounds[c][0];
    for (std::int64_t k = 1; k < K; ++k)
      ref.hull_ineq[c] = hull(ref.hull_ineq[c], ref.ineq_bounds[c][k]);
  }
  ref.hull_eq.resize(p.eq.size());
  for (std::size_t c = 0; c < p.eq.size(); ++c) {
    ref.hull_eq[c] = ref.eq_bounds[c][0];
    for (std::int64_t k = 1; k < K; ++k)
      ref.hull_eq[c] = hull(ref.hull_eq[c], ref.eq_bounds[c][k]);
  }
}

void store_result(const Problem& p, Refinement& ref, std::int64_t k,
                  const SubdomainResult& r) {
  ref.obj_bounds[k] = r.bounds[0];
  for (std::size_t c = 0; c < p.ineq.size(); ++c)
    ref.ineq_bounds[c][k] = r.bounds[1 + c];
  for (std::size_t c = 0; c < p.eq.size(); ++c)
    ref.eq_bounds[c][k] = r.bounds[1 + p.ineq.size() + c];
  ref.flags[k] = r.flags;
}

Refinement refine_fused(const Problem& p, const SubdomainGrid& grid,
                        Bounder bounder, int workers) {
  std::int64_t K = grid.total();
  std::vector<NodeId> roots = all_roots(p);
  Refinement ref;
  ref.obj_bounds.resize(K);
  ref.ineq_bounds.assign(p.ineq.size(), std::vector<Interval>(K));
  ref.eq_bounds.assign(p.eq.size(), std::vector<Interval>(K));
  ref.flags.assign(K, 0);

  parallel_for(K, workers, [&](std::int64_t k) {
    IntervalBox box = grid.subdomain(k);
    SubdomainResult r = bounder == Bounder::Nie ? nie_subdomain(p, roots, box)
                                                : mvf_subdomain(p, roots, box);
    store_result(p, ref, k, r);
  });
  reduce_hulls(p, ref);
  return ref;
}

// Node-major evaluation: each DAG node is processed for all subdomains
// before the next node, the host-side analogue of per-intrinsic
// kernels. Scalar operation order per subdomain matches the fused
// schedule, so results are bitwise identical.
struct StagedNie {
  std::vector<Interval> vals;        // node-major, node*K + k
  std::vector<std::uint8_t> taint;   // unused downstream, kept for parity
  std::vector<EvalFlags> ef;         // per subdomain

  void run(const Problem& p, const std::vector<IntervalBox>& boxes,
           int workers) {
    std::int64_t K = static_cast<std::int64_t>(boxes.size());
    std::size_t nn = p.dag.size();
    vals.resize(nn * K);
    taint.assign(nn * K, 0);
    ef.assign(K, EvalFlags{});
    std::vector<std::uint8_t> failed(K, 0);
    for (std::size_t i = 0; i < nn; ++i) {
      parallel_for(K, workers, [&](std::int64_t k) {
        if (failed[k]) return;
        try {
          vals[i * K + k] = compute_node<Interval>(
              p.dag[i], boxes[k].dims,
              [&](NodeId id) -> const Interval& { return vals[id * K + k]; },
              [&](NodeId id) { return taint[id * K + k]; }, &ef[k],
              taint[i * K + k]);
        } catch (const DomainViolation&) {
          failed[k] = 1;
        }
      });
    }
    failed_subdomains = std::move(failed);
  }

  std::vector<std::uint8_t> failed_subdomains;
};

Refinement refine_staged(const Problem& p, const SubdomainGrid& grid,
                         Bounder bounder, int workers) {
  std::int64_t K = grid.total();
  std::size_t nn = p.dag.size();
  std::vector<NodeId> roots = all_roots(p);
  std::size_t nr = roots.size();

  Refinement ref;
  ref.obj_bounds.resize(K);
  ref.ineq_bounds.assign(p.ineq.size(), std::vector<Interval>(K));
  ref.eq_bounds.assign(p.eq.size(), std::vector<Interval>(K));
  ref.flags.assign(K, 0);

  std::vector<IntervalBox> boxes(K);
  parallel_for(K, workers, [&](std::int64_t k) { boxes[k] = grid.subdomain(k); });

  auto finish_nie = [&](const StagedNie& st) {
    for (std::int64_t k = 0; k < K; ++k) {
      SubdomainResult r;
      r.bounds.resize(nr);
      if (st.failed_subdomains[k]) {
        for (auto& b : r.bounds) b = Interval::whole();
        r.flags = kFlagClipped | kFlagUnbounded;
      } else {
        for (std::size_t i = 0; i < nr; ++i) r.bounds[i] = st.vals[roots[i] * K + k];
        flags_from(st.ef[k], r.flags);
      }
      store_result(p, ref, k, r);
    }
  };

  if (bounder == Bounder::Nie) {
    StagedNie st;
    st.run(p, boxes, workers);
    finish_nie(st);
    reduce_hulls(p, ref);
    return ref;
  }

  // ---- staged MVF ----
  std::vector<std::vector<double>> mids(K);
  std::vector<std::uint8_t> mid_fail(K, 0);
  parallel_for(K, workers, [&](std::int64_t k) {
    try {
      mids[k] = midpoint(boxes[k]);
    } catch (const DomainViolation&) {
      mid_fail[k] = 1;
      mids[k].assign(p.n, 0.0);
    }
  });

  // midpoint stage (real arithmetic, taint on failure)
  std::vector<double> rvals(nn * K);
  std::vector<std::uint8_t> rtaint(nn * K, 0);
  for (std::size_t i = 0; i < nn; ++i) {
    parallel_for(K, workers, [&](std::int64_t k) {
      rvals[i * K + k] = real_node_taint(
          p.dag[i], mids[k],
          [&](NodeId id) -> const double& { return rvals[id * K + k]; },
          [&](NodeId id) { return rtaint[id * K + k]; }, rtaint[i * K + k]);
    });
  }

  // gradient stages: one interval-tangent sweep per variable
  std::vector<std::vector<Interval>> grads(nr,
                                           std::vector<Interval>(p.n * K));
  std::vector<std::vector<std::uint8_t>> root_taint(
      nr, std::vector<std::uint8_t>(K, 0));
  for (std::size_t i = 0; i < nr; ++i)
    for (std::int64_t k = 0; k < K; ++k)
      root_taint[i][k] = rtaint[roots[i] * K + k];

  std::vector<EvalFlags> efk(K, EvalFlags{});
  std::vector<Tangent<Interval>> tvals(nn * K);
  std::vector<std::uint8_t> ttaint(nn * K, 0);
  std::vector<std::vector<Tangent<Interval>>> seeds(K);
  std::vector<std::uint8_t> sweep_fail(K, 0);
  for (std::uint32_t s = 0; s < p.n; ++s) {
    parallel_for(K, workers, [&](std::int64_t k) {
      sweep_fail[k] = 0;
      seeds[k].resize(p.n);
      for (std::uint32_t j = 0; j < p.n; ++j)
        seeds[k][j] = {boxes[k].dims[j], Interval(s == j ? 1.0 : 0.0)};
    });
    for (std::size_t i = 0; i < nn; ++i) {
      parallel_for(K, workers, [&](std::int64_t k) {
        if (sweep_fail[k]) return;
        try {
          tvals[i * K + k] = compute_node<Tangent<Interval>>(
              p.dag[i], seeds[k],
              [&](NodeId id) -> const Tangent<Interval>& {
                return tvals[id * K + k];
              },
              [&](NodeId id) { return ttaint[id * K + k]; }, &efk[k],
              ttaint[i * K + k]);
        } catch (const DomainViolation&) {
          sweep_fail[k] = 1;
        }
      });
    }
    parallel_for(K, workers, [&](std::int64_t k) {
      for (std::size_t i = 0; i < nr; ++i) {
        if (sweep_fail[k]) {
          root_taint[i][k] = 1;
          efk[k].clipped = true;
        } else {
          grads[i][s * K + k] = tvals[roots[i] * K + k].der;
          root_taint[i][k] |= ttaint[roots[i] * K + k];
        }
      }
    });
  }

  // NIE fallback values for tainted (root, subdomain) pairs
  bool any_taint = false;
  for (std::int64_t k = 0; k < K; ++k) {
    if (mid_fail[k]) any_taint = true;
    for (std::size_t i = 0; i < nr; ++i)
      if (root_taint[i][k]) any_taint = true;
  }
  StagedNie nie;
  if (any_taint) nie.run(p, boxes, workers);

  parallel_for(K, workers, [&](std::int64_t k) {
    SubdomainResult r;
    r.bounds.resize(nr);
    auto nie_bound = [&](std::size_t i) {
      return nie.failed_subdomains[k] ? Interval::whole()
                                      : nie.vals[roots[i] * K + k];
    };
    if (mid_fail[k]) {
      for (std::size_t i = 0; i < nr; ++i) r.bounds[i] = nie_bound(i);
      if (nie.failed_subdomains[k]) {
        r.flags = kFlagClipped | kFlagUnbounded;
      } else {
        flags_from(nie.ef[k], r.flags);
      }
      r.flags |= kFlagFallback;
      store_result(p, ref, k, r);
      return;
    }
    flags_from(efk[k], r.flags);
    std::vector<Interval> g(p.n);
    bool fell_back = false;
    for (std::size_t i = 0; i < nr; ++i) {
      if (root_taint[i][k]) {
        r.bounds[i] = nie_bound(i);
        if (nie.failed_subdomains[k]) {
          r.flags |= kFlagClipped | kFlagUnbounded;
        } else {
          flags_from(nie.ef[k], r.flags);
        }
        fell_back = true;
      } else {
        for (std::uint32_t s = 0; s < p.n; ++s) g[s] = grads[i][s * K + k];
        r.bounds[i] = mvf_combine(rvals[roots[i] * K + k], g, boxes[k], mids[k]);
      }
    }
    if (fell_back) r.flags |= kFlagFallback;
    store_result(p, ref, k, r);
  });

  reduce_hulls(p, ref);
  return ref;
}

}  // namespace

IntervalBounds bound_nie(const Problem& p, const IntervalBox& box,
                         EvalFlags* flags) {
  return eval_interval_all(p, box, flags);
}

IntervalBounds bound_mvf(const Problem& p, const IntervalBox& box,
                         std::uint8_t* subflags) {
  std::vector<NodeId> roots = all_roots(p);
  SubdomainResult r = mvf_subdomain(p, roots, box);
  if (subflags) *subflags = r.flags;
  IntervalBounds b;
  b.obj = r.bounds[0];
  b.ineq.assign(r.bounds.begin() + 1, r.bounds.begin() + 1 + p.ineq.size());
  b.eq.assign(r.bounds.begin() + 1 + p.ineq.size(), r.bounds.end());
  return b;
}

Refinement refine(const Problem& p, const SubdomainGrid& grid, Bounder bounder,
                  Schedule schedule, int workers) {
  if (schedule == Schedule::Fused) return refine_fused(p, grid, bounder, workers);
  return refine_staged(p, grid, bounder, workers);
}

Refinement refine(const Problem& p, const IntervalBox& X,
                  const PartitionPlan& plan, Bounder bounder, Schedule schedule,
                  int workers) {
  return refine(p, make_grid(X, plan), bounder, schedule, workers);
}

ConvergenceFit estimate_convergence_order(const Problem& p, NodeId root,
                                          const IntervalBox& X, Bounder bounder,
                                          const std::vector<std::int64_t>& ns,
                                          double exact_width) {
  // view of the problem with the requested root as objective
  Problem view = p;
  view.objective = root;
  view.ineq.clear();
  view.eq.clear();

  ConvergenceFit fit;
  for (std::int64_t n : ns) {
    PartitionPlan plan;
    plan.counts.assign(X.size(), static_cast<int>(n));
    plan.total = 1;
    for (std::size_t i = 0; i < X.size(); ++i) plan.total *= n;
    Refinement ref =
        refine(view, make_grid(X, plan), bounder, Schedule::Fused, 1);
    double excess = width(ref.hull_obj) - exact_width;
    double scale = std::max({1.0, std::abs(ref.hull_obj.lo),
                             std::abs(ref.hull_obj.hi)});
    double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale;
    if (!(excess > floor)) continue;  // below rounding noise: drop this N
    fit.used_ns.push_back(n);
    fit.excess_widths.push_back(excess);
  }
  if (fit.used_ns.size() < 2) {
    fit.exact = true;
    return fit;
  }
  // least squares on (log N, log wE)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = fit.used_ns.size();
  for (std::size_t i = 0; i < m; ++i) {
    double x = std::log(static_cast<double>(fit.used_ns[i]));
    double y = std::log(fit.excess_widths[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return fit;
}

}  // namespace subdiv
