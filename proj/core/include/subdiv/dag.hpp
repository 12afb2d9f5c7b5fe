#ifndef SUBDIV_DAG_HPP
#define SUBDIV_DAG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "subdiv/box.hpp"
#include "subdiv/ops.hpp"
#include "subdiv/tangent.hpp"

namespace subdiv {

using NodeId = std::uint32_t;

// One node of a factorable-function DAG. Children strictly precede the
// node, so a plain forward pass is a topological evaluation.
struct DagNode {
  enum class Kind : std::uint8_t { Constant, Variable, Unary, Binary };
  Kind kind;
  UnOp un = UnOp::Neg;
  BinOp bin = BinOp::Add;
  NodeId a = 0;      // child / left child
  NodeId b = 0;      // right child
  int ipow = 0;      // exponent for UnOp::PowInt
  double value = 0;  // Kind::Constant payload
  std::uint32_t var = 0;  // Kind::Variable payload

  static DagNode constant(double v) {
    DagNode n;
    n.kind = Kind::Constant;
    n.value = v;
    return n;
  }
  static DagNode variable(std::uint32_t i) {
    DagNode n;
    n.kind = Kind::Variable;
    n.var = i;
    return n;
  }
  static DagNode unary(UnOp op, NodeId child, int ipow = 0) {
    DagNode n;
    n.kind = Kind::Unary;
    n.un = op;
    n.a = child;
    n.ipow = ipow;
    return n;
  }
  static DagNode binary(BinOp op, NodeId l, NodeId r) {
    DagNode n;
    n.kind = Kind::Binary;
    n.bin = op;
    n.a = l;
    n.b = r;
    return n;
  }
};

// A complete NLP instance: min f(x) s.t. g(x) <= 0, h(x) = 0, x in box.
// All roots share one DAG; common subexpressions are merged at build
// time. Immutable after construction.
struct Problem {
  std::uint32_t n = 0;
  IntervalBox box;
  std::vector<DagNode> dag;
  NodeId objective = 0;
  std::vector<NodeId> ineq;
  std::vector<NodeId> eq;
  std::vector<std::string> names;  // variable names, index order

  std::size_t num_roots() const { return 1 + ineq.size() + eq.size(); }
};

// Hash-consing DAG builder; syntactically identical subtrees share one
// node.
class DagBuilder {
 public:
  NodeId constant(double v);
  NodeId variable(std::uint32_t i);
  NodeId unary(UnOp op, NodeId child, int ipow = 0);
  NodeId binary(BinOp op, NodeId l, NodeId r);

  const std::vector<DagNode>& nodes() const { return nodes_; }
  std::vector<DagNode> take() { return std::move(nodes_); }

 private:
  NodeId intern(const DagNode& n);
  std::vector<DagNode> nodes_;
  std::vector<std::pair<std::uint64_t, NodeId>> index_;  // hash -> id
};

template <class S>
inline S scalar_const(double c);
template <>
inline double scalar_const<double>(double c) { return c; }
template <>
inline Interval scalar_const<Interval>(double c) { return Interval(c); }
template <>
inline Tangent<double> scalar_const<Tangent<double>>(double c) {
  return {c, 0.0};
}
template <>
inline Tangent<Interval> scalar_const<Tangent<Interval>>(double c) {
  return {Interval(c), Interval(0.0)};
}

// Forward pass over the whole DAG. `seeds` holds one scalar per
// variable; `out` receives one scalar per node. Division by a
// zero-containing interval yields a whole-line value and taints the
// node instead of aborting; taint propagates to dependants. When
// `taint` is null such failures rethrow.
template <class S>
void eval_dag(const std::vector<DagNode>& dag, const std::vector<S>& seeds,
              std::vector<S>& out, EvalFlags* flags,
              std::vector<std::uint8_t>* taint);

// whole-line substitute used when an interval division blows up
inline void whole_line_value(Interval& v) { v = Interval::whole(); }
inline void whole_line_value(Tangent<Interval>& v) {
  v = {Interval::whole(), Interval::whole()};
}
inline void whole_line_value(double&) {}
inline void whole_line_value(Tangent<double>&) {}

// Per-node evaluation kernel, shared verbatim by the whole-DAG pass and
// the staged (node-major) bounding schedule so both produce bitwise
// identical values. `val`/`tnt` fetch an already computed child value
// and its taint bit. Interval-arithmetic failures taint the node: a
// zero-containing divisor yields a whole-line value; a clipped argument
// marks the result unreliable for derivative-based forms.
template <class S, class GetVal, class GetTaint>
inline S compute_node(const DagNode& n, const std::vector<S>& seeds,
                      GetVal&& val, GetTaint&& tnt, EvalFlags* flags,
                      std::uint8_t& taint_out) {
  switch (n.kind) {
    case DagNode::Kind::Constant:
      taint_out = 0;
      return scalar_const<S>(n.value);
    case DagNode::Kind::Variable:
      taint_out = 0;
      return seeds[n.var];
    case DagNode::Kind::Unary: {
      EvalFlags local;
      S r = ar_unary(n.un, n.ipow, val(n.a), &local);
      if (flags) {
        flags->clipped |= local.clipped;
        flags->unbounded |= local.unbounded;
      }
      taint_out = tnt(n.a) | (local.clipped ? 1 : 0);
      return r;
    }
    case DagNode::Kind::Binary: {
      taint_out = tnt(n.a) | tnt(n.b);
      if constexpr (std::is_same_v<S, Interval> ||
                    std::is_same_v<S, Tangent<Interval>>) {
        try {
          return ar_binary(n.bin, val(n.a), val(n.b));
        } catch (const DivisionByZero&) {
          S r{};
          whole_line_value(r);
          taint_out = 1;
          if (flags) flags->unbounded = true;
          return r;
        }
      } else {
        return ar_binary(n.bin, val(n.a), val(n.b));
      }
    }
  }
  taint_out = 0;
  return S{};
}

template <class S>
void eval_dag(const std::vector<DagNode>& dag, const std::vector<S>& seeds,
              std::vector<S>& out, EvalFlags* flags,
              std::vector<std::uint8_t>* taint) {
  out.resize(dag.size());
  std::vector<std::uint8_t> local_taint;
  std::vector<std::uint8_t>& t = taint ? *taint : local_taint;
  t.assign(dag.size(), 0);
  for (std::size_t i = 0; i < dag.size(); ++i) {
    out[i] = compute_node(
        dag[i], seeds, [&](NodeId id) -> const S& { return out[id]; },
        [&](NodeId id) { return t[id]; }, flags, t[i]);
  }
}

// exact composition of intrinsics in round-to-nearest arithmetic
double eval_real(const Problem& p, NodeId root, const std::vector<double>& x);
void eval_real_all(const Problem& p, const std::vector<double>& x,
                   double& obj, std::vector<double>& ineq,
                   std::vector<double>& eq);

// Natural Interval Extension: one topological pass with interval
// operands.
Interval eval_interval(const Problem& p, NodeId root, const IntervalBox& X,
                       EvalFlags* flags = nullptr);

struct IntervalBounds {
  Interval obj;
  std::vector<Interval> ineq;
  std::vector<Interval> eq;
};

// All roots in one shared pass (shared subexpressions evaluated once).
IntervalBounds eval_interval_all(const Problem& p, const IntervalBox& X,
                                 EvalFlags* flags = nullptr);

// Interval gradient of one root: n single-seed forward sweeps in
// interval-tangent arithmetic. Component i encloses d f / d x_i over X.
using IntervalGradient = std::vector<Interval>;
IntervalGradient interval_gradient(const Problem& p, NodeId root,
                                   const IntervalBox& X,
                                   EvalFlags* flags = nullptr);

// Real forward-mode gradient at a point.
std::vector<double> real_gradient(const Problem& p, NodeId root,
                                  const std::vector<double>& x);

std::string pretty_print(const Problem& p);

}  // namespace subdiv

#endif
