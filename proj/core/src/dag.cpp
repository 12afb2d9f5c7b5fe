#include "subdiv/dag.hpp"

#include <cstring>
#include <sstream>

namespace subdiv {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t node_hash(const DagNode& n) {
  std::uint64_t h = static_cast<std::uint64_t>(n.kind);
  switch (n.kind) {
    case DagNode::Kind::Constant: {
      std::uint64_t bits;
      std::memcpy(&bits, &n.value, sizeof bits);
      h = mix(h, bits);
      break;
    }
    case DagNode::Kind::Variable:
      h = mix(h, n.var);
      break;
    case DagNode::Kind::Unary:
      h = mix(h, static_cast<std::uint64_t>(n.un));
      h = mix(h, n.a);
      h = mix(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(n.ipow)));
      break;
    case DagNode::Kind::Binary:
      h = mix(h, static_cast<std::uint64_t>(n.bin));
      h = mix(h, n.a);
      h = mix(h, n.b);
      break;
  }
  return h;
}

bool node_equal(const DagNode& x, const DagNode& y) {
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case DagNode::Kind::Constant: {
      std::uint64_t bx, by;
      std::memcpy(&bx, &x.value, sizeof bx);
      std::memcpy(&by, &y.value, sizeof by);
      return bx == by;
    }
    case DagNode::Kind::Variable:
      return x.var == y.var;
    case DagNode::Kind::Unary:
      return x.un == y.un && x.a == y.a && x.ipow == y.ipow;
    case DagNode::Kind::Binary:
      return x.bin == y.bin && x.a == y.a && x.b == y.b;
  }
  return false;
}

}  // namespace

NodeId DagBuilder::intern(const DagNode& n) {
  std::uint64_t h = node_hash(n);
  for (const auto& [hash, id] : index_) {
    if (hash == h && node_equal(nodes_[id], n)) return id;
  }
  NodeId id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(n);
  index_.emplace_back(h, id);
  return id;
}

NodeId DagBuilder::constant(double v) { return intern(DagNode::constant(v)); }
NodeId DagBuilder::variable(std::uint32_t i) {
  return intern(DagNode::variable(i));
}
NodeId DagBuilder::unary(UnOp op, NodeId child, int ipow) {
  return intern(DagNode::unary(op, child, ipow));
}
NodeId DagBuilder::binary(BinOp op, NodeId l, NodeId r) {
  return intern(DagNode::binary(op, l, r));
}

double eval_real(const Problem& p, NodeId root, const std::vector<double>& x) {
  std::vector<double> vals;
  eval_dag(p.dag, x, vals, nullptr, nullptr);
  return vals[root];
}

void eval_real_all(const Problem& p, const std::vector<double>& x,
                   double& obj, std::vector<double>& ineq,
                   std::vector<double>& eq) {
  std::vector<double> vals;
  eval_dag(p.dag, x, vals, nullptr, nullptr);
  obj = vals[p.objective];
  ineq.resize(p.ineq.size());
  for (std::size_t i = 0; i < p.ineq.size(); ++i) ineq[i] = vals[p.ineq[i]];
  eq.resize(p.eq.size());
  for (std::size_t i = 0; i < p.eq.size(); ++i) eq[i] = vals[p.eq[i]];
}

Interval eval_interval(const Problem& p, NodeId root, const IntervalBox& X,
                       EvalFlags* flags) {
  std::vector<Interval> vals;
  eval_dag(p.dag, X.dims, vals, flags, nullptr);
  return vals[root];
}

IntervalBounds eval_interval_all(const Problem& p, const IntervalBox& X,
                                 EvalFlags* flags) {
  std::vector<Interval> vals;
  eval_dag(p.dag, X.dims, vals, flags, nullptr);
  IntervalBounds b;
  b.obj = vals[p.objective];
  b.ineq.reserve(p.ineq.size());
  for (NodeId id : p.ineq) b.ineq.push_back(vals[id]);
  b.eq.reserve(p.eq.size());
  for (NodeId id : p.eq) b.eq.push_back(vals[id]);
  return b;
}

IntervalGradient interval_gradient(const Problem& p, NodeId root,
                                   const IntervalBox& X, EvalFlags* flags) {
  IntervalGradient g(p.n);
  std::vector<Tangent<Interval>> seeds(p.n);
  std::vector<Tangent<Interval>> vals;
  for (std::uint32_t i = 0; i < p.n; ++i) {
    for (std::uint32_t j = 0; j < p.n; ++j)
      seeds[j] = {X.dims[j], Interval(i == j ? 1.0 : 0.0)};
    eval_dag(p.dag, seeds, vals, flags, nullptr);
    g[i] = vals[root].der;
  }
  return g;
}

std::vector<double> real_gradient(const Problem& p, NodeId root,
                                  const std::vector<double>& x) {
  std::vector<double> g(p.n);
  std::vector<Tangent<double>> seeds(p.n);
  std::vector<Tangent<double>> vals;
  for (std::uint32_t i = 0; i < p.n; ++i) {
    for (std::uint32_t j = 0; j < p.n; ++j)
      seeds[j] = {x[j], i == j ? 1.0 : 0.0};
    eval_dag(p.dag, seeds, vals, nullptr, nullptr);
    g[i] = vals[root].der;
  }
  return g;
}

namespace {

void print_expr(const Problem& p, NodeId id, std::ostream& os) {
  const DagNode& n = p.dag[id];
  switch (n.kind) {
    case DagNode::Kind::Constant: {
      std::ostringstream tmp;
      tmp.precision(17);
      tmp << n.value;
      std::string s = tmp.str();
      if (n.value < 0) {
        os << "(" << s << ")";
      } else {
        os << s;
      }
      break;
    }
    case DagNode::Kind::Variable:
      os << p.names[n.var];
      break;
    case DagNode::Kind::Unary:
      if (n.un == UnOp::Neg) {
        os << "(-";
        print_expr(p, n.a, os);
        os << ")";
      } else if (n.un == UnOp::PowInt) {
        os << "(";
        print_expr(p, n.a, os);
        os << "^" << n.ipow << ")";
      } else {
        os << un_op_name(n.un) << "(";
        print_expr(p, n.a, os);
        os << ")";
      }
      break;
    case DagNode::Kind::Binary:
      os << "(";
      print_expr(p, n.a, os);
      os << " " << bin_op_name(n.bin) << " ";
      print_expr(p, n.b, os);
      os << ")";
      break;
  }
}

}  // namespace

std::string pretty_print(const Problem& p) {
  std::ostringstream os;
  os.precision(17);
  for (std::uint32_t i = 0; i < p.n; ++i) {
    os << "var " << p.names[i] << " in [" << p.box.dims[i].lo << ", "
       << p.box.dims[i].hi << "]\n";
  }
  os << "obj: ";
  print_expr(p, p.objective, os);
  os << "\n";
  for (std::size_t i = 0; i < p.ineq.size(); ++i) {
    os << "con g" << i << ": ";
    print_expr(p, p.ineq[i], os);
    os << " <= 0\n";
  }
  for (std::size_t i = 0; i < p.eq.size(); ++i) {
    os << "con h" << i << ": ";
    print_expr(p, p.eq[i], os);
    os << " == 0\n";
  }
  return os.str();
}

}  // namespace subdiv
