#include "subdiv/ops.hpp"

namespace subdiv {

const char* un_op_name(UnOp op) {
  switch (op) {
    case UnOp::Neg: return "neg";
    case UnOp::Sqrt: return "sqrt";
    case UnOp::Exp: return "exp";
    case UnOp::Log: return "log";
    case UnOp::Sin: return "sin";
    case UnOp::Cos: return "cos";
    case UnOp::Tanh: return "tanh";
    case UnOp::PowInt: return "pow";
  }
  return "?";
}

const char* bin_op_name(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
  }
  return "?";
}

double ar_unary(UnOp op, int ipow, double x, EvalFlags* /*flags*/) {
  switch (op) {
    case UnOp::Neg: return -x;
    case UnOp::Sqrt:
      if (x < 0.0) throw DomainViolation("sqrt domain violation");
      return std::sqrt(x);
    case UnOp::Exp: return std::exp(x);
    case UnOp::Log:
      if (x <= 0.0) throw DomainViolation("log domain violation");
      return std::log(x);
    case UnOp::Sin: return std::sin(x);
    case UnOp::Cos: return std::cos(x);
    case UnOp::Tanh: return std::tanh(x);
    case UnOp::PowInt: {
      if (ipow < 0 && x == 0.0) throw DivisionByZero();
      double r = 1.0;
      int k = ipow < 0 ? -ipow : ipow;
      for (int i = 0; i < k; ++i) r *= x;
      return ipow < 0 ? 1.0 / r : r;
    }
  }
  return 0.0;
}

Interval ar_unary(UnOp op, int ipow, const Interval& x, EvalFlags* flags) {
  switch (op) {
    case UnOp::Neg: return iv_neg(x);
    case UnOp::Sqrt: return iv_sqrt(x, flags);
    case UnOp::Exp: return iv_exp(x);
    case UnOp::Log: return iv_log(x, flags);
    case UnOp::Sin: return iv_sin(x);
    case UnOp::Cos: return iv_cos(x);
    case UnOp::Tanh: return iv_tanh(x);
    case UnOp::PowInt: return iv_pow_int(x, ipow);
  }
  return Interval();
}

}  // namespace subdiv
