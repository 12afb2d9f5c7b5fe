#ifndef SUBDIV_OPS_HPP
#define SUBDIV_OPS_HPP

#include <cmath>
#include <string>

#include "subdiv/interval.hpp"

namespace subdiv {

enum class UnOp { Neg, Sqrt, Exp, Log, Sin, Cos, Tanh, PowInt };
enum class BinOp { Add, Sub, Mul, Div };

const char* un_op_name(UnOp op);
const char* bin_op_name(BinOp op);

// Scalar arithmetic dispatch. The same evaluator template runs over
// plain doubles, intervals, or tangents of either; each scalar type
// provides these hooks.

inline double ar_const(double c, double /*tag*/) { return c; }
inline Interval ar_const(double c, const Interval& /*tag*/) { return Interval(c); }

inline double ar_add(double a, double b) { return a + b; }
inline double ar_sub(double a, double b) { return a - b; }
inline double ar_mul(double a, double b) { return a * b; }
inline double ar_neg(double a) { return -a; }
inline double ar_div(double a, double b) {
  if (b == 0.0) throw DivisionByZero();
  return a / b;
}

inline Interval ar_add(const Interval& a, const Interval& b) { return iv_add(a, b); }
inline Interval ar_sub(const Interval& a, const Interval& b) { return iv_sub(a, b); }
inline Interval ar_mul(const Interval& a, const Interval& b) { return iv_mul(a, b); }
inline Interval ar_div(const Interval& a, const Interval& b) { return iv_div(a, b); }
inline Interval ar_neg(const Interval& a) { return iv_neg(a); }

double ar_unary(UnOp op, int ipow, double x, EvalFlags* flags);
Interval ar_unary(UnOp op, int ipow, const Interval& x, EvalFlags* flags);

inline double ar_binary(BinOp op, double a, double b) {
  switch (op) {
    case BinOp::Add: return ar_add(a, b);
    case BinOp::Sub: return ar_sub(a, b);
    case BinOp::Mul: return ar_mul(a, b);
    case BinOp::Div: return ar_div(a, b);
  }
  return 0.0;
}

inline Interval ar_binary(BinOp op, const Interval& a, const Interval& b) {
  switch (op) {
    case BinOp::Add: return ar_add(a, b);
    case BinOp::Sub: return ar_sub(a, b);
    case BinOp::Mul: return ar_mul(a, b);
    case BinOp::Div: return ar_div(a, b);
  }
  return Interval();
}

}  // namespace subdiv

#endif
