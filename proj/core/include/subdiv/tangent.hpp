#ifndef SUBDIV_TANGENT_HPP
#define SUBDIV_TANGENT_HPP

#include "subdiv/ops.hpp"

namespace subdiv {

// Forward-mode (tangent) pair: function value and directional
// derivative, generic over the scalar arithmetic. Over Interval scalars
// a sweep yields the natural interval extension of the derivative.
template <class S>
struct Tangent {
  S val;
  S der;
};

template <class S>
Tangent<S> ar_add(const Tangent<S>& a, const Tangent<S>& b) {
  return {ar_add(a.val, b.val), ar_add(a.der, b.der)};
}

template <class S>
Tangent<S> ar_sub(const Tangent<S>& a, const Tangent<S>& b) {
  return {ar_sub(a.val, b.val), ar_sub(a.der, b.der)};
}

template <class S>
Tangent<S> ar_neg(const Tangent<S>& a) {
  return {ar_neg(a.val), ar_neg(a.der)};
}

template <class S>
Tangent<S> ar_mul(const Tangent<S>& a, const Tangent<S>& b) {
  return {ar_mul(a.val, b.val),
          ar_add(ar_mul(a.der, b.val), ar_mul(a.val, b.der))};
}

template <class S>
Tangent<S> ar_div(const Tangent<S>& a, const Tangent<S>& b) {
  S q = ar_div(a.val, b.val);
  // (a' - q b') / b
  S d = ar_div(ar_sub(a.der, ar_mul(q, b.der)), b.val);
  return {q, d};
}

template <class S>
Tangent<S> ar_binary(BinOp op, const Tangent<S>& a, const Tangent<S>& b) {
  switch (op) {
    case BinOp::Add: return ar_add(a, b);
    case BinOp::Sub: return ar_sub(a, b);
    case BinOp::Mul: return ar_mul(a, b);
    case BinOp::Div: return ar_div(a, b);
  }
  return {};
}

// Chain rule for the unary intrinsics; scalar work delegates to the
// underlying arithmetic so domain handling matches plain evaluation.
template <class S>
Tangent<S> ar_unary(UnOp op, int ipow, const Tangent<S>& x, EvalFlags* flags) {
  S one = ar_const(1.0, x.val);
  switch (op) {
    case UnOp::Neg:
      return {ar_neg(x.val), ar_neg(x.der)};
    case UnOp::Sqrt: {
      S v = ar_unary(UnOp::Sqrt, 0, x.val, flags);
      S d = ar_div(x.der, ar_mul(ar_const(2.0, x.val), v));
      return {v, d};
    }
    case UnOp::Exp: {
      S v = ar_unary(UnOp::Exp, 0, x.val, flags);
      return {v, ar_mul(x.der, v)};
    }
    case UnOp::Log: {
      S v = ar_unary(UnOp::Log, 0, x.val, flags);
      return {v, ar_div(x.der, x.val)};
    }
    case UnOp::Sin: {
      S v = ar_unary(UnOp::Sin, 0, x.val, flags);
      S c = ar_unary(UnOp::Cos, 0, x.val, flags);
      return {v, ar_mul(x.der, c)};
    }
    case UnOp::Cos: {
      S v = ar_unary(UnOp::Cos, 0, x.val, flags);
      S s = ar_unary(UnOp::Sin, 0, x.val, flags);
      return {v, ar_neg(ar_mul(x.der, s))};
    }
    case UnOp::Tanh: {
      S v = ar_unary(UnOp::Tanh, 0, x.val, flags);
      S d = ar_sub(one, ar_mul(v, v));
      return {v, ar_mul(x.der, d)};
    }
    case UnOp::PowInt: {
      S v = ar_unary(UnOp::PowInt, ipow, x.val, flags);
      if (ipow == 0) return {v, ar_const(0.0, x.val)};
      S vm1 = ar_unary(UnOp::PowInt, ipow - 1, x.val, flags);
      S d = ar_mul(ar_mul(ar_const(static_cast<double>(ipow), x.val), vm1), x.der);
      return {v, d};
    }
  }
  return {};
}

}  // namespace subdiv

#endif
