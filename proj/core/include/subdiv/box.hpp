#ifndef SUBDIV_BOX_HPP
#define SUBDIV_BOX_HPP

#include <algorithm>
#include <vector>

#include "subdiv/interval.hpp"

namespace subdiv {

// An n-dimensional interval box (n >= 1).
struct IntervalBox {
  std::vector<Interval> dims;

  IntervalBox() = default;
  explicit IntervalBox(std::vector<Interval> dims_) : dims(std::move(dims_)) {}

  std::size_t size() const { return dims.size(); }
  const Interval& operator[](std::size_t i) const { return dims[i]; }
  Interval& operator[](std::size_t i) { return dims[i]; }

  bool contains(const std::vector<double>& x) const {
    if (x.size() != dims.size()) return false;
    for (std::size_t i = 0; i < dims.size(); ++i)
      if (!dims[i].contains(x[i])) return false;
    return true;
  }

  bool contains(const IntervalBox& other) const {
    if (other.size() != size()) return false;
    for (std::size_t i = 0; i < dims.size(); ++i)
      if (!dims[i].contains(other.dims[i])) return false;
    return true;
  }

  bool operator==(const IntervalBox&) const = default;
};

// max over component widths
inline double width(const IntervalBox& box) {
  double w = 0.0;
  for (const Interval& d : box.dims) w = std::max(w, width(d));
  return w;
}

// index of the widest dimension, ties broken toward the lowest index
inline std::size_t widest_dim(const IntervalBox& box) {
  std::size_t best = 0;
  double w = width(box.dims[0]);
  for (std::size_t i = 1; i < box.dims.size(); ++i) {
    double wi = width(box.dims[i]);
    if (wi > w) {
      w = wi;
      best = i;
    }
  }
  return best;
}

inline std::vector<double> midpoint(const IntervalBox& box) {
  std::vector<double> m(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) m[i] = midpoint(box.dims[i]);
  return m;
}

}  // namespace subdiv

#endif
