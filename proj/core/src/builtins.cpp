#include "subdiv/builtins.hpp"

#include <sstream>
#include <stdexcept>

#include "subdiv/parser.hpp"

namespace subdiv {

namespace {

const char* kPeaksExpr =
    "3*(1-x1)^2*exp(-x1^2-(x2+1)^2) - 10*(x1/5 - x1^3 - x2^5)*exp(-x1^2-x2^2) "
    "- exp(-(x1+1)^2-x2^2)/3";

std::string peaks_source() {
  std::ostringstream os;
  os << "var x1 in [-3, 3]\nvar x2 in [-3, 3]\nobj: " << kPeaksExpr << "\n";
  return os.str();
}

std::string peaks_ann_source(const std::string& weights, bool err) {
  std::ostringstream os;
  os << "var x1 in [-3, 3]\nvar x2 in [-3, 3]\n";
  os << "ann net = mlp(\"" << weights << "\", x1, x2)\n";
  if (err) {
    os << "obj: net - (" << kPeaksExpr << ")\n";
  } else {
    os << "obj: net\n";
  }
  return os.str();
}

std::string alpine_expr(int d) {
  std::ostringstream os;
  for (int i = 1; i <= d; ++i) {
    if (i > 1) os << " * ";
    os << "sqrt(x" << i << ")*sin(x" << i << ")";
  }
  return os.str();
}

std::string alpine_source(int d) {
  std::ostringstream os;
  for (int i = 1; i <= d; ++i) os << "var x" << i << " in [3, 9]\n";
  // maximization problem; the solver minimizes, so negate
  os << "obj: -(" << alpine_expr(d) << ")\n";
  return os.str();
}

std::string alpine_ann_source(int d, const std::string& weights, bool err) {
  std::ostringstream os;
  for (int i = 1; i <= d; ++i) os << "var x" << i << " in [3, 9]\n";
  os << "ann net = mlp(\"" << weights << "\"";
  for (int i = 1; i <= d; ++i) os << ", x" << i;
  os << ")\n";
  if (err) {
    // surrogate validation: min f(x) - ANN(x)
    os << "obj: (" << alpine_expr(d) << ") - net\n";
  } else {
    // the paper maximizes the surrogate; minimize its negation
    os << "obj: -net\n";
  }
  return os.str();
}

// standard form: 1/2 sum x^4 - 16 x^2 + 5 x on [-5, 5]^d
std::string stybtang_source(int d) {
  std::ostringstream os;
  for (int i = 1; i <= d; ++i) os << "var x" << i << " in [-5, 5]\n";
  os << "obj: 0.5*(";
  for (int i = 1; i <= d; ++i) {
    if (i > 1) os << " + ";
    os << "(x" << i << "^4 - 16*x" << i << "^2 + 5*x" << i << ")";
  }
  os << ")\n";
  return os.str();
}

int trailing_int(const std::string& name, const std::string& prefix) {
  std::string digits = name.substr(prefix.size());
  if (digits.empty()) return -1;
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c))) return -1;
  return std::stoi(digits);
}

void require_weights(const std::string& name, const std::string& weights) {
  if (weights.empty())
    throw std::runtime_error("builtin '" + name +
                             "' requires an ANN weights file");
}

}  // namespace

std::string builtin_source(const std::string& name,
                           const std::string& weights_path) {
  if (name == "peaks") return peaks_source();
  if (name == "peaks-ann") {
    require_weights(name, weights_path);
    return peaks_ann_source(weights_path, false);
  }
  if (name == "peaks-ann-err") {
    require_weights(name, weights_path);
    return peaks_ann_source(weights_path, true);
  }
  if (name == "kinetic-ode") {
    throw std::runtime_error(
        "builtin 'kinetic-ode' is not shipped: the kinetic ODE parameter "
        "estimation problem requires data from Mitsos et al. (2009), "
        "\"McCormick-based relaxations of algorithms\"");
  }
  if (name.rfind("alpine-ann-err", 0) == 0) {
    int d = trailing_int(name, "alpine-ann-err");
    if (d >= 2 && d <= 6) {
      require_weights(name, weights_path);
      return alpine_ann_source(d, weights_path, true);
    }
  } else if (name.rfind("alpine-ann", 0) == 0) {
    int d = trailing_int(name, "alpine-ann");
    if (d >= 2 && d <= 6) {
      require_weights(name, weights_path);
      return alpine_ann_source(d, weights_path, false);
    }
  } else if (name.rfind("alpine", 0) == 0) {
    int d = trailing_int(name, "alpine");
    if (d >= 2 && d <= 6) return alpine_source(d);
  } else if (name.rfind("stybtang", 0) == 0) {
    int d = trailing_int(name, "stybtang");
    if (d >= 1 && d <= 10) return stybtang_source(d);
  }
  throw std::runtime_error("unknown builtin problem '" + name + "'");
}

Problem builtin_problem(const std::string& name,
                        const std::string& weights_path) {
  return parse_problem(builtin_source(name, weights_path));
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> names = {"peaks", "peaks-ann", "peaks-ann-err"};
  for (int d = 2; d <= 6; ++d) names.push_back("alpine" + std::to_string(d));
  for (int d = 2; d <= 6; ++d)
    names.push_back("alpine-ann" + std::to_string(d));
  for (int d = 2; d <= 6; ++d)
    names.push_back("alpine-ann-err" + std::to_string(d));
  for (int d = 1; d <= 5; ++d) names.push_back("stybtang" + std::to_string(d));
  names.push_back("kinetic-ode");
  return names;
}

}  // namespace subdiv
