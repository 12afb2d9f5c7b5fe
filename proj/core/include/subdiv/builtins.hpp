#ifndef SUBDIV_BUILTINS_HPP
#define SUBDIV_BUILTINS_HPP

#include <string>
#include <vector>

#include "subdiv/dag.hpp"

namespace subdiv {

// Built-in benchmark problems. Names: peaks, peaks-ann, peaks-ann-err,
// alpine2..alpine6, alpine-ann2..alpine-ann6, alpine-ann-err2..6,
// stybtang<d>, kinetic-ode (stub that errors). ANN variants need a
// weights file.
Problem builtin_problem(const std::string& name,
                        const std::string& weights_path = "");

std::vector<std::string> builtin_names();

// Problem-source text of a builtin (ANN variants reference the weights
// path inline).
std::string builtin_source(const std::string& name,
                           const std::string& weights_path = "");

}  // namespace subdiv

#endif
