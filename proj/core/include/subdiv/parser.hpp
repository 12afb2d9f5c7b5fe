#ifndef SUBDIV_PARSER_HPP
#define SUBDIV_PARSER_HPP

#include <string>

#include "subdiv/dag.hpp"

namespace subdiv {

// Parses the problem-definition text format:
//   var <name> in [<lo>, <hi>]
//   obj: <expr>
//   con <name>: <expr> <= 0      |  con <name>: <expr> == 0
//   ann <name> = mlp("<weights-file>", <expr>, ...)
// Statements separated by newline or ';'. Weights paths are resolved
// relative to `base_dir` when non-empty. Throws ParseError with
// line/column on failure.
Problem parse_problem(const std::string& text, const std::string& base_dir = "");

// Convenience: read a file and parse it; weights paths resolve relative
// to the file's directory.
Problem parse_problem_file(const std::string& path);

}  // namespace subdiv

#endif
