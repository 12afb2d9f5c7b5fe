#ifndef SUBDIV_ERRORS_HPP
#define SUBDIV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace subdiv {

// Interval argument lies entirely outside the natural domain of an
// intrinsic (e.g. sqrt of a negative interval).
struct DomainViolation : std::runtime_error {
  explicit DomainViolation(const std::string& what) : std::runtime_error(what) {}
};

// Division by an interval containing zero. The bounding layer maps this
// to a whole-line bound; everywhere else it is an error.
struct DivisionByZero : DomainViolation {
  DivisionByZero() : DomainViolation("division domain violation") {}
};

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(int line_, int col_, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                           std::to_string(col_) + ": " + msg),
        line(line_), column(col_) {}
};

}  // namespace subdiv

#endif
