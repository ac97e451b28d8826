#ifndef CAUSALNET_ERRORS_H_
#define CAUSALNET_ERRORS_H_

#include <stdexcept>
#include <string>

namespace causalnet {

// Malformed text input. `line` is 1-based; 0 when the error is not tied to
// a particular line (e.g. a missing header).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                          message
                                    : message),
        line_(line),
        detail_(message) {}

  int line() const { return line_; }
  // The message without the line prefix.
  const std::string& detail() const { return detail_; }

  // Same error, attributed to a file: "<path>:<line>: <detail>".
  ParseError InFile(const std::string& path) const {
    ParseError e(0, path + (line_ > 0 ? ":" + std::to_string(line_) : "") +
                        ": " + detail_);
    e.line_ = line_;
    return e;
  }

 private:
  int line_;
  std::string detail_;
};

// Structural problem with a graph: unknown node, duplicate, cycle, ...
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A probability table that violates its shape or simplex invariants.
class DistributionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A query or argument that violates an operation's preconditions.
class QueryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Two independent computation routes disagreed. Never expected in practice.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace causalnet

#endif  // CAUSALNET_ERRORS_H_
