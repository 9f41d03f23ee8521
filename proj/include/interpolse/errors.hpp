#ifndef INTERPOLSE_ERRORS_HPP
#define INTERPOLSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace interpolse {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct SyntaxError : Error {
  int line;
  SyntaxError(int line_, const std::string& msg)
      : Error("syntax error at line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct UndeclaredVariable : Error {
  std::string name;
  explicit UndeclaredVariable(const std::string& name_, int line = 0)
      : Error("undeclared variable '" + name_ + "'" +
              (line ? " at line " + std::to_string(line) : "")),
        name(name_) {}
};

struct NonLinearExpression : Error {
  int line;
  explicit NonLinearExpression(int line_)
      : Error("non-linear expression at line " + std::to_string(line_)), line(line_) {}
};

struct UnboundVariable : Error {
  std::string name;
  explicit UnboundVariable(const std::string& name_)
      : Error("unbound variable '" + name_ + "' in evaluation"), name(name_) {}
};

struct DomainTooLarge : Error {
  explicit DomainTooLarge(const std::string& msg) : Error("domain too large: " + msg) {}
};

struct PreconditionViolated : Error {
  explicit PreconditionViolated(const std::string& msg)
      : Error("precondition violated: " + msg) {}
};

struct InvalidMatrix : Error {
  explicit InvalidMatrix(const std::string& msg) : Error("invalid matrix: " + msg) {}
};

struct InternalError : Error {
  explicit InternalError(const std::string& msg) : Error("internal error: " + msg) {}
};

// Contract assertions that cost solver calls.  Off by default; enabled by the
// INTERPOLSE_DEBUG_ASSERT=1 environment variable or set_debug_asserts().
bool debug_asserts_enabled();
void set_debug_asserts(bool on);

}  // namespace interpolse

#endif
