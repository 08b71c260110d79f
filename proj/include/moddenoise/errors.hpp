#pragma once

#include <stdexcept>
#include <string>

namespace moddenoise {

/// Broad category of a failure. The CLI maps each kind onto a fixed exit code.
enum class ErrorKind {
  validation,    // malformed input: bad sizes, self-loops, non-finite values
  connectivity,  // graph is not connected
  parameter,     // missing or out-of-domain parameter
  range,         // value outside an admissible interval
  domain,        // evaluation would divide by zero or similar
  degeneracy,    // TRS hard case: z orthogonal to the Laplacian null space
  numerical,     // eigensolver or root finder failed
  unsupported,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace moddenoise
