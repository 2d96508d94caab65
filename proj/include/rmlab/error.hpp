#pragma once

#include <stdexcept>
#include <string>

namespace rmlab {

enum class ErrorKind {
  Config,        // malformed configuration or unknown names
  Precondition,  // a theorem's moment condition does not hold
  Numeric,       // non-finite input, non-convergence
  Dimension,     // n or k out of range
  Contract,      // caller violated an operation's input contract
  Size,          // enumeration caps exceeded
  Coverage,      // spectral mass outside an evaluation window
  Parameter,     // invalid scalar parameter (sigma <= 0, ...)
  Io,
  Version,       // record schema mismatch
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

/// CLI exit status for an error kind: 2 config, 3 precondition, 4 numeric,
/// 1 for I/O.
int exit_code(ErrorKind kind) noexcept;

}  // namespace rmlab
