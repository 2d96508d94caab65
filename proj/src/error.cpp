#include "rmlab/error.hpp"

namespace rmlab {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Config: return "config error";
    case ErrorKind::Precondition: return "precondition error";
    case ErrorKind::Numeric: return "numeric error";
    case ErrorKind::Dimension: return "dimension error";
    case ErrorKind::Contract: return "contract error";
    case ErrorKind::Size: return "size error";
    case ErrorKind::Coverage: return "coverage error";
    case ErrorKind::Parameter: return "parameter error";
    case ErrorKind::Io: return "I/O error";
    case ErrorKind::Version: return "versioning error";
  }
  return "error";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Precondition: return 3;
    case ErrorKind::Numeric: return 4;
    case ErrorKind::Io: return 1;
    default: return 2;
  }
}

}  // namespace rmlab
