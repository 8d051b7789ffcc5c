#include "dtc/error.hpp"

namespace dtc {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::CapacityExceeded: return "capacity-exceeded";
    case ErrorKind::Numeric: return "numeric";
    case ErrorKind::NoSignal: return "no-signal";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace dtc
