#pragma once

#include <stdexcept>
#include <string>

namespace dtc {

enum class ErrorKind {
  InvalidArgument,  // bad parameters or configuration
  CapacityExceeded,  // dimension or cycle budget over the configured cap
  Numeric,  // solver failure, norm or trace drift
  NoSignal,  // decay fit has nothing usable to fit
  Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace dtc
