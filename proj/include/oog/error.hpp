#pragma once

#include <stdexcept>
#include <string>

namespace oog {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  IoError,
  NotStable,
  SingularResolvent,
  EigenFailure,
  NotPositiveDefinite,
  SingularDcal,
  RegularizationFailed,
  MaxIterationsExceeded,
  StagnationDetected,
  GenerationFailed,
};

[[nodiscard]] const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace oog
