#include "oog/error.hpp"

namespace oog {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::NotStable: return "NotStable";
    case ErrorCode::SingularResolvent: return "SingularResolvent";
    case ErrorCode::EigenFailure: return "EigenFailure";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::SingularDcal: return "SingularDcal";
    case ErrorCode::RegularizationFailed: return "RegularizationFailed";
    case ErrorCode::MaxIterationsExceeded: return "MaxIterationsExceeded";
    case ErrorCode::StagnationDetected: return "StagnationDetected";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
  }
  return "Unknown";
}

}  // namespace oog
