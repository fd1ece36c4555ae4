#include "fishschool/error.hpp"

namespace fishschool {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kDegenerateDistance: return "DegenerateDistance";
    case ErrorCode::kAgentInsideObstacle: return "AgentInsideObstacle";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kGapTooSmall: return "GapTooSmall";
    case ErrorCode::kHorizonTooShort: return "HorizonTooShort";
    case ErrorCode::kNotSchoolingAtStart: return "NotSchoolingAtStart";
    case ErrorCode::kNoBreakBelowMax: return "NoBreakBelowMax";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace fishschool
