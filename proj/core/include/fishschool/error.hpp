#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fishschool {

enum class ErrorCode {
  kInvalidParams,
  kDegenerateDistance,
  kAgentInsideObstacle,
  kNoConvergence,
  kGapTooSmall,
  kHorizonTooShort,
  kNotSchoolingAtStart,
  kNoBreakBelowMax,
  kConfigError,
  kIoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status and a machine-readable record.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fishschool
