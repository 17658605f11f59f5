#ifndef SENTPLAN_ERROR_H_
#define SENTPLAN_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace sentplan {

enum class ErrorCode {
  kEmptyInput,
  kMalformedToken,
  kUnknownAttribute,
  kDuplicateAttribute,
  kMissingName,
  kMissingSupervisionToken,
  kUnknownValue,
  kPeriodOutOfRange,
  kMissingTemplate,
  kMissingAdjective,
  kInfeasibleCell,
  kMalformedRow,
  kSourceTooSmall,
  kEmptyMr,
  kConfigError,
  kIoError,
  kGateViolation,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported with this exception type; the code
// identifies the failure class and the message carries the offending input.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sentplan

#endif  // SENTPLAN_ERROR_H_
