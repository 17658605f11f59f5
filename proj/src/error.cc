#include "sentplan/error.h"

namespace sentplan {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kMalformedToken: return "MalformedToken";
    case ErrorCode::kUnknownAttribute: return "UnknownAttribute";
    case ErrorCode::kDuplicateAttribute: return "DuplicateAttribute";
    case ErrorCode::kMissingName: return "MissingName";
    case ErrorCode::kMissingSupervisionToken: return "MissingSupervisionToken";
    case ErrorCode::kUnknownValue: return "UnknownValue";
    case ErrorCode::kPeriodOutOfRange: return "PeriodOutOfRange";
    case ErrorCode::kMissingTemplate: return "MissingTemplate";
    case ErrorCode::kMissingAdjective: return "MissingAdjective";
    case ErrorCode::kInfeasibleCell: return "InfeasibleCell";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kSourceTooSmall: return "SourceTooSmall";
    case ErrorCode::kEmptyMr: return "EmptyMR";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kGateViolation: return "GateViolation";
  }
  return "Unknown";
}

}  // namespace sentplan
