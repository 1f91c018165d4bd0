#include "factory/core/error.hpp"

namespace factory {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::NegativeExtent: return "NegativeExtent";
    case ErrorCode::NotAMember: return "NotAMember";
    case ErrorCode::DontCareInput: return "DontCareInput";
    case ErrorCode::AbstractStateInEvent: return "AbstractStateInEvent";
    case ErrorCode::MissingAnnotation: return "MissingAnnotation";
    case ErrorCode::UnsupportedAnnotation: return "UnsupportedAnnotation";
    case ErrorCode::UnknownActuator: return "UnknownActuator";
    case ErrorCode::UnknownDevice: return "UnknownDevice";
    case ErrorCode::TimeRegression: return "TimeRegression";
    case ErrorCode::OutOfOrderEvent: return "OutOfOrderEvent";
    case ErrorCode::MalformedJson: return "MalformedJson";
    case ErrorCode::UnknownTypeTag: return "UnknownTypeTag";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::InvalidRule: return "InvalidRule";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ScriptError: return "ScriptError";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(std::move(detail)) {}

}  // namespace factory
