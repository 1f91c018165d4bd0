#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace factory {

enum class ErrorCode {
  InvalidArgument,
  DuplicateKey,
  UnboundVariable,
  NegativeExtent,
  NotAMember,
  DontCareInput,
  AbstractStateInEvent,
  MissingAnnotation,
  UnsupportedAnnotation,
  UnknownActuator,
  UnknownDevice,
  TimeRegression,
  OutOfOrderEvent,
  MalformedJson,
  UnknownTypeTag,
  SchemaViolation,
  InvalidRule,
  InvalidConfig,
  ScriptError,
  Io,
};

std::string_view to_string(ErrorCode code);

// All library failures surface as this one exception type; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace factory
