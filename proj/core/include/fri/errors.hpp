#pragma once

#include <stdexcept>
#include <string>

namespace fri {

enum class ErrorCode {
  // fuzzy set construction / geometry
  EmptySet,
  UnorderedAbscissae,
  MembershipOutOfRange,
  NonFiniteValue,
  NotConvex,
  NotCnf,
  AlphaOutOfRange,
  DegenerateArea,
  // rule base / interpolation
  DimensionMismatch,
  NoFlankingRules,
  DegenerateGeometry,
  MethodInapplicable,
  UnknownMethod,
  // parsing
  SyntaxError,
  ParamsyLengthMismatch,
  ParamsyShapeMismatch,
  UnknownShapeCode,
  MissingSection,
  DimensionGap,
  // output
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fri
