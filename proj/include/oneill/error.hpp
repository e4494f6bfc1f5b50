#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace oneill {

enum class ErrorCode {
  OutOfDomain,
  DegenerateMetric,
  DegeneratePlane,
  NonFinite,
  RankDeficient,
  NotRiemannian,
  MissingStructure,
  MissingC,
  ShapeMismatch,
  PreconditionFailed,
  UnknownTheorem,
  NotApplicable,
  AllPointsFailed,
  ParseError,
  UnknownName,
  SchemaViolation,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure in the library is reported through this type; callers
/// branch on code(), the message carries context for humans.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace oneill
