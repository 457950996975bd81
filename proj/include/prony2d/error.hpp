#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace prony2d {

enum class ErrorKind {
  InvalidParameter,
  ModelOrderExceeded,
  OffCircleRoot,
  Conditioning,
  ModelBoundViolation,
  DegreeBoundViolated,
  InconsistentRows,
  MultiplicityMismatch,
  RecoveryInconclusive,
  AmbiguousData,
  Validation,
  SingularDirection,
  Parity,
  Reconnection,
  CoefficientStructure,
  Verification,
  MissingSamplePoints,
  Format,
};

/// Stable kebab-case name, used in CLI summaries and reports.
std::string_view error_name(ErrorKind kind);

/// Every domain failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

/// Polygon validation failure carrying one entry per violated invariant.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

}  // namespace prony2d
