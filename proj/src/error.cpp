#include "prony2d/error.hpp"

namespace prony2d {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::ModelOrderExceeded: return "model-order-exceeded";
    case ErrorKind::OffCircleRoot: return "off-circle-root";
    case ErrorKind::Conditioning: return "conditioning";
    case ErrorKind::ModelBoundViolation: return "model-bound-violation";
    case ErrorKind::DegreeBoundViolated: return "degree-bound-violated";
    case ErrorKind::InconsistentRows: return "inconsistent-rows";
    case ErrorKind::MultiplicityMismatch: return "multiplicity-mismatch";
    case ErrorKind::RecoveryInconclusive: return "recovery-inconclusive";
    case ErrorKind::AmbiguousData: return "ambiguous-data";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::SingularDirection: return "singular-direction";
    case ErrorKind::Parity: return "parity";
    case ErrorKind::Reconnection: return "reconnection";
    case ErrorKind::CoefficientStructure: return "coefficient-structure";
    case ErrorKind::Verification: return "verification";
    case ErrorKind::MissingSamplePoints: return "missing-sample-points";
    case ErrorKind::Format: return "format";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(error_name(kind)) + ": " + message), kind_(kind) {}

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += "; ";
    out += item;
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(ErrorKind::Validation, join(violations)), violations_(std::move(violations)) {}

}  // namespace prony2d
