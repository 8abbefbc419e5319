#include "locmst/error.hpp"

namespace locmst {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoAdmissibleA: return "NoAdmissibleA";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::DegenerateEdge: return "DegenerateEdge";
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::InvalidEps: return "InvalidEps";
    case ErrorCode::SpecMissingProperty: return "SpecMissingProperty";
    case ErrorCode::EmptyPointSet: return "EmptyPointSet";
    case ErrorCode::GeometryInfeasible: return "GeometryInfeasible";
    case ErrorCode::EquivalenceViolation: return "EquivalenceViolation";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

}  // namespace locmst
