#include "ellfib/error.hpp"

namespace ellfib {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::SingularCurve: return "SingularCurve";
    case ErrorCode::SingularFiber: return "SingularFiber";
    case ErrorCode::AgmBranchFailure: return "AgmBranchFailure";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::OddStructure: return "OddStructure";
    case ErrorCode::StencilCrossesSingularity: return "StencilCrossesSingularity";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::IdenticallySingular: return "IdenticallySingular";
    case ErrorCode::NotSingular: return "NotSingular";
    case ErrorCode::NonMinimal: return "NonMinimal";
    case ErrorCode::BadNf: return "BadNf";
    case ErrorCode::EulerMismatch: return "EulerMismatch";
    case ErrorCode::LoopTooCloseToSingularity: return "LoopTooCloseToSingularity";
    case ErrorCode::NonIntegerWinding: return "NonIntegerWinding";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace ellfib
