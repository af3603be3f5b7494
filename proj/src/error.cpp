#include "restart_rank/error.hpp"

namespace restart_rank {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::SingleNodeDangling: return "SingleNodeDangling";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::BadDistribution: return "BadDistribution";
    case ErrorCode::StabilityViolation: return "StabilityViolation";
    case ErrorCode::NonpositiveJumpWeight: return "NonpositiveJumpWeight";
    case ErrorCode::SolverPreconditionAlphaOne: return "SolverPreconditionAlphaOne";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DenseOnly: return "DenseOnly";
    case ErrorCode::NormalizationFailure: return "NormalizationFailure";
    case ErrorCode::OracleSizeExceeded: return "OracleSizeExceeded";
    case ErrorCode::NotUndirected: return "NotUndirected";
    case ErrorCode::AlphaBoundary: return "AlphaBoundary";
    case ErrorCode::NonUniqueStationary: return "NonUniqueStationary";
    case ErrorCode::NoRestartsObserved: return "NoRestartsObserved";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace restart_rank
