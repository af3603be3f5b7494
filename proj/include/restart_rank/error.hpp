#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace restart_rank {

enum class ErrorCode {
  // graph_core
  NegativeWeight,
  EmptyGraph,
  SingleNodeDangling,
  DimensionMismatch,
  // restart_models
  AlphaOutOfRange,
  BadDistribution,
  StabilityViolation,
  NonpositiveJumpWeight,
  // solvers
  SolverPreconditionAlphaOne,
  NoConvergence,
  DenseOnly,
  NormalizationFailure,
  OracleSizeExceeded,
  // identities
  NotUndirected,
  AlphaBoundary,
  NonUniqueStationary,
  // montecarlo
  NoRestartsObserved,
  // io
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type; `code()` lets callers
// (the CLI in particular) map failures onto stable exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace restart_rank
