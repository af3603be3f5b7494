#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "restart_rank/graph.hpp"
#include "restart_rank/restart_model.hpp"

namespace restart_rank {

enum class SolveMode { Auto, Dense, Iterative };

enum class SolveMethod { DenseDirect, FixedPoint, PowerIteration, ClosedForm, MonteCarlo };

std::string_view to_string(SolveMethod method);

struct SolverConfig {
  double tolerance = 1e-12;
  std::int64_t max_iterations = 1'000'000;
  SolveMode mode = SolveMode::Auto;
  // Test hook: location_ppr moves this much mass from the first node to the
  // last one after solving. Zero in normal use.
  double fault_injection = 0.0;

  void validate() const;
};

// A probability vector over nodes together with how it was obtained.
struct ScoreVector {
  Vector values;
  SolveMethod method = SolveMethod::DenseDirect;
  // Relative L1 residual of the underlying linear system, or the last
  // successive-iterate distance for power iteration.
  double residual = 0.0;
  std::int64_t iterations = 0;
};

struct ResolventRow {
  // x = v^T [I - A P]^{-1}, stored as a column vector.
  Vector x;
  SolveMethod method = SolveMethod::DenseDirect;
  // ||x - v - x A P||_1 / ||x||_1
  double residual = 0.0;
  std::int64_t iterations = 0;
};

// Solves rows of [I - A P]^{-1} for one (graph, model) pair. The dense path
// factorizes once, so repeated rows cost O(n^2) each. Throws
// SolverPreconditionAlphaOne when max alpha >= 1.
class Resolvent {
 public:
  Resolvent(const Graph& g, const RestartModel& m, const SolverConfig& cfg = {});

  Index size() const { return alpha_.size(); }
  SolveMethod method() const { return lu_ ? SolveMethod::DenseDirect : SolveMethod::FixedPoint; }
  const Vector& alpha() const { return alpha_; }
  const TransitionMatrix& transition() const { return p_; }

  ResolventRow row(const Vector& v) const;

  // Full inverse; throws DenseOnly above kDenseLimit.
  Matrix matrix() const;

  // ||x - v - x A P||_1
  double residual_l1(const Vector& x, const Vector& v) const;

 private:
  Vector fixed_point(const Vector& v, std::int64_t& iterations) const;

  TransitionMatrix p_;
  Vector alpha_;
  SolverConfig cfg_;
  std::optional<Eigen::PartialPivLU<Matrix>> lu_;
  // Dense path only: arcs and extended-precision degrees for refinement.
  std::vector<Edge> arcs_;
  std::vector<long double> degree_;
};

Vector resolvent_row(const Graph& g, const RestartModel& m, const Vector& v,
                     const SolverConfig& cfg = {});

// pi(v) = v^T[I-AP]^{-1} / (v^T[I-AP]^{-1} 1)
ScoreVector occupation_ppr(const Graph& g, const RestartModel& m, const SolverConfig& cfg = {});
ScoreVector occupation_from_row(const ResolventRow& row);

// Stationary vector of P~ by left power iteration from the uniform vector.
// Stops when successive iterates are closer than cfg.tolerance in L1.
ScoreVector occupation_ppr_power(const Graph& g, const RestartModel& m,
                                 const SolverConfig& cfg = {});

// rho(v) = v^T[I-AP]^{-1}[I-A]
ScoreVector location_ppr(const Graph& g, const RestartModel& m, const SolverConfig& cfg = {});
ScoreVector location_from_row(const ResolventRow& row, const Vector& alpha,
                              const SolverConfig& cfg = {});

// E_from[# steps before restart] = from^T [I-AP]^{-1} 1
double expected_restart_time(const Graph& g, const RestartModel& m, const Vector& from,
                             const SolverConfig& cfg = {});

// Entry (i, j) is the expected number of visits to j before restart when
// starting at i. Dense only.
Matrix expected_visits_matrix(const Graph& g, const RestartModel& m,
                              const SolverConfig& cfg = {});

}  // namespace restart_rank
