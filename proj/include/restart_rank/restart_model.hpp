#pragma once

#include <string>
#include <variant>
#include <vector>

#include "restart_rank/graph.hpp"

namespace restart_rank {

struct CustomKind {};
struct ConstantAlphaKind {
  double alpha = 0.0;
};
// alpha_i = 1 - a * d_i^sigma
struct DegreePowerKind {
  double a = 0.0;
  double sigma = 0.0;
};
// alpha_i = d_i / (d_i + a_i), v_i = a_i / sum_k a_k
struct RandomWalkJumpsKind {
  std::vector<double> a;
};

using ModelKind =
    std::variant<CustomKind, ConstantAlphaKind, DegreePowerKind, RandomWalkJumpsKind>;

std::string kind_name(const ModelKind& kind);

// Node-dependent restart specification: the walker continues from node i
// with probability alpha_i and otherwise restarts from a draw of v.
//
// Construction checks 0 <= alpha_i <= 1 and that v is a probability vector
// within 1e-12. alpha_i == 1 is representable; the exact solvers reject it.
class RestartModel {
 public:
  RestartModel(Vector alpha, Vector v, ModelKind kind = CustomKind{});

  Index size() const { return alpha_.size(); }
  const Vector& alpha() const { return alpha_; }
  const Vector& restart_distribution() const { return v_; }
  const ModelKind& kind() const { return kind_; }
  double max_alpha() const { return alpha_.maxCoeff(); }
  double min_alpha() const { return alpha_.minCoeff(); }

 private:
  Vector alpha_;
  Vector v_;
  ModelKind kind_;
};

Vector uniform_distribution(Index n);
// e_i
Vector point_distribution(Index n, Index i);
// Throws BadDistribution unless `v` has length n, is nonnegative and sums to
// 1 within 1e-12.
void validate_distribution(const Vector& v, Index n);

RestartModel custom_model(const Graph& g, Vector alpha, Vector v);
RestartModel constant_model(const Graph& g, double alpha, Vector v);
// Requires a > 0 and a * max_i d_i^sigma < 1 (StabilityViolation otherwise).
// Degrees are the repaired out-weights.
RestartModel degree_power_model(const Graph& g, double a, double sigma, Vector v);
RestartModel rwj_model(const Graph& g, std::vector<double> a);
RestartModel rwj_model(const Graph& g, double a);

// Rebuilds the model from its kind parameters (CustomKind returns a copy).
RestartModel regenerate(const Graph& g, const RestartModel& m);

// Builds P~ for the uniform-jump model on an unweighted undirected graph and
// returns the largest entrywise deviation from the closed-form jump-walk
// probabilities (a + n) / (n (d_i + a)) on arcs and a / (n (d_i + a)) off arcs.
double rwj_transition_check(const Graph& g, double a);

}  // namespace restart_rank
