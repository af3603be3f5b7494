#include "restart_rank/restart_model.hpp"

#include <cmath>
#include <numeric>

#include "restart_rank/error.hpp"

namespace restart_rank {

namespace {

constexpr double kDistributionTol = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void check_size(const Graph& g, Index size, const char* what) {
  if (size != g.num_nodes())
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has length " +
                                                  std::to_string(size) + ", graph has " +
                                                  std::to_string(g.num_nodes()) + " nodes");
}

}  // namespace

std::string kind_name(const ModelKind& kind) {
  return std::visit(Overloaded{
                        [](const CustomKind&) { return std::string("custom"); },
                        [](const ConstantAlphaKind&) { return std::string("constant"); },
                        [](const DegreePowerKind&) { return std::string("degree_power"); },
                        [](const RandomWalkJumpsKind&) { return std::string("rwj"); },
                    },
                    kind);
}

RestartModel::RestartModel(Vector alpha, Vector v, ModelKind kind)
    : alpha_(std::move(alpha)), v_(std::move(v)), kind_(std::move(kind)) {
  if (alpha_.size() == 0) throw Error(ErrorCode::DimensionMismatch, "empty restart model");
  for (Index i = 0; i < alpha_.size(); ++i) {
    if (!(alpha_[i] >= 0.0 && alpha_[i] <= 1.0))
      throw Error(ErrorCode::AlphaOutOfRange,
                  "alpha[" + std::to_string(i) + "] = " + std::to_string(alpha_[i]) +
                      " is outside [0, 1]");
  }
  validate_distribution(v_, alpha_.size());
}

Vector uniform_distribution(Index n) {
  return Vector::Constant(n, 1.0 / static_cast<double>(n));
}

Vector point_distribution(Index n, Index i) {
  if (i < 0 || i >= n)
    throw Error(ErrorCode::BadDistribution, "node " + std::to_string(i) + " out of range");
  Vector v = Vector::Zero(n);
  v[i] = 1.0;
  return v;
}

void validate_distribution(const Vector& v, Index n) {
  if (v.size() != n)
    throw Error(ErrorCode::BadDistribution, "distribution has length " +
                                                std::to_string(v.size()) + ", expected " +
                                                std::to_string(n));
  for (Index i = 0; i < n; ++i) {
    if (!(v[i] >= 0.0) || !std::isfinite(v[i]))
      throw Error(ErrorCode::BadDistribution,
                  "entry " + std::to_string(i) + " is " + std::to_string(v[i]));
  }
  const double sum = v.sum();
  if (std::abs(sum - 1.0) > kDistributionTol)
    throw Error(ErrorCode::BadDistribution, "entries sum to " + std::to_string(sum));
}

RestartModel custom_model(const Graph& g, Vector alpha, Vector v) {
  check_size(g, alpha.size(), "alpha");
  return RestartModel(std::move(alpha), std::move(v), CustomKind{});
}

RestartModel constant_model(const Graph& g, double alpha, Vector v) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw Error(ErrorCode::AlphaOutOfRange,
                "constant alpha must lie in [0, 1), got " + std::to_string(alpha));
  return RestartModel(Vector::Constant(g.num_nodes(), alpha), std::move(v),
                      ConstantAlphaKind{alpha});
}

RestartModel degree_power_model(const Graph& g, double a, double sigma, Vector v) {
  if (!(a > 0.0) || !std::isfinite(sigma))
    throw Error(ErrorCode::StabilityViolation, "need a > 0 and finite sigma");
  const Vector powered = g.out_weight().array().pow(sigma);
  const double worst = a * powered.maxCoeff();
  if (!(worst < 1.0))
    throw Error(ErrorCode::StabilityViolation,
                "a * max d^sigma = " + std::to_string(worst) + " must be < 1");
  Vector alpha = (1.0 - a * powered.array()).matrix();
  return RestartModel(std::move(alpha), std::move(v), DegreePowerKind{a, sigma});
}

RestartModel rwj_model(const Graph& g, std::vector<double> a) {
  check_size(g, static_cast<Index>(a.size()), "jump weights");
  const Index n = g.num_nodes();
  for (Index i = 0; i < n; ++i) {
    if (!(a[i] > 0.0) || !std::isfinite(a[i]))
      throw Error(ErrorCode::NonpositiveJumpWeight,
                  "a[" + std::to_string(i) + "] = " + std::to_string(a[i]));
  }
  const double total = std::accumulate(a.begin(), a.end(), 0.0);
  Vector alpha(n);
  Vector v(n);
  for (Index i = 0; i < n; ++i) {
    alpha[i] = g.out_weight(i) / (g.out_weight(i) + a[i]);
    v[i] = a[i] / total;
  }
  // Division leaves round-off in the sum; pull it back onto the simplex.
  v /= v.sum();
  return RestartModel(std::move(alpha), std::move(v), RandomWalkJumpsKind{std::move(a)});
}

RestartModel rwj_model(const Graph& g, double a) {
  return rwj_model(g, std::vector<double>(static_cast<size_t>(g.num_nodes()), a));
}

RestartModel regenerate(const Graph& g, const RestartModel& m) {
  return std::visit(
      Overloaded{
          [&](const CustomKind&) { return m; },
          [&](const ConstantAlphaKind& k) {
            return constant_model(g, k.alpha, m.restart_distribution());
          },
          [&](const DegreePowerKind& k) {
            return degree_power_model(g, k.a, k.sigma, m.restart_distribution());
          },
          [&](const RandomWalkJumpsKind& k) { return rwj_model(g, k.a); },
      },
      m.kind());
}

double rwj_transition_check(const Graph& g, double a) {
  if (!g.is_symmetric() || !g.is_unweighted())
    throw Error(ErrorCode::InvalidArgument,
                "jump-walk transition check needs an unweighted undirected graph");
  const Index n = g.num_nodes();
  const RestartModel m = rwj_model(g, a);
  const Matrix p_tilde = augmented_matrix(g, m).dense();
  const double nd = static_cast<double>(n);
  double worst = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double d = g.out_weight(i);
    for (Index j = 0; j < n; ++j) {
      const double expected = g.weight(i, j) > 0.0 ? (a + nd) / (nd * (d + a)) : a / (nd * (d + a));
      worst = std::max(worst, std::abs(p_tilde(i, j) - expected));
    }
  }
  return worst;
}

}  // namespace restart_rank
