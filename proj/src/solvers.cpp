#include "restart_rank/solvers.hpp"

#include <cmath>
#include <vector>

#include "restart_rank/error.hpp"

namespace restart_rank {

namespace {

constexpr double kNormalizationTol = 1e-10;

void check_model(const Graph& g, const RestartModel& m) {
  if (m.size() != g.num_nodes())
    throw Error(ErrorCode::DimensionMismatch, "restart model has " + std::to_string(m.size()) +
                                                  " nodes, graph has " +
                                                  std::to_string(g.num_nodes()));
}

Storage storage_for(SolveMode mode, Index n) {
  switch (mode) {
    case SolveMode::Dense:
      if (n > kDenseLimit)
        throw Error(ErrorCode::DenseOnly,
                    "dense mode requested for " + std::to_string(n) + " nodes");
      return Storage::Dense;
    case SolveMode::Iterative: return Storage::Sparse;
    case SolveMode::Auto: break;
  }
  return Storage::Auto;
}

void clamp_nonnegative(Vector& v) { v = v.cwiseMax(0.0); }

// v - x (I - A P) accumulated in extended precision from the raw weights, so
// the rounding in the entries of P does not limit the refined solution.
Vector extended_residual(const std::vector<Edge>& arcs, const std::vector<long double>& degree,
                         const Vector& alpha, const Vector& x, const Vector& v) {
  const Index n = x.size();
  std::vector<long double> scaled(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i)
    scaled[static_cast<size_t>(i)] =
        static_cast<long double>(alpha[i]) * x[i] / degree[static_cast<size_t>(i)];
  std::vector<long double> acc(static_cast<size_t>(n));
  for (Index j = 0; j < n; ++j) acc[static_cast<size_t>(j)] = static_cast<long double>(v[j]) - x[j];
  for (const Edge& e : arcs)
    acc[static_cast<size_t>(e.dst)] += scaled[static_cast<size_t>(e.src)] * e.weight;
  Vector r(n);
  for (Index j = 0; j < n; ++j) r[j] = static_cast<double>(acc[static_cast<size_t>(j)]);
  return r;
}

}  // namespace

std::string_view to_string(SolveMethod method) {
  switch (method) {
    case SolveMethod::DenseDirect: return "dense_direct";
    case SolveMethod::FixedPoint: return "fixed_point";
    case SolveMethod::PowerIteration: return "power_iteration";
    case SolveMethod::ClosedForm: return "closed_form";
    case SolveMethod::MonteCarlo: return "monte_carlo";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  if (!(tolerance > 0.0))
    throw Error(ErrorCode::InvalidArgument, "solver tolerance must be positive");
  if (max_iterations < 1)
    throw Error(ErrorCode::InvalidArgument, "max_iterations must be at least 1");
}

Resolvent::Resolvent(const Graph& g, const RestartModel& m, const SolverConfig& cfg)
    : p_(transition_matrix(g, storage_for(cfg.mode, g.num_nodes()))),
      alpha_(m.alpha()),
      cfg_(cfg) {
  cfg.validate();
  check_model(g, m);
  if (!(m.max_alpha() < 1.0))
    throw Error(ErrorCode::SolverPreconditionAlphaOne,
                "exact solvers need max alpha < 1, got " + std::to_string(m.max_alpha()));
  if (p_.is_dense()) {
    // Row equation x (I - A P) = v, solved as (I - A P)^T x^T = v^T.
    const Index n = size();
    Matrix system = Matrix::Identity(n, n);
    system.noalias() -= p_.dense().transpose() * alpha_.asDiagonal();
    lu_.emplace(system);
    arcs_ = g.edges();
    degree_.assign(static_cast<size_t>(n), 0.0L);
    for (const Edge& e : arcs_) degree_[static_cast<size_t>(e.src)] += e.weight;
  }
}

double Resolvent::residual_l1(const Vector& x, const Vector& v) const {
  const Vector ax = alpha_.cwiseProduct(x);
  return (x - v - p_.left_multiply(ax)).lpNorm<1>();
}

Vector Resolvent::fixed_point(const Vector& v, std::int64_t& iterations) const {
  Vector x = v;
  for (iterations = 1; iterations <= cfg_.max_iterations; ++iterations) {
    Vector next = v + p_.left_multiply(alpha_.cwiseProduct(x));
    const double step = (next - x).lpNorm<1>();
    x.swap(next);
    if (step <= cfg_.tolerance * std::max(1.0, x.lpNorm<1>())) return x;
  }
  throw Error(ErrorCode::NoConvergence, "fixed-point iteration did not reach tolerance " +
                                            std::to_string(cfg_.tolerance) + " within " +
                                            std::to_string(cfg_.max_iterations) + " iterations");
}

ResolventRow Resolvent::row(const Vector& v) const {
  if (v.size() != size())
    throw Error(ErrorCode::DimensionMismatch, "right-hand side has length " +
                                                  std::to_string(v.size()));
  ResolventRow out;
  if (lu_) {
    out.x = lu_->solve(v);
    // Two refinement steps against an extended-precision residual bring x to
    // within about an ulp of the exact solution on well-conditioned systems.
    for (int step = 0; step < 2; ++step)
      out.x += lu_->solve(extended_residual(arcs_, degree_, alpha_, out.x, v));
    out.method = SolveMethod::DenseDirect;
    out.iterations = 1;
  } else {
    out.x = fixed_point(v, out.iterations);
    out.method = SolveMethod::FixedPoint;
  }
  out.residual = residual_l1(out.x, v) / std::max(out.x.lpNorm<1>(), 1e-300);
  return out;
}

Matrix Resolvent::matrix() const {
  const Index n = size();
  if (n > kDenseLimit)
    throw Error(ErrorCode::DenseOnly,
                "expected-visits matrix needs dense storage; n = " + std::to_string(n));
  if (lu_) return lu_->inverse().transpose();
  Matrix system = Matrix::Identity(n, n);
  system.noalias() -= alpha_.asDiagonal() * p_.to_dense();
  return system.partialPivLu().inverse();
}

Vector resolvent_row(const Graph& g, const RestartModel& m, const Vector& v,
                     const SolverConfig& cfg) {
  validate_distribution(v, g.num_nodes());
  return Resolvent(g, m, cfg).row(v).x;
}

ScoreVector occupation_from_row(const ResolventRow& row) {
  ScoreVector out;
  long double total = 0.0L;
  for (Index i = 0; i < row.x.size(); ++i) total += row.x[i];
  out.values.resize(row.x.size());
  for (Index i = 0; i < row.x.size(); ++i)
    out.values[i] = static_cast<double>(static_cast<long double>(row.x[i]) / total);
  clamp_nonnegative(out.values);
  out.method = row.method;
  out.residual = row.residual;
  out.iterations = row.iterations;
  return out;
}

ScoreVector occupation_ppr(const Graph& g, const RestartModel& m, const SolverConfig& cfg) {
  const Resolvent resolvent(g, m, cfg);
  return occupation_from_row(resolvent.row(m.restart_distribution()));
}

ScoreVector occupation_ppr_power(const Graph& g, const RestartModel& m, const SolverConfig& cfg) {
  cfg.validate();
  check_model(g, m);
  const Index n = g.num_nodes();
  const TransitionMatrix p = transition_matrix(g, storage_for(cfg.mode, n));
  const Vector& alpha = m.alpha();
  const Vector restart_prob = Vector::Ones(n) - alpha;
  const Vector& v = m.restart_distribution();

  // x P~ = (x o alpha) P + (x . (1 - alpha)) v^T, without forming P~.
  Vector x = uniform_distribution(n);
  for (std::int64_t it = 1; it <= cfg.max_iterations; ++it) {
    Vector next = p.left_multiply(alpha.cwiseProduct(x)) + x.dot(restart_prob) * v;
    next /= next.sum();
    const double step = (next - x).lpNorm<1>();
    x.swap(next);
    if (step < cfg.tolerance) {
      ScoreVector out;
      out.values = x;
      clamp_nonnegative(out.values);
      out.method = SolveMethod::PowerIteration;
      out.residual = step;
      out.iterations = it;
      return out;
    }
  }
  throw Error(ErrorCode::NoConvergence,
              "power iteration did not settle within " + std::to_string(cfg.max_iterations) +
                  " iterations (periodic chain without restart?)");
}

ScoreVector location_from_row(const ResolventRow& row, const Vector& alpha,
                              const SolverConfig& cfg) {
  ScoreVector out;
  out.values = row.x.cwiseProduct(Vector::Ones(alpha.size()) - alpha);
  const double sum = out.values.sum();
  if (std::abs(sum - 1.0) > kNormalizationTol)
    throw Error(ErrorCode::NormalizationFailure,
                "location scores sum to " + std::to_string(sum));
  if (cfg.fault_injection != 0.0 && out.values.size() > 1) {
    out.values[0] -= cfg.fault_injection;
    out.values[out.values.size() - 1] += cfg.fault_injection;
  }
  clamp_nonnegative(out.values);
  out.method = row.method;
  out.residual = row.residual;
  out.iterations = row.iterations;
  return out;
}

ScoreVector location_ppr(const Graph& g, const RestartModel& m, const SolverConfig& cfg) {
  const Resolvent resolvent(g, m, cfg);
  return location_from_row(resolvent.row(m.restart_distribution()), m.alpha(), cfg);
}

double expected_restart_time(const Graph& g, const RestartModel& m, const Vector& from,
                             const SolverConfig& cfg) {
  validate_distribution(from, g.num_nodes());
  const Vector x = Resolvent(g, m, cfg).row(from).x;
  long double total = 0.0L;
  for (Index i = 0; i < x.size(); ++i) total += x[i];
  return static_cast<double>(total);
}

Matrix expected_visits_matrix(const Graph& g, const RestartModel& m, const SolverConfig& cfg) {
  if (g.num_nodes() > kDenseLimit)
    throw Error(ErrorCode::DenseOnly, "expected-visits matrix is limited to " +
                                          std::to_string(kDenseLimit) + " nodes");
  return Resolvent(g, m, cfg).matrix();
}

}  // namespace restart_rank
