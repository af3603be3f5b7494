#include "restart_rank/identities.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "restart_rank/error.hpp"
#include "restart_rank/parallel.hpp"

namespace restart_rank {

namespace {

void require_symmetric_interior(const Graph& g, const RestartModel& m) {
  if (!g.is_symmetric())
    throw Error(ErrorCode::NotUndirected, "symmetry relations need W == W^T");
  if (m.size() != g.num_nodes())
    throw Error(ErrorCode::DimensionMismatch, "model/graph size mismatch");
  if (!(m.min_alpha() > 0.0 && m.max_alpha() < 1.0))
    throw Error(ErrorCode::AlphaBoundary, "symmetry relations need every alpha in (0, 1)");
}

// Per-source quantity q(i, j) whose weighted form weight(i) * q(i, j) must
// be symmetric in (i, j). `solve(i)` returns the row q(i, .).
template <typename SolveRow, typename Weight>
SymmetryReport compare_pairs(Index n, const SymmetryOptions& opts, SolveRow solve, Weight weight) {
  std::vector<std::pair<Index, Index>> pairs;
  std::vector<Index> sources;
  SymmetryReport report;
  if (n <= opts.all_pairs_limit) {
    for (Index i = 0; i < n; ++i) {
      sources.push_back(i);
      for (Index j = i; j < n; ++j) pairs.emplace_back(i, j);
    }
  } else {
    report.sampled = true;
    std::mt19937_64 rng(opts.seed);
    std::set<Index> needed;
    for (std::int64_t k = 0; k < opts.sampled_pairs; ++k) {
      const Index i = static_cast<Index>(rng() % static_cast<std::uint64_t>(n));
      const Index j = static_cast<Index>(rng() % static_cast<std::uint64_t>(n));
      pairs.emplace_back(i, j);
      needed.insert(i);
      needed.insert(j);
    }
    sources.assign(needed.begin(), needed.end());
  }

  std::vector<Vector> rows(sources.size());
  parallel_for(static_cast<long>(sources.size()), opts.threads,
               [&](long k) { rows[static_cast<size_t>(k)] = solve(sources[static_cast<size_t>(k)]); });
  std::map<Index, const Vector*> row_of;
  for (size_t k = 0; k < sources.size(); ++k) row_of[sources[k]] = &rows[k];

  for (const auto& [i, j] : pairs) {
    const double lhs = weight(i) * (*row_of[i])[j];
    const double rhs = weight(j) * (*row_of[j])[i];
    const double dev = std::abs(lhs - rhs);
    if (dev > report.max_abs_deviation || std::isnan(dev)) {
      report.max_abs_deviation = std::isnan(dev) ? std::numeric_limits<double>::infinity() : dev;
      report.worst_pair = {i, j};
    }
  }
  report.pairs_checked = static_cast<std::int64_t>(pairs.size());
  return report;
}

}  // namespace

void to_json(nlohmann::json& j, const SymmetryReport& r) {
  j = nlohmann::json{{"max_abs_deviation", r.max_abs_deviation},
                     {"worst_pair", {r.worst_pair.first, r.worst_pair.second}},
                     {"pairs_checked", r.pairs_checked},
                     {"sampled", r.sampled}};
}

SymmetryReport check_occupation_symmetry(const Graph& g, const RestartModel& m,
                                         const SolverConfig& cfg, const SymmetryOptions& opts) {
  require_symmetric_interior(g, m);
  const Index n = g.num_nodes();
  const Resolvent resolvent(g, m, cfg);
  const Vector& alpha = m.alpha();

  // Row i holds pi_.(i) scaled by 1 / K_i = e_i^T [I-AP]^{-1} 1, so that
  // weight(i) * row_i[j] = d_i / (alpha_i K_i) * pi_j(i).
  auto solve = [&](Index i) -> Vector {
    const ResolventRow row = resolvent.row(point_distribution(n, i));
    const double inv_k = row.x.sum();
    const ScoreVector pi = occupation_from_row(row);
    return pi.values * inv_k;
  };
  auto weight = [&](Index i) { return g.out_weight(i) / alpha[i]; };
  return compare_pairs(n, opts, solve, weight);
}

SymmetryReport check_location_symmetry(const Graph& g, const RestartModel& m,
                                       const SolverConfig& cfg, const SymmetryOptions& opts) {
  require_symmetric_interior(g, m);
  const Index n = g.num_nodes();
  const Resolvent resolvent(g, m, cfg);
  const Vector& alpha = m.alpha();

  auto solve = [&](Index i) -> Vector {
    return location_from_row(resolvent.row(point_distribution(n, i)), alpha, cfg).values;
  };
  auto weight = [&](Index i) { return (1.0 - alpha[i]) / alpha[i] * g.out_weight(i); };
  return compare_pairs(n, opts, solve, weight);
}

LaurentTerms laurent_terms(const Graph& g, double sigma, const SolverConfig& cfg) {
  cfg.validate();
  const Index n = g.num_nodes();
  if (n > kDenseLimit)
    throw Error(ErrorCode::DenseOnly, "Laurent terms are computed densely; n = " + std::to_string(n));

  LaurentTerms t;
  t.sigma = sigma;
  t.T0 = transition_matrix(g, Storage::Dense).dense();
  const Vector d_sigma = g.out_weight().array().pow(sigma).matrix();
  t.T1 = d_sigma.asDiagonal() * t.T0;

  // xi^T (I - P) = 0 with xi^T 1 = 1: replace one balance equation by the
  // normalization. The system is singular exactly when xi is not unique.
  Matrix system = Matrix::Identity(n, n) - t.T0.transpose();
  system.row(n - 1).setOnes();
  Vector rhs = Vector::Zero(n);
  rhs[n - 1] = 1.0;
  const Eigen::FullPivLU<Matrix> lu(system);
  if (!lu.isInvertible())
    throw Error(ErrorCode::NonUniqueStationary, "transition matrix has several stationary laws");
  t.xi = lu.solve(rhs);
  const double balance = (t.T0.transpose() * t.xi - t.xi).lpNorm<Eigen::Infinity>();
  if (t.xi.minCoeff() < -1e-10 || balance > 1e-10)
    throw Error(ErrorCode::NonUniqueStationary,
                "stationary solve is ill-conditioned (balance error " + std::to_string(balance) + ")");
  t.xi = t.xi.cwiseMax(0.0);
  t.xi /= t.xi.sum();

  const Matrix one_xi = Vector::Ones(n) * t.xi.transpose();
  const Matrix identity = Matrix::Identity(n, n);
  t.H = (identity - t.T0 + one_xi).partialPivLu().inverse() - one_xi;

  const double scale = t.xi.dot(t.T1 * Vector::Ones(n));
  t.X_minus1 = one_xi / scale;
  t.X_0 = (identity - t.X_minus1 * t.T1) * t.H * (identity - t.T1 * t.X_minus1);
  return t;
}

double laurent_remainder(const LaurentTerms& terms, double a) {
  const Index n = terms.T0.rows();
  Matrix system = Matrix::Identity(n, n) - (terms.T0 - a * terms.T1);
  const Matrix inverse = system.partialPivLu().inverse();
  const Matrix r = inverse - terms.X_minus1 / a - terms.X_0;
  return r.cwiseAbs().rowwise().sum().maxCoeff();
}

DegreePowerLimits degree_power_asymptotics(const Graph& g, double sigma) {
  if (!g.is_symmetric())
    throw Error(ErrorCode::NotUndirected, "degree-power limits assume an undirected graph");
  const Vector& d = g.out_weight();
  const Vector powered = d.array().pow(1.0 + sigma).matrix();
  DegreePowerLimits out;
  out.pi_limit = d / d.sum();
  out.rho_limit = powered / powered.sum();
  out.restart_time_coeff = d.sum() / powered.sum();
  return out;
}

double rho_pi_relation_check(const Graph& g, const RestartModel& m, const SolverConfig& cfg) {
  const ScoreVector rho = location_ppr(g, m, cfg);
  const ScoreVector pi = occupation_ppr(g, m, cfg);
  const Vector weighted = pi.values.cwiseProduct(Vector::Ones(m.size()) - m.alpha());
  const Vector predicted = weighted / weighted.sum();
  return (rho.values - predicted).lpNorm<Eigen::Infinity>();
}

}  // namespace restart_rank
