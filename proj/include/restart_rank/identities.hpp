#pragma once

#include <cstdint>
#include <utility>

#include <nlohmann/json.hpp>

#include "restart_rank/graph.hpp"
#include "restart_rank/restart_model.hpp"
#include "restart_rank/solvers.hpp"

namespace restart_rank {

struct SymmetryReport {
  double max_abs_deviation = 0.0;
  std::pair<Index, Index> worst_pair{0, 0};
  std::int64_t pairs_checked = 0;
  bool sampled = false;
};

void to_json(nlohmann::json& j, const SymmetryReport& r);

struct SymmetryOptions {
  // All unordered pairs are checked up to this many nodes; above it a
  // uniform sample of `sampled_pairs` pairs is drawn with `seed`.
  Index all_pairs_limit = 500;
  std::int64_t sampled_pairs = 1000;
  std::uint64_t seed = 0x5eedULL;
  // 0 selects default_thread_count().
  unsigned threads = 0;
};

// Checks d_i / (alpha_i K_i) pi_j(i) == d_j / (alpha_j K_j) pi_i(j) with
// K_i = 1 / (e_i^T [I-AP]^{-1} 1). Requires W == W^T (NotUndirected) and
// 0 < alpha_i < 1 (AlphaBoundary).
SymmetryReport check_occupation_symmetry(const Graph& g, const RestartModel& m,
                                         const SolverConfig& cfg = {},
                                         const SymmetryOptions& opts = {});

// Checks (1 - alpha_i) / alpha_i d_i rho_j(i) == (1 - alpha_j) / alpha_j d_j rho_i(j)
// under the same preconditions.
SymmetryReport check_location_symmetry(const Graph& g, const RestartModel& m,
                                       const SolverConfig& cfg = {},
                                       const SymmetryOptions& opts = {});

// First two coefficients of [I - (T0 - a T1)]^{-1} = X_{-1} / a + X_0 + O(a)
// for the degree-power model, with T0 = P and T1 = D^sigma P. The expansion
// parameter is the model's `a`.
struct LaurentTerms {
  double sigma = 0.0;
  Vector xi;         // stationary distribution of P
  Matrix H;          // (I - P + 1 xi^T)^{-1} - 1 xi^T
  Matrix T0;
  Matrix T1;
  Matrix X_minus1;   // 1 xi^T / (xi^T T1 1)
  Matrix X_0;        // (I - X_{-1} T1) H (I - T1 X_{-1})
};

// Dense only. Throws NonUniqueStationary when P has more than one
// stationary distribution.
LaurentTerms laurent_terms(const Graph& g, double sigma, const SolverConfig& cfg = {});

// || [I - (P - a T1)]^{-1} - X_{-1} / a - X_0 ||_inf (max absolute row sum).
double laurent_remainder(const LaurentTerms& terms, double a);

struct DegreePowerLimits {
  Vector pi_limit;            // d_j / sum_i d_i
  Vector rho_limit;           // d_j^{1+sigma} / sum_i d_i^{1+sigma}
  double restart_time_coeff;  // sum_i d_i / sum_i d_i^{1+sigma}
};

// Small-a limits of the degree-power model on an undirected graph.
DegreePowerLimits degree_power_asymptotics(const Graph& g, double sigma);

// L_inf distance between rho and pi o (1 - alpha) / sum_i pi_i (1 - alpha_i).
double rho_pi_relation_check(const Graph& g, const RestartModel& m, const SolverConfig& cfg = {});

}  // namespace restart_rank
