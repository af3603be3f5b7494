#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "restart_rank/error.hpp"
#include "restart_rank/identities.hpp"
#include "restart_rank/solvers.hpp"

using namespace restart_rank;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// Symmetry quantities straight from an explicit inverse of I - A P.
double occupation_gap_by_inverse(const Graph& g, const RestartModel& m) {
  const Matrix r = oracles::visits_inverse(g, m);
  const Vector& alpha = m.alpha();
  const Index n = g.num_nodes();
  double worst = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      // pi_j(i) = R_ij / T_i and K_i = 1 / T_i
      const double lhs = g.out_weight(i) / alpha[i] * r(i, j);
      const double rhs = g.out_weight(j) / alpha[j] * r(j, i);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  return worst;
}

}  // namespace

TEST_CASE("symmetry holds on the path and star") {
  for (const Graph& g : {fixtures::path3(), fixtures::star3(), fixtures::triangle()}) {
    const RestartModel m = degree_power_model(g, 0.1, 1.0, uniform_distribution(g.num_nodes()));
    const SymmetryReport occ = check_occupation_symmetry(g, m);
    const SymmetryReport loc = check_location_symmetry(g, m);
    CHECK(occ.max_abs_deviation <= 1e-12);
    CHECK(loc.max_abs_deviation <= 1e-12);
    const Index n = g.num_nodes();
    CHECK(occ.pairs_checked == n * (n + 1) / 2);
    CHECK_FALSE(occ.sampled);
  }
}

TEST_CASE("symmetry checks reject directed graphs and boundary alphas") {
  const std::vector<Edge> e{{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}};
  const Graph directed = build_graph(e, true);
  const RestartModel m = constant_model(directed, 0.5, uniform_distribution(3));
  CHECK(code_of([&] { check_occupation_symmetry(directed, m); }) == ErrorCode::NotUndirected);
  CHECK(code_of([&] { check_location_symmetry(directed, m); }) == ErrorCode::NotUndirected);
  const Graph g = fixtures::path3();
  const RestartModel zero = custom_model(g, vec({0.0, 0.5, 0.5}), uniform_distribution(3));
  CHECK(code_of([&] { check_occupation_symmetry(g, zero); }) == ErrorCode::AlphaBoundary);
}

TEST_CASE("symmetry sampling above the all-pairs limit") {
  std::mt19937_64 rng(41);
  const Graph g = fixtures::random_graph(rng, 30, false, true);
  const RestartModel m = custom_model(g, fixtures::random_alpha(rng, 30, 0.1, 0.9),
                                      uniform_distribution(30));
  SymmetryOptions opts;
  opts.all_pairs_limit = 10;
  opts.sampled_pairs = 50;
  const SymmetryReport r = check_occupation_symmetry(g, m, {}, opts);
  CHECK(r.sampled);
  CHECK(r.pairs_checked == 50);
  CHECK(r.max_abs_deviation <= 1e-10);
  const nlohmann::json j = r;
  CHECK(j.at("pairs_checked") == 50);
}

TEST_CASE("property: symmetry on random undirected graphs agrees with an explicit inverse") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = fixtures::uniform_index(rng, 2, 40);
    const Graph g = fixtures::random_graph(rng, n, false, trial % 2 == 0);
    const RestartModel m = custom_model(g, fixtures::random_alpha(rng, n, 0.05, 0.95),
                                        fixtures::random_distribution(rng, n));
    CHECK(check_occupation_symmetry(g, m).max_abs_deviation <= 1e-9);
    CHECK(check_location_symmetry(g, m).max_abs_deviation <= 1e-9);
    CHECK(occupation_gap_by_inverse(g, m) <= 1e-9);
  }
}

TEST_CASE("rho-pi relation") {
  const Graph g = fixtures::path3();
  CHECK(rho_pi_relation_check(g, rwj_model(g, 1.0)) <= 1e-15);
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = fixtures::uniform_index(rng, 2, 60);
    const Graph h = fixtures::random_graph(rng, n, trial % 2 == 0, true);
    const RestartModel m = custom_model(h, fixtures::random_alpha(rng, n, 0.0, 0.95),
                                        fixtures::random_distribution(rng, n, 0.3));
    CHECK(rho_pi_relation_check(h, m) <= 1e-12);
  }
}

TEST_CASE("degree-power limits on the star and path") {
  const DegreePowerLimits star = degree_power_asymptotics(fixtures::star3(), 1.0);
  CHECK(oracles::max_abs(star.rho_limit, vec({9.0 / 12, 1.0 / 12, 1.0 / 12, 1.0 / 12})) <= 1e-15);
  CHECK(oracles::max_abs(star.pi_limit, vec({0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6})) <= 1e-15);
  CHECK(star.restart_time_coeff == doctest::Approx(0.5));
  const DegreePowerLimits path = degree_power_asymptotics(fixtures::path3(), 1.0);
  CHECK(path.restart_time_coeff == doctest::Approx(4.0 / 6.0));
  const std::vector<Edge> e{{0, 1, 1.0}, {1, 2, 1.0}};
  CHECK(code_of([&] { degree_power_asymptotics(build_graph(e, true), 1.0); }) ==
        ErrorCode::NotUndirected);
}

TEST_CASE("degree-power limits match the solver at small a") {
  std::mt19937_64 rng(44);
  const Graph g = fixtures::random_graph(rng, 25, false, false);
  for (double sigma : {-1.0, 0.5, 1.0}) {
    const DegreePowerLimits lim = degree_power_asymptotics(g, sigma);
    const double a = 1e-6;
    const RestartModel m = degree_power_model(g, a, sigma, uniform_distribution(25));
    CHECK(oracles::max_abs(occupation_ppr(g, m).values, lim.pi_limit) <= 1e-3);
    CHECK(oracles::max_abs(location_ppr(g, m).values, lim.rho_limit) <= 1e-3);
    const double t = expected_restart_time(g, m, m.restart_distribution());
    CHECK(std::abs(a * t - lim.restart_time_coeff) <= 1e-3);
  }
}

TEST_CASE("Laurent terms") {
  const Graph g = fixtures::star3();
  const LaurentTerms t = laurent_terms(g, 1.0);
  CHECK(oracles::max_abs(t.xi, vec({0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6})) <= 1e-14);
  // rows of X_{-1} are xi / (xi^T T1 1)
  const double scale = t.xi.dot(t.T1.rowwise().sum());
  for (Index i = 0; i < 4; ++i)
    CHECK(oracles::max_abs(t.X_minus1.row(i).transpose(), t.xi / scale) <= 1e-14);
  // H has zero row sums and xi^T H = 0
  CHECK(t.H.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((t.xi.transpose() * t.H).cwiseAbs().maxCoeff() <= 1e-12);

  double previous = laurent_remainder(t, 1e-2);
  for (double a : {5e-3, 2.5e-3, 1.25e-3}) {
    const double r = laurent_remainder(t, a);
    CHECK(r / previous >= 0.3);
    CHECK(r / previous <= 0.8);
    previous = r;
  }
}

TEST_CASE("Laurent terms need a unique stationary law") {
  const std::vector<Edge> e{{0, 1, 1.0}, {2, 3, 1.0}};
  const Graph g = build_graph(e, false);
  CHECK(code_of([&] { laurent_terms(g, 1.0); }) == ErrorCode::NonUniqueStationary);
}

TEST_CASE("star and path with sigma 1 and uniform v sit exactly at the limit") {
  // Neighbour-degree sums are constant on both graphs, so d / sum(d) is
  // stationary for every admissible a.
  for (const Graph& g : {fixtures::star3(), fixtures::path3()}) {
    const DegreePowerLimits lim = degree_power_asymptotics(g, 1.0);
    for (double a : {1e-2, 5e-3, 0.1}) {
      const RestartModel m = degree_power_model(g, a, 1.0, uniform_distribution(g.num_nodes()));
      CHECK(oracles::max_abs(occupation_ppr(g, m).values, lim.pi_limit) <= 1e-14);
      CHECK(oracles::max_abs(location_ppr(g, m).values, lim.rho_limit) <= 1e-14);
    }
  }
}

TEST_CASE("constant alpha reduces symmetry to d_i pi_j(i) = d_j pi_i(j)") {
  std::mt19937_64 rng(45);
  const Graph g = fixtures::random_graph(rng, 20, false, true);
  const RestartModel m = constant_model(g, 0.7, uniform_distribution(20));
  const SymmetryReport occ = check_occupation_symmetry(g, m);
  const SymmetryReport loc = check_location_symmetry(g, m);
  CHECK(occ.max_abs_deviation <= 1e-12);
  CHECK(loc.max_abs_deviation <= 1e-12);
  Matrix pi_from(20, 20);
  for (Index i = 0; i < 20; ++i) {
    const RestartModel mi = constant_model(g, 0.7, point_distribution(20, i));
    pi_from.row(i) = occupation_ppr(g, mi).values.transpose();
  }
  for (Index i = 0; i < 20; ++i)
    for (Index j = 0; j < 20; ++j)
      CHECK(std::abs(g.out_weight(i) * pi_from(i, j) - g.out_weight(j) * pi_from(j, i)) <= 1e-12);
}

TEST_CASE("sigma 0 limits coincide and jump-walk relation gives uniform rho") {
  std::mt19937_64 rng(46);
  const Graph g = fixtures::random_graph(rng, 15, false, true);
  const DegreePowerLimits lim = degree_power_asymptotics(g, 0.0);
  CHECK(oracles::max_abs(lim.pi_limit, lim.rho_limit) <= 1e-15);
  CHECK(oracles::max_abs(lim.pi_limit, g.out_weight() / g.total_weight()) <= 1e-15);
  const Graph path = fixtures::path3();
  const RestartModel m = rwj_model(path, 1.0);
  const Vector pi = occupation_ppr(path, m).values;
  const Vector relation = pi.cwiseProduct(Vector::Ones(3) - m.alpha()) /
                          pi.dot(Vector::Ones(3) - m.alpha());
  CHECK(oracles::max_abs(relation, uniform_distribution(3)) <= 1e-15);
}
