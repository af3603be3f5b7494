#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "restart_rank/error.hpp"
#include "restart_rank/montecarlo.hpp"
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

}  // namespace

TEST_CASE("simulation is deterministic in the seed") {
  const Graph g = fixtures::path3();
  const RestartModel m = rwj_model(g, 1.0);
  const WalkStats a = simulate(g, m, 20000, 7);
  const WalkStats b = simulate(g, m, 20000, 7);
  const WalkStats c = simulate(g, m, 20000, 8);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  CHECK(a.steps == 20000);
  std::int64_t total = 0;
  for (auto k : a.occupation_counts) total += k;
  CHECK(total == 20000);
  std::int64_t restarts = 0;
  for (auto k : a.pre_restart_counts) restarts += k;
  CHECK(restarts == a.restarts);
}

TEST_CASE("parallel simulation does not depend on thread count") {
  const Graph g = fixtures::star3();
  const RestartModel m = constant_model(g, 0.7, uniform_distribution(4));
  const WalkStats one = simulate_parallel(g, m, 5000, 3, 4, 1);
  const WalkStats many = simulate_parallel(g, m, 5000, 3, 4, 4);
  CHECK(one == many);
  CHECK(one.steps == 20000);
  CHECK(one.seeds.size() == 4);
  WalkStats manual = simulate(g, m, 5000, walker_seed(3, 0));
  for (std::uint64_t k = 1; k < 4; ++k) manual = merge(manual, simulate(g, m, 5000, walker_seed(3, k)));
  CHECK(manual == one);
  CHECK(walker_seed(3, 0) != walker_seed(3, 1));
}

TEST_CASE("alpha zero restarts every step") {
  const Graph g = fixtures::single_edge();
  const RestartModel m = custom_model(g, Vector::Zero(2), Vector::Ones(2) / 2.0);
  const WalkStats s = simulate(g, m, 1000, 1);
  CHECK(s.restarts == 1000);
  CHECK(restart_fraction(s) == 1.0);
}

TEST_CASE("no restarts is reported") {
  const Graph g = fixtures::single_edge();
  const RestartModel m = custom_model(g, Vector::Ones(2), point_distribution(2, 0));
  const WalkStats s = simulate(g, m, 100, 1);
  CHECK(s.restarts == 0);
  CHECK(s.occupation_counts[0] == 50);
  CHECK(code_of([&] { empirical_rho(s); }) == ErrorCode::NoRestartsObserved);
  CHECK(empirical_pi(s).values[0] == 0.5);
}

TEST_CASE("simulation argument errors") {
  const Graph g = fixtures::single_edge();
  const RestartModel m = constant_model(g, 0.5, uniform_distribution(2));
  CHECK(code_of([&] { simulate(g, m, 0, 1); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { simulate_parallel(g, m, 10, 1, 0); }) == ErrorCode::InvalidArgument);
  const WalkStats two = simulate(g, m, 10, 1);
  const WalkStats three = simulate(fixtures::path3(), rwj_model(fixtures::path3(), 1.0), 10, 1);
  CHECK(code_of([&] { merge(two, three); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("walk stats JSON round trip") {
  const Graph g = fixtures::star3();
  const RestartModel m = constant_model(g, 0.6, uniform_distribution(4));
  const WalkStats s = simulate_parallel(g, m, 1000, 9, 2, 1);
  const nlohmann::json j = s;
  CHECK(j.get<WalkStats>() == s);
}

TEST_CASE("empirical scores approach the exact ones") {
  const Graph g = fixtures::path3();
  const RestartModel m = rwj_model(g, 1.0);
  const WalkStats s = simulate(g, m, 200000, 5);
  CHECK(oracles::max_abs(empirical_pi(s).values, occupation_ppr(g, m).values) <= 0.01);
  CHECK(oracles::max_abs(empirical_rho(s).values, location_ppr(g, m).values) <= 0.01);
  // sum_j (1 - alpha_j) pi_j = 3/7
  CHECK(std::abs(restart_fraction(s) - 3.0 / 7.0) <= 0.01);
}

TEST_CASE("alpha zero with a point restart stays at the start node") {
  const Graph g = fixtures::star3();
  const RestartModel m = custom_model(g, Vector::Zero(4), point_distribution(4, 1));
  const WalkStats s = simulate(g, m, 1000, 2);
  CHECK(s.occupation_counts[1] == 1000);
  CHECK(s.pre_restart_counts[1] == 1000);
  CHECK(empirical_rho(s).values[1] == 1.0);
}

TEST_CASE("restart fractions at 1e6 steps") {
  const Graph star = fixtures::star3();
  const WalkStats c = simulate(star, constant_model(star, 0.85, uniform_distribution(4)), 1'000'000, 11);
  CHECK(std::abs(restart_fraction(c) - 0.15) <= 0.002);
  const Graph path = fixtures::path3();
  const WalkStats r = simulate(path, rwj_model(path, 1.0), 1'000'000, 12);
  CHECK(std::abs(restart_fraction(r) - 3.0 / 7.0) <= 0.003);
  const Graph two = fixtures::single_edge();
  const WalkStats h = simulate(two, constant_model(two, 0.5, point_distribution(2, 0)), 1'000'000, 13);
  CHECK(std::abs(empirical_pi(h).values[0] - 2.0 / 3.0) <= 0.005);
}
