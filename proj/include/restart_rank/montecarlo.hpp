#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "restart_rank/graph.hpp"
#include "restart_rank/restart_model.hpp"
#include "restart_rank/solvers.hpp"

namespace restart_rank {

// Counters gathered while simulating the restart walk.
//
// Each step leaves the current node i. With probability 1 - alpha_i the walk
// restarts: i is counted in pre_restart_counts and the next node is drawn
// from v. Otherwise the next node is drawn from row i of P. The node arrived
// at is counted in occupation_counts. The initial node is a draw from v and
// is not counted.
struct WalkStats {
  std::int64_t steps = 0;
  std::vector<std::int64_t> occupation_counts;
  std::vector<std::int64_t> pre_restart_counts;
  std::int64_t restarts = 0;
  std::vector<std::uint64_t> seeds;

  friend bool operator==(const WalkStats&, const WalkStats&) = default;
};

void to_json(nlohmann::json& j, const WalkStats& s);
void from_json(const nlohmann::json& j, WalkStats& s);

// Seed of walker `k` derived from a base seed with splitmix64, so walkers in
// a batch draw from well-separated mt19937_64 streams.
std::uint64_t walker_seed(std::uint64_t base, std::uint64_t k);

// Runs one walker for `steps` transitions on an mt19937_64 seeded with
// `seed`. Results depend only on the inputs.
WalkStats simulate(const Graph& g, const RestartModel& m, std::int64_t steps, std::uint64_t seed);

// Runs `walkers` independent walkers seeded with walker_seed(seed, k) and
// merges their counts. The merged result does not depend on `threads`.
WalkStats simulate_parallel(const Graph& g, const RestartModel& m, std::int64_t steps_per_walker,
                            std::uint64_t seed, int walkers, unsigned threads = 0);

// Fieldwise sum; seed lists are concatenated.
WalkStats merge(const WalkStats& a, const WalkStats& b);

ScoreVector empirical_pi(const WalkStats& s);
// Throws NoRestartsObserved when no restart happened.
ScoreVector empirical_rho(const WalkStats& s);
// N_t / t
double restart_fraction(const WalkStats& s);

}  // namespace restart_rank
