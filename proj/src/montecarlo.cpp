#include "restart_rank/montecarlo.hpp"

#include <algorithm>
#include <random>

#include "restart_rank/error.hpp"
#include "restart_rank/parallel.hpp"

namespace restart_rank {

namespace {

// Inverse-CDF sampler over a list of nonnegative weights.
class CumulativeTable {
 public:
  CumulativeTable() = default;
  template <typename Range>
  explicit CumulativeTable(const Range& weights) {
    double total = 0.0;
    for (const double w : weights) {
      total += w;
      cumulative_.push_back(total);
    }
  }

  // u uniform in [0, 1).
  size_t sample(double u) const {
    const double target = u * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    // Zero-weight tail entries can never be drawn; clamp to the last positive one.
    size_t k = static_cast<size_t>(it - cumulative_.begin());
    if (k >= cumulative_.size()) k = cumulative_.size() - 1;
    while (k > 0 && cumulative_[k] == cumulative_[k - 1]) --k;
    return k;
  }

 private:
  std::vector<double> cumulative_;
};

// 53 random bits mapped to [0, 1); identical on every platform.
double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::uint64_t walker_seed(std::uint64_t base, std::uint64_t k) {
  std::uint64_t z = base + (k + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

WalkStats simulate(const Graph& g, const RestartModel& m, std::int64_t steps, std::uint64_t seed) {
  if (steps < 1) throw Error(ErrorCode::InvalidArgument, "simulation needs at least one step");
  const Index n = g.num_nodes();
  if (m.size() != n) throw Error(ErrorCode::DimensionMismatch, "model/graph size mismatch");

  std::vector<CumulativeTable> rows;
  rows.reserve(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) rows.emplace_back(g.neighbor_weights(i));
  const Vector& v = m.restart_distribution();
  const CumulativeTable restart_table(std::span<const double>(v.data(), static_cast<size_t>(n)));
  const Vector& alpha = m.alpha();

  WalkStats s;
  s.steps = steps;
  s.occupation_counts.assign(static_cast<size_t>(n), 0);
  s.pre_restart_counts.assign(static_cast<size_t>(n), 0);
  s.seeds = {seed};

  std::mt19937_64 rng(seed);
  Index current = static_cast<Index>(restart_table.sample(unit_interval(rng)));
  for (std::int64_t t = 0; t < steps; ++t) {
    if (unit_interval(rng) < 1.0 - alpha[current]) {
      ++s.pre_restart_counts[static_cast<size_t>(current)];
      ++s.restarts;
      current = static_cast<Index>(restart_table.sample(unit_interval(rng)));
    } else {
      const auto nbrs = g.neighbors(current);
      current = nbrs[rows[static_cast<size_t>(current)].sample(unit_interval(rng))];
    }
    ++s.occupation_counts[static_cast<size_t>(current)];
  }
  return s;
}

WalkStats merge(const WalkStats& a, const WalkStats& b) {
  if (a.occupation_counts.empty()) return b;
  if (b.occupation_counts.empty()) return a;
  if (a.occupation_counts.size() != b.occupation_counts.size())
    throw Error(ErrorCode::DimensionMismatch, "cannot merge walks over different graphs");
  WalkStats out = a;
  out.steps += b.steps;
  out.restarts += b.restarts;
  for (size_t i = 0; i < out.occupation_counts.size(); ++i) {
    out.occupation_counts[i] += b.occupation_counts[i];
    out.pre_restart_counts[i] += b.pre_restart_counts[i];
  }
  out.seeds.insert(out.seeds.end(), b.seeds.begin(), b.seeds.end());
  return out;
}

WalkStats simulate_parallel(const Graph& g, const RestartModel& m, std::int64_t steps_per_walker,
                            std::uint64_t seed, int walkers, unsigned threads) {
  if (walkers < 1) throw Error(ErrorCode::InvalidArgument, "need at least one walker");
  std::vector<WalkStats> parts(static_cast<size_t>(walkers));
  parallel_for(walkers, threads, [&](long k) {
    parts[static_cast<size_t>(k)] =
        simulate(g, m, steps_per_walker, walker_seed(seed, static_cast<std::uint64_t>(k)));
  });
  WalkStats total;
  for (const auto& part : parts) total = merge(total, part);
  return total;
}

void to_json(nlohmann::json& j, const WalkStats& s) {
  j = nlohmann::json{{"steps", s.steps},
                     {"restarts", s.restarts},
                     {"occupation_counts", s.occupation_counts},
                     {"pre_restart_counts", s.pre_restart_counts},
                     {"seeds", s.seeds}};
}

void from_json(const nlohmann::json& j, WalkStats& s) {
  j.at("steps").get_to(s.steps);
  j.at("restarts").get_to(s.restarts);
  j.at("occupation_counts").get_to(s.occupation_counts);
  j.at("pre_restart_counts").get_to(s.pre_restart_counts);
  j.at("seeds").get_to(s.seeds);
}

ScoreVector empirical_pi(const WalkStats& s) {
  if (s.steps <= 0) throw Error(ErrorCode::InvalidArgument, "no steps recorded");
  ScoreVector out;
  out.values = Vector(static_cast<Index>(s.occupation_counts.size()));
  for (size_t i = 0; i < s.occupation_counts.size(); ++i)
    out.values[static_cast<Index>(i)] =
        static_cast<double>(s.occupation_counts[i]) / static_cast<double>(s.steps);
  out.method = SolveMethod::MonteCarlo;
  out.iterations = s.steps;
  return out;
}

ScoreVector empirical_rho(const WalkStats& s) {
  if (s.restarts <= 0) throw Error(ErrorCode::NoRestartsObserved, "walk never restarted");
  ScoreVector out;
  out.values = Vector(static_cast<Index>(s.pre_restart_counts.size()));
  for (size_t i = 0; i < s.pre_restart_counts.size(); ++i)
    out.values[static_cast<Index>(i)] =
        static_cast<double>(s.pre_restart_counts[i]) / static_cast<double>(s.restarts);
  out.method = SolveMethod::MonteCarlo;
  out.iterations = s.restarts;
  return out;
}

double restart_fraction(const WalkStats& s) {
  if (s.steps <= 0) throw Error(ErrorCode::InvalidArgument, "no steps recorded");
  return static_cast<double>(s.restarts) / static_cast<double>(s.steps);
}

}  // namespace restart_rank
