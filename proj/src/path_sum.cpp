#include "restart_rank/path_sum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "restart_rank/error.hpp"

namespace restart_rank {

double path_sum_oracle(const Graph& g, const RestartModel& m, Index i, Index j, int max_length) {
  const Index n = g.num_nodes();
  if (n > kPathSumMaxNodes || max_length > kPathSumMaxLength || max_length < 0)
    throw Error(ErrorCode::OracleSizeExceeded,
                "path-sum oracle handles at most " + std::to_string(kPathSumMaxNodes) +
                    " nodes and " + std::to_string(kPathSumMaxLength) + " steps");
  if (m.size() != n) throw Error(ErrorCode::DimensionMismatch, "model/graph size mismatch");
  if (i < 0 || i >= n || j < 0 || j >= n)
    throw Error(ErrorCode::InvalidArgument, "node out of range");

  // mass[u]: total weight of all length-k walks from i that end at u.
  std::vector<double> mass(static_cast<size_t>(n), 0.0);
  std::vector<double> next(static_cast<size_t>(n), 0.0);
  mass[static_cast<size_t>(i)] = 1.0;
  double visits = mass[static_cast<size_t>(j)];
  const std::vector<Edge> arcs = g.edges();
  for (int k = 1; k <= max_length; ++k) {
    std::fill(next.begin(), next.end(), 0.0);
    for (const Edge& e : arcs) {
      const double factor = m.alpha()[e.src] * e.weight / g.out_weight(e.src);
      next[static_cast<size_t>(e.dst)] += mass[static_cast<size_t>(e.src)] * factor;
    }
    mass.swap(next);
    visits += mass[static_cast<size_t>(j)];
  }
  return visits;
}

double path_sum_truncation_bound(const RestartModel& m, int max_length) {
  const double a = m.max_alpha();
  if (a >= 1.0) return std::numeric_limits<double>::infinity();
  return std::pow(a, max_length) / (1.0 - a);
}

}  // namespace restart_rank
