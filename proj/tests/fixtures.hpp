#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "restart_rank/graph.hpp"
#include "restart_rank/restart_model.hpp"

namespace restart_rank::fixtures {

inline Graph single_edge() {
  const std::vector<Edge> e{{0, 1, 1.0}};
  return build_graph(e, /*directed=*/false);
}

inline Graph path3() {
  const std::vector<Edge> e{{0, 1, 1.0}, {1, 2, 1.0}};
  return build_graph(e, false);
}

inline Graph path(Index n) {
  std::vector<Edge> e;
  for (Index i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 1.0});
  return build_graph(e, false);
}

inline Graph triangle() {
  const std::vector<Edge> e{{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}};
  return build_graph(e, false);
}

// K_{1,3} with the hub at node 0.
inline Graph star3() {
  const std::vector<Edge> e{{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}};
  return build_graph(e, false);
}

inline Graph cycle(Index n) {
  std::vector<Edge> e;
  for (Index i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, 1.0});
  return build_graph(e, false);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Index uniform_index(std::mt19937_64& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

// Random graph on n nodes. Undirected graphs get a random spanning tree first
// so no node is isolated (and W stays symmetric). Directed graphs may contain
// dangling nodes, which exercises the repair path.
inline Graph random_graph(std::mt19937_64& rng, Index n, bool directed, bool weighted,
                          double extra_density = 0.1) {
  std::vector<Edge> e;
  auto weight = [&] { return weighted ? uniform(rng, 0.1, 5.0) : 1.0; };
  if (!directed) {
    for (Index i = 1; i < n; ++i) e.push_back({uniform_index(rng, 0, i - 1), i, weight()});
  } else {
    for (Index i = 1; i < n; ++i) {
      const Index j = uniform_index(rng, 0, i - 1);
      if (uniform(rng, 0, 1) < 0.5) {
        e.push_back({i, j, weight()});
      } else {
        e.push_back({j, i, weight()});
      }
    }
  }
  const Index extra = static_cast<Index>(extra_density * static_cast<double>(n * n) / 2.0);
  for (Index k = 0; k < extra; ++k) {
    const Index i = uniform_index(rng, 0, n - 1);
    const Index j = uniform_index(rng, 0, n - 1);
    if (i != j) e.push_back({i, j, weight()});
  }
  // Keep the first copy of each pair so unweighted graphs stay 0/1.
  std::set<std::pair<Index, Index>> seen;
  std::vector<Edge> unique;
  for (const Edge& edge : e) {
    auto key = std::make_pair(edge.src, edge.dst);
    if (!directed && key.first > key.second) std::swap(key.first, key.second);
    if (seen.insert(key).second) unique.push_back(edge);
  }
  return build_graph(unique, directed, {}, n);
}

inline Vector random_distribution(std::mt19937_64& rng, Index n, double zero_prob = 0.0) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = uniform(rng, 0, 1) < zero_prob ? 0.0 : uniform(rng, 0.01, 1.0);
  if (v.sum() == 0.0) v[uniform_index(rng, 0, n - 1)] = 1.0;
  return v / v.sum();
}

inline Vector random_alpha(std::mt19937_64& rng, Index n, double lo, double hi) {
  Vector a(n);
  for (Index i = 0; i < n; ++i) a[i] = uniform(rng, lo, hi);
  return a;
}

}  // namespace restart_rank::fixtures
