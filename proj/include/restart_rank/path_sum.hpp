#pragma once

#include "restart_rank/graph.hpp"
#include "restart_rank/restart_model.hpp"

namespace restart_rank {

inline constexpr Index kPathSumMaxNodes = 8;
inline constexpr int kPathSumMaxLength = 64;

// Expected visits to `j` before restart when starting at `i`, as the sum over
// all walks i = u_0, u_1, ..., u_k = j with k <= max_length of
// prod_t alpha_{u_t} W_{u_t u_{t+1}} / d_{u_t}.
//
// Walks are enumerated length by length straight from the arc list, grouping
// walks by their current endpoint. No matrix is formed and nothing is
// inverted, so this serves as an independent check on the resolvent.
// Tiny graphs only: throws OracleSizeExceeded above kPathSumMaxNodes nodes or
// kPathSumMaxLength steps.
double path_sum_oracle(const Graph& g, const RestartModel& m, Index i, Index j, int max_length);

// Upper bound on the neglected tail: alpha_max^max_length / (1 - alpha_max).
double path_sum_truncation_bound(const RestartModel& m, int max_length);

}  // namespace restart_rank
