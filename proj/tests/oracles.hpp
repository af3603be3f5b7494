#pragma once

#include <Eigen/Dense>

#include "restart_rank/graph.hpp"
#include "restart_rank/restart_model.hpp"

namespace restart_rank::oracles {

// Stationary law of the augmented chain, from pi^T (P~ - I) = 0 with one
// balance equation swapped for sum(pi) = 1.
inline Vector augmented_stationary(const Graph& g, const RestartModel& m) {
  const Index n = g.num_nodes();
  const Matrix pt = augmented_matrix(g, m).dense();
  Matrix system = pt.transpose() - Matrix::Identity(n, n);
  system.row(n - 1).setOnes();
  Vector rhs = Vector::Zero(n);
  rhs[n - 1] = 1.0;
  return system.fullPivLu().solve(rhs);
}

// Dense P from the arc list, without going through transition_matrix.
inline Matrix dense_p(const Graph& g) {
  const Index n = g.num_nodes();
  Matrix p = Matrix::Zero(n, n);
  for (const Edge& e : g.edges()) p(e.src, e.dst) += e.weight;
  for (Index i = 0; i < n; ++i) p.row(i) /= p.row(i).sum();
  return p;
}

// [I - A P]^{-1} through an explicit matrix inverse.
inline Matrix visits_inverse(const Graph& g, const RestartModel& m) {
  const Index n = g.num_nodes();
  const Matrix ap = m.alpha().asDiagonal() * dense_p(g);
  return (Matrix::Identity(n, n) - ap).inverse();
}

inline double max_abs(const Vector& a, const Vector& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace restart_rank::oracles
