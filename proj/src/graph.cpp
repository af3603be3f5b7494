#include "restart_rank/graph.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <cmath>
#include <numeric>

#include "restart_rank/error.hpp"
#include "restart_rank/restart_model.hpp"

namespace restart_rank {

std::span<const Index> Graph::neighbors(Index i) const {
  return std::span<const Index>(col_idx_).subspan(row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]);
}

std::span<const double> Graph::neighbor_weights(Index i) const {
  return std::span<const double>(weights_).subspan(row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]);
}

double Graph::weight(Index i, Index j) const {
  const auto nbrs = neighbors(i);
  const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), j);
  if (it == nbrs.end() || *it != j) return 0.0;
  return neighbor_weights(i)[it - nbrs.begin()];
}

bool Graph::is_unweighted() const {
  return std::all_of(weights_.begin(), weights_.end(), [](double w) { return w == 1.0; });
}

std::string Graph::label(Index i) const {
  if (labels_.empty()) return std::to_string(i);
  return labels_[static_cast<size_t>(i)];
}

std::optional<Index> Graph::find_label(const std::string& label) const {
  if (labels_.empty()) {
    Index id = 0;
    const auto* end = label.data() + label.size();
    auto [ptr, ec] = std::from_chars(label.data(), end, id);
    if (ec != std::errc{} || ptr != end || id < 0 || id >= n_) return std::nullopt;
    return id;
  }
  const auto it = label_index_.find(label);
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(col_idx_.size());
  for (Index i = 0; i < n_; ++i)
    for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      out.push_back({i, col_idx_[k], weights_[k]});
  return out;
}

Graph build_graph(std::span<const Edge> edges, bool directed, std::vector<std::string> labels,
                  std::optional<Index> num_nodes) {
  if (edges.empty()) throw Error(ErrorCode::EmptyGraph, "edge list is empty");

  Index max_id = -1;
  for (const auto& e : edges) {
    if (e.src < 0 || e.dst < 0)
      throw Error(ErrorCode::InvalidArgument, "node ids must be nonnegative");
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
      throw Error(ErrorCode::NegativeWeight,
                  "arc " + std::to_string(e.src) + "->" + std::to_string(e.dst) +
                      " has weight " + std::to_string(e.weight));
    max_id = std::max({max_id, e.src, e.dst});
  }

  Index n = max_id + 1;
  if (!labels.empty()) {
    n = static_cast<Index>(labels.size());
  } else if (num_nodes) {
    n = *num_nodes;
  }
  if (max_id >= n)
    throw Error(ErrorCode::DimensionMismatch,
                "node id " + std::to_string(max_id) + " out of range for " + std::to_string(n) +
                    " nodes");

  auto by_endpoints = [](const Edge& a, const Edge& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  };
  std::vector<Edge> arcs(edges.begin(), edges.end());
  if (!directed) {
    // Merge parallel edges on the unordered pair first so both directions
    // receive the bitwise-identical sum.
    for (auto& e : arcs)
      if (e.src > e.dst) std::swap(e.src, e.dst);
    std::stable_sort(arcs.begin(), arcs.end(), by_endpoints);
    std::vector<Edge> mirrored;
    mirrored.reserve(2 * arcs.size());
    for (size_t k = 0; k < arcs.size();) {
      Edge merged = arcs[k];
      for (++k; k < arcs.size() && arcs[k].src == merged.src && arcs[k].dst == merged.dst; ++k)
        merged.weight += arcs[k].weight;
      mirrored.push_back(merged);
      mirrored.push_back({merged.dst, merged.src, merged.weight});
    }
    arcs = std::move(mirrored);
  }
  std::stable_sort(arcs.begin(), arcs.end(), by_endpoints);

  // Merge duplicates and drop zero-weight arcs (they carry no transition mass).
  std::vector<std::vector<std::pair<Index, double>>> rows(static_cast<size_t>(n));
  for (size_t k = 0; k < arcs.size();) {
    const Index src = arcs[k].src;
    const Index dst = arcs[k].dst;
    double w = 0.0;
    for (; k < arcs.size() && arcs[k].src == src && arcs[k].dst == dst; ++k) w += arcs[k].weight;
    if (w > 0.0) rows[static_cast<size_t>(src)].emplace_back(dst, w);
  }

  Graph g;
  g.n_ = n;
  g.undirected_input_ = !directed;

  for (Index i = 0; i < n; ++i) {
    auto& row = rows[static_cast<size_t>(i)];
    if (!row.empty()) continue;
    if (n == 1)
      throw Error(ErrorCode::SingleNodeDangling,
                  "a single node without a self-loop has no outgoing arcs to repair with");
    const double w = 1.0 / static_cast<double>(n - 1);
    for (Index j = 0; j < n; ++j)
      if (j != i) row.emplace_back(j, w);
    g.repaired_.push_back(i);
  }

  g.row_ptr_.assign(static_cast<size_t>(n) + 1, 0);
  g.out_weight_ = Vector::Zero(n);
  for (Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<size_t>(i)];
    g.row_ptr_[i + 1] = g.row_ptr_[i] + static_cast<Index>(row.size());
    for (const auto& [dst, w] : row) {
      g.col_idx_.push_back(dst);
      g.weights_.push_back(w);
      g.out_weight_[i] += w;
    }
  }

  g.symmetric_ = true;
  for (Index i = 0; i < n && g.symmetric_; ++i) {
    const auto nbrs = g.neighbors(i);
    const auto ws = g.neighbor_weights(i);
    for (size_t k = 0; k < nbrs.size(); ++k) {
      if (g.weight(nbrs[k], i) != ws[k]) {
        g.symmetric_ = false;
        break;
      }
    }
  }

  if (!labels.empty()) {
    g.labels_ = std::move(labels);
    for (Index i = 0; i < n; ++i) g.label_index_.emplace(g.labels_[static_cast<size_t>(i)], i);
  }
  return g;
}

bool check_weak_connectivity(const Graph& g) {
  const Index n = g.num_nodes();
  std::vector<Index> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  Index components = n;
  for (Index i = 0; i < n; ++i) {
    for (const Index j : g.neighbors(i)) {
      const Index a = find(i);
      const Index b = find(j);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
  }
  return components == 1;
}

Index TransitionMatrix::size() const {
  return is_dense() ? dense().rows() : sparse().rows();
}

double TransitionMatrix::coeff(Index i, Index j) const {
  return is_dense() ? dense()(i, j) : sparse().coeff(i, j);
}

Vector TransitionMatrix::left_multiply(const Vector& x) const {
  if (is_dense()) return dense().transpose() * x;
  return sparse().transpose() * x;
}

Matrix TransitionMatrix::to_dense() const {
  if (is_dense()) return dense();
  if (size() > kDenseLimit)
    throw Error(ErrorCode::DenseOnly, "refusing to densify a matrix of order " +
                                          std::to_string(size()));
  return Matrix(sparse());
}

double TransitionMatrix::max_row_sum_deviation() const {
  if (is_dense()) return (dense().rowwise().sum().array() - 1.0).abs().maxCoeff();
  const SparseMatrix& s = sparse();
  double worst = 0.0;
  for (Index i = 0; i < s.outerSize(); ++i) {
    double sum = 0.0;
    for (SparseMatrix::InnerIterator it(s, i); it; ++it) sum += it.value();
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

double TransitionMatrix::min_entry() const {
  if (is_dense()) return dense().minCoeff();
  const SparseMatrix& s = sparse();
  // Unstored entries are zeros.
  double lo = s.nonZeros() < s.rows() * s.cols() ? 0.0 : std::numeric_limits<double>::infinity();
  if (s.nonZeros() > 0) lo = std::min(lo, s.coeffs().minCoeff());
  return lo;
}

TransitionMatrix transition_matrix(const Graph& g, Storage storage) {
  const Index n = g.num_nodes();
  const bool dense = storage == Storage::Dense || (storage == Storage::Auto && n <= kDenseLimit);
  if (dense) {
    if (n > kDenseLimit)
      throw Error(ErrorCode::DenseOnly,
                  "dense transition matrix requested for " + std::to_string(n) + " nodes");
    Matrix p = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
      const auto nbrs = g.neighbors(i);
      const auto ws = g.neighbor_weights(i);
      for (size_t k = 0; k < nbrs.size(); ++k) p(i, nbrs[k]) = ws[k] / g.out_weight(i);
    }
    return TransitionMatrix(std::move(p));
  }
  std::vector<Eigen::Triplet<double, Index>> triplets;
  triplets.reserve(static_cast<size_t>(g.num_arcs()));
  for (Index i = 0; i < n; ++i) {
    const auto nbrs = g.neighbors(i);
    const auto ws = g.neighbor_weights(i);
    for (size_t k = 0; k < nbrs.size(); ++k)
      triplets.emplace_back(i, nbrs[k], ws[k] / g.out_weight(i));
  }
  SparseMatrix p(n, n);
  p.setFromTriplets(triplets.begin(), triplets.end());
  p.makeCompressed();
  return TransitionMatrix(std::move(p));
}

TransitionMatrix augmented_matrix(const Graph& g, const RestartModel& m) {
  const Index n = g.num_nodes();
  if (m.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "restart model has " + std::to_string(m.size()) +
                                                  " nodes, graph has " + std::to_string(n));
  if (n > kDenseLimit)
    throw Error(ErrorCode::DenseOnly,
                "augmented matrix is dense; " + std::to_string(n) + " nodes is too many");
  const Matrix p = transition_matrix(g, Storage::Dense).dense();
  const Vector& alpha = m.alpha();
  Matrix out = alpha.asDiagonal() * p;
  out += (Vector::Ones(n) - alpha) * m.restart_distribution().transpose();
  return TransitionMatrix(std::move(out));
}

}  // namespace restart_rank
