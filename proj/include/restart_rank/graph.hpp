#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace restart_rank {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, Index>;

// Matrices up to this order are stored and solved densely.
inline constexpr Index kDenseLimit = 2048;

struct Edge {
  Index src = 0;
  Index dst = 0;
  double weight = 1.0;
};

class Graph;

// Builds a graph from an arc list. With `directed == false` each edge is
// stored as two arcs of equal weight (a self-loop therefore contributes 2w to
// W_ii). Duplicate arcs are merged by summing weights.
//
// The node count is `labels.size()` when labels are given, otherwise
// `num_nodes` when given, otherwise one more than the largest id seen.
Graph build_graph(std::span<const Edge> edges, bool directed,
                  std::vector<std::string> labels = {},
                  std::optional<Index> num_nodes = std::nullopt);

// Weighted directed adjacency W in compressed-row form, with out-weights
// d_i = sum_j W_ij. Nodes that had no outgoing weight at construction time
// are repaired with equal-weight arcs to every other node, so d_i > 0 always.
// Immutable once built.
class Graph {
 public:
  Index num_nodes() const { return n_; }
  Index num_arcs() const { return static_cast<Index>(col_idx_.size()); }

  std::span<const Index> row_ptr() const { return row_ptr_; }
  std::span<const Index> col_idx() const { return col_idx_; }
  std::span<const double> weights() const { return weights_; }

  // Arcs leaving `i` as parallel (target, weight) spans.
  std::span<const Index> neighbors(Index i) const;
  std::span<const double> neighbor_weights(Index i) const;

  // W_ij, zero when there is no arc.
  double weight(Index i, Index j) const;

  const Vector& out_weight() const { return out_weight_; }
  double out_weight(Index i) const { return out_weight_[i]; }
  double max_out_weight() const { return out_weight_.maxCoeff(); }
  // Sum of all arc weights; equals 2|E| for an unweighted undirected graph.
  double total_weight() const { return out_weight_.sum(); }

  // True when the input was read as undirected.
  bool undirected_input() const { return undirected_input_; }
  // True when W == W^T exactly (after merging and repair).
  bool is_symmetric() const { return symmetric_; }
  // True when every stored arc has weight exactly 1.
  bool is_unweighted() const;

  // Nodes that received artificial out-arcs.
  const std::vector<Index>& repaired_nodes() const { return repaired_; }

  // External name of node `i`; the decimal index when no label table exists.
  std::string label(Index i) const;
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Index> find_label(const std::string& label) const;

  std::vector<Edge> edges() const;

 private:
  friend Graph build_graph(std::span<const Edge>, bool,
                           std::vector<std::string>, std::optional<Index>);

  Index n_ = 0;
  std::vector<Index> row_ptr_;
  std::vector<Index> col_idx_;
  std::vector<double> weights_;
  Vector out_weight_;
  bool undirected_input_ = false;
  bool symmetric_ = false;
  std::vector<Index> repaired_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Index> label_index_;
};

// Connectivity of the underlying undirected graph.
bool check_weak_connectivity(const Graph& g);

enum class Storage { Auto, Dense, Sparse };

// Row-stochastic n x n matrix held densely or in compressed rows.
class TransitionMatrix {
 public:
  explicit TransitionMatrix(Matrix dense) : storage_(std::move(dense)) {}
  explicit TransitionMatrix(SparseMatrix sparse) : storage_(std::move(sparse)) {}

  Index size() const;
  bool is_dense() const { return std::holds_alternative<Matrix>(storage_); }

  const Matrix& dense() const { return std::get<Matrix>(storage_); }
  const SparseMatrix& sparse() const { return std::get<SparseMatrix>(storage_); }

  double coeff(Index i, Index j) const;

  // Row-vector product x^T M, returned as a column vector.
  Vector left_multiply(const Vector& x) const;

  // Dense copy; throws DenseOnly above kDenseLimit.
  Matrix to_dense() const;

  double max_row_sum_deviation() const;
  double min_entry() const;

 private:
  std::variant<Matrix, SparseMatrix> storage_;
};

// P = D^{-1} W. Auto storage is dense for n <= kDenseLimit.
TransitionMatrix transition_matrix(const Graph& g, Storage storage = Storage::Auto);

class RestartModel;

// P~ = A P + (I - A) 1 v^T, always dense; throws DenseOnly above kDenseLimit
// and DimensionMismatch when the model is sized for another graph.
TransitionMatrix augmented_matrix(const Graph& g, const RestartModel& m);

}  // namespace restart_rank
