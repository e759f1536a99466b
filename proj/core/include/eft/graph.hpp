#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <vector>

#include "eft/errors.hpp"

namespace eft {

enum class LaplacianKind { Combinatorial, Normalized };

/// One undirected weighted edge. Self-loops (u == v) are permitted; they
/// cancel in the combinatorial Laplacian but contribute to normalized degrees.
struct Edge {
  int u;
  int v;
  double w;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/**
 * @brief Undirected weighted graph over a fixed node set 0..n-1.
 *
 * Edges are canonicalized to u <= v and stored once, sorted by (u, v), so two
 * graphs over the same node set compare equal iff they have the same edge set.
 * Construction validates ids, weight domain and edge-list consistency:
 * conflicting duplicate entries for one node pair raise SymmetryError,
 * negative or non-finite weights raise DomainError.
 */
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(int num_nodes, std::vector<Edge> edges);

  /// Builds from a dense adjacency matrix; throws SymmetryError if
  /// adjacency != adjacency^T, DomainError on negative/non-finite entries.
  static WeightedGraph from_dense(const Eigen::MatrixXd& adjacency);

  int num_nodes() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  Eigen::SparseMatrix<double> adjacency() const;
  Eigen::MatrixXd dense_adjacency() const;
  /// Weighted degree of every node (self-loop weight counted once).
  Eigen::VectorXd degrees() const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

/**
 * @brief A fixed node set observed over T time-ordered weighted snapshots.
 */
struct DynamicGraph {
  std::vector<WeightedGraph> snapshots;

  int num_nodes() const { return snapshots.empty() ? 0 : snapshots.front().num_nodes(); }
  int num_steps() const { return static_cast<int>(snapshots.size()); }
  /// Throws ShapeError unless T >= 1 and all snapshots share one node count.
  void validate() const;

  friend bool operator==(const DynamicGraph&, const DynamicGraph&) = default;
};

/// Graph Laplacian of a single snapshot, tagged with its kind.
struct Laplacian {
  Eigen::SparseMatrix<double> matrix;
  LaplacianKind kind = LaplacianKind::Combinatorial;

  int size() const { return static_cast<int>(matrix.rows()); }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix); }
};

/// Laplacian of the cycle graph over T timesteps. The T=2 ring degenerates to
/// a single edge of weight 1 ([[1,-1],[-1,1]]), and T=1 to the 1x1 zero matrix.
struct TimeRingLaplacian {
  Eigen::SparseMatrix<double> matrix;
  int num_steps = 0;

  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix); }
};

/// NT x NT joint Laplacian L_T (x) I_N + blockdiag{L_{G_t}} in timestep-major
/// layout: block t occupies rows/cols [t*N, (t+1)*N).
struct JointLaplacian {
  Eigen::SparseMatrix<double> matrix;
  int num_nodes = 0;
  int num_steps = 0;
  LaplacianKind kind = LaplacianKind::Combinatorial;

  int size() const { return num_nodes * num_steps; }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix); }
};

/**
 * @brief Builds the graph Laplacian of one snapshot.
 *
 * Combinatorial: D - A with self-loops cancelled. Normalized:
 * I - D^{-1/2} A D^{-1/2} with degrees including self-loop weights;
 * degree-0 nodes get an all-zero row/column (diagonal 0).
 */
Laplacian build_laplacian(const WeightedGraph& g, LaplacianKind kind);

/// Dense-adjacency convenience overload; validates symmetry (SymmetryError)
/// and the weight domain (DomainError) before building.
Laplacian build_laplacian(const Eigen::MatrixXd& adjacency, LaplacianKind kind);

/// Circulant ring Laplacian over T timesteps; DomainError for T < 1.
TimeRingLaplacian build_time_ring_laplacian(int num_steps);

/// Eigenvalues of the time ring ordered by DFT row index k:
/// 2 - 2cos(2*pi*k/T) for T >= 3, {0, 2} for T = 2, {0} for T = 1.
Eigen::VectorXd time_ring_eigenvalues(int num_steps);

/// Joint Laplacian of a dynamic graph (see JointLaplacian for the layout).
JointLaplacian build_joint_laplacian(const DynamicGraph& dg,
                                     LaplacianKind kind = LaplacianKind::Combinatorial);

/**
 * @brief 2-Dirichlet form S_2 of a time-vertex signal, by direct edge sums.
 *
 * Sums w*(x[u,t]-x[v,t])^2 over each undirected graph edge once per timestep
 * plus (x[i,t]-x[i,t'])^2 over each time-ring edge (t,t') once per node, so it
 * equals vec(X)^T L_JD vec(X) for the combinatorial joint Laplacian without
 * ever forming L_JD. X is N x T; ShapeError on dimension mismatch.
 */
double dirichlet_s2(const DynamicGraph& dg, const Eigen::MatrixXd& x);

/// Largest Frobenius norm of a consecutive snapshot Laplacian difference
/// L_{G_{t+1}} - L_{G_t} (no wrap-around); 0 for a single snapshot. The
/// drift constant the perturbation bounds are stated in.
double max_laplacian_step(const DynamicGraph& dg,
                          LaplacianKind kind = LaplacianKind::Combinatorial);

/// Adds uniform(-eps, eps) jitter to every edge weight (clamped at 0), for
/// breaking exact eigenvalue degeneracies before basis comparisons.
DynamicGraph jitter_weights(const DynamicGraph& dg, double eps = 1e-9,
                            std::uint64_t seed = 0);

/// Timestep-major vectorization: vec(X)[t*N + i] = X(i, t).
inline Eigen::VectorXd vectorize(const Eigen::MatrixXd& x) { return x.reshaped(); }
inline Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& x) { return x.reshaped(); }

inline Eigen::MatrixXd unvectorize(const Eigen::VectorXd& v, int n, int t) {
  return Eigen::Map<const Eigen::MatrixXd>(v.data(), n, t);
}
inline Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, int n, int t) {
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), n, t);
}

}  // namespace eft
