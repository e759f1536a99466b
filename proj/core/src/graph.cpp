#include "eft/graph.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace eft {

namespace {

std::string edge_str(int u, int v) {
  return "(" + std::to_string(u) + ", " + std::to_string(v) + ")";
}

}  // namespace

WeightedGraph::WeightedGraph(int num_nodes, std::vector<Edge> edges) : n_(num_nodes) {
  if (num_nodes < 1) throw DomainError("graph needs at least one node");
  for (auto& e : edges) {
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
      throw DomainError("edge " + edge_str(e.u, e.v) + " out of range for n=" +
                        std::to_string(n_));
    if (!std::isfinite(e.w) || e.w < 0.0)
      throw DomainError("edge " + edge_str(e.u, e.v) + " has invalid weight " +
                        std::to_string(e.w));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  edges_.reserve(edges.size());
  for (const auto& e : edges) {
    if (!edges_.empty() && edges_.back().u == e.u && edges_.back().v == e.v) {
      if (edges_.back().w != e.w)
        throw SymmetryError("conflicting weights for edge " + edge_str(e.u, e.v) + ": " +
                            std::to_string(edges_.back().w) + " vs " + std::to_string(e.w));
      continue;
    }
    edges_.push_back(e);
  }
}

WeightedGraph WeightedGraph::from_dense(const Eigen::MatrixXd& adjacency) {
  if (adjacency.rows() != adjacency.cols())
    throw ShapeError("adjacency matrix must be square");
  const int n = static_cast<int>(adjacency.rows());
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u; v < n; ++v) {
      const double w = adjacency(u, v);
      if (w != adjacency(v, u))
        throw SymmetryError("adjacency asymmetric at " + edge_str(u, v) + ": " +
                            std::to_string(w) + " vs " + std::to_string(adjacency(v, u)));
      if (!std::isfinite(w) || w < 0.0)
        throw DomainError("adjacency entry " + edge_str(u, v) + " has invalid weight " +
                          std::to_string(w));
      if (w != 0.0) edges.push_back({u, v, w});
    }
  }
  return WeightedGraph(n, std::move(edges));
}

Eigen::SparseMatrix<double> WeightedGraph::adjacency() const {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(edges_.size() * 2);
  for (const auto& e : edges_) {
    trips.emplace_back(e.u, e.v, e.w);
    if (e.u != e.v) trips.emplace_back(e.v, e.u, e.w);
  }
  Eigen::SparseMatrix<double> a(n_, n_);
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

Eigen::MatrixXd WeightedGraph::dense_adjacency() const {
  return Eigen::MatrixXd(adjacency());
}

Eigen::VectorXd WeightedGraph::degrees() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n_);
  for (const auto& e : edges_) {
    if (e.u == e.v) {
      d[e.u] += e.w;
    } else {
      d[e.u] += e.w;
      d[e.v] += e.w;
    }
  }
  return d;
}

void DynamicGraph::validate() const {
  if (snapshots.empty()) throw ShapeError("dynamic graph needs at least one snapshot");
  const int n = snapshots.front().num_nodes();
  for (std::size_t t = 1; t < snapshots.size(); ++t) {
    if (snapshots[t].num_nodes() != n)
      throw ShapeError("snapshot " + std::to_string(t) + " has " +
                       std::to_string(snapshots[t].num_nodes()) + " nodes, expected " +
                       std::to_string(n));
  }
}

Laplacian build_laplacian(const WeightedGraph& g, LaplacianKind kind) {
  const int n = g.num_nodes();
  std::vector<Eigen::Triplet<double>> trips;

  if (kind == LaplacianKind::Combinatorial) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    for (const auto& e : g.edges()) {
      if (e.u == e.v) continue;  // self-loops cancel in D - A
      diag[e.u] += e.w;
      diag[e.v] += e.w;
      trips.emplace_back(e.u, e.v, -e.w);
      trips.emplace_back(e.v, e.u, -e.w);
    }
    for (int i = 0; i < n; ++i)
      if (diag[i] != 0.0) trips.emplace_back(i, i, diag[i]);
  } else {
    const Eigen::VectorXd d = g.degrees();
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
      if (d[i] > 0.0) diag[i] = 1.0;
    for (const auto& e : g.edges()) {
      const double scale = std::sqrt(d[e.u] * d[e.v]);
      if (scale <= 0.0) continue;
      if (e.u == e.v) {
        diag[e.u] -= e.w / scale;
      } else {
        trips.emplace_back(e.u, e.v, -e.w / scale);
        trips.emplace_back(e.v, e.u, -e.w / scale);
      }
    }
    for (int i = 0; i < n; ++i)
      if (diag[i] != 0.0) trips.emplace_back(i, i, diag[i]);
  }

  Laplacian lap;
  lap.kind = kind;
  lap.matrix.resize(n, n);
  lap.matrix.setFromTriplets(trips.begin(), trips.end());
  return lap;
}

Laplacian build_laplacian(const Eigen::MatrixXd& adjacency, LaplacianKind kind) {
  return build_laplacian(WeightedGraph::from_dense(adjacency), kind);
}

TimeRingLaplacian build_time_ring_laplacian(int num_steps) {
  if (num_steps < 1) throw DomainError("time ring needs at least one timestep");
  TimeRingLaplacian ring;
  ring.num_steps = num_steps;
  ring.matrix.resize(num_steps, num_steps);
  if (num_steps == 1) return ring;  // single node, no edge

  std::vector<Eigen::Triplet<double>> trips;
  if (num_steps == 2) {
    trips = {{0, 0, 1.0}, {1, 1, 1.0}, {0, 1, -1.0}, {1, 0, -1.0}};
  } else {
    for (int t = 0; t < num_steps; ++t) {
      const int next = (t + 1) % num_steps;
      trips.emplace_back(t, t, 2.0);
      trips.emplace_back(t, next, -1.0);
      trips.emplace_back(next, t, -1.0);
    }
  }
  ring.matrix.setFromTriplets(trips.begin(), trips.end());
  return ring;
}

Eigen::VectorXd time_ring_eigenvalues(int num_steps) {
  if (num_steps < 1) throw DomainError("time ring needs at least one timestep");
  Eigen::VectorXd mu(num_steps);
  if (num_steps == 1) {
    mu[0] = 0.0;
  } else if (num_steps == 2) {
    mu[0] = 0.0;
    mu[1] = 2.0;
  } else {
    for (int k = 0; k < num_steps; ++k)
      mu[k] = 2.0 - 2.0 * std::cos(2.0 * M_PI * k / num_steps);
  }
  return mu;
}

JointLaplacian build_joint_laplacian(const DynamicGraph& dg, LaplacianKind kind) {
  dg.validate();
  const int n = dg.num_nodes();
  const int t = dg.num_steps();

  std::vector<Eigen::Triplet<double>> trips;
  for (int s = 0; s < t; ++s) {
    const Laplacian lap = build_laplacian(dg.snapshots[s], kind);
    const int off = s * n;
    for (int k = 0; k < lap.matrix.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(lap.matrix, k); it; ++it)
        trips.emplace_back(off + static_cast<int>(it.row()), off + static_cast<int>(it.col()),
                           it.value());
  }
  const TimeRingLaplacian ring = build_time_ring_laplacian(t);
  for (int k = 0; k < ring.matrix.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(ring.matrix, k); it; ++it)
      for (int i = 0; i < n; ++i)
        trips.emplace_back(static_cast<int>(it.row()) * n + i,
                           static_cast<int>(it.col()) * n + i, it.value());

  JointLaplacian joint;
  joint.num_nodes = n;
  joint.num_steps = t;
  joint.kind = kind;
  joint.matrix.resize(n * t, n * t);
  joint.matrix.setFromTriplets(trips.begin(), trips.end());
  return joint;
}

double dirichlet_s2(const DynamicGraph& dg, const Eigen::MatrixXd& x) {
  dg.validate();
  const int n = dg.num_nodes();
  const int t = dg.num_steps();
  if (x.rows() != n || x.cols() != t)
    throw ShapeError("signal is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                     ", expected " + std::to_string(n) + "x" + std::to_string(t));

  double s2 = 0.0;
  for (int s = 0; s < t; ++s)
    for (const auto& e : dg.snapshots[s].edges()) {
      if (e.u == e.v) continue;
      const double d = x(e.u, s) - x(e.v, s);
      s2 += e.w * d * d;
    }

  // Each ring edge once: T-1 -> 0 wraps for T >= 3, T = 2 has the single edge.
  if (t >= 2) {
    const int last = (t == 2) ? 1 : t;
    for (int s = 0; s < last; ++s) {
      const int next = (s + 1) % t;
      s2 += (x.col(s) - x.col(next)).squaredNorm();
    }
  }
  return s2;
}

double max_laplacian_step(const DynamicGraph& dg, LaplacianKind kind) {
  dg.validate();
  double delta = 0.0;
  for (int s = 0; s + 1 < dg.num_steps(); ++s) {
    const Eigen::SparseMatrix<double> d = build_laplacian(dg.snapshots[s + 1], kind).matrix -
                                          build_laplacian(dg.snapshots[s], kind).matrix;
    delta = std::max(delta, d.norm());
  }
  return delta;
}

DynamicGraph jitter_weights(const DynamicGraph& dg, double eps, std::uint64_t seed) {
  dg.validate();
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw DomainError("jitter eps must be >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-eps, eps);
  DynamicGraph out;
  out.snapshots.reserve(dg.snapshots.size());
  for (const auto& g : dg.snapshots) {
    std::vector<Edge> edges = g.edges();
    for (auto& e : edges) e.w = std::max(0.0, e.w + u(rng));
    out.snapshots.emplace_back(g.num_nodes(), std::move(edges));
  }
  return out;
}

}  // namespace eft
