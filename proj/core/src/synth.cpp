#include "eft/synth.hpp"

#include <numeric>
#include <random>
#include <string>

#include "eft/spectral.hpp"

namespace eft {

namespace {

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

void SynthConfig::validate() const {
  if (n < 2) throw DomainError("need at least two nodes");
  if (t < 2) throw DomainError("need at least two timesteps");
  for (double s : {perturb_scale, noise_std})
    if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("scales must be finite and >= 0");
  if (!(p_edge > 0.0 && p_edge <= 1.0)) throw DomainError("p_edge must lie in (0, 1]");
  if (!(p_struct >= 0.0 && p_struct < 1.0)) throw DomainError("p_struct must lie in [0, 1)");
  if (alpha.size() != eigvec_index.size())
    throw DomainError("alpha and eigvec_index must have equal length");
  if (beta.size() != omega.size()) throw DomainError("beta and omega must have equal length");
  for (int idx : eigvec_index)
    if (idx < -1) throw DomainError("eigvec_index entries must be >= -1");
  for (double v : alpha)
    if (!std::isfinite(v)) throw DomainError("alpha entries must be finite");
  for (double v : beta)
    if (!std::isfinite(v)) throw DomainError("beta entries must be finite");
  for (double v : omega)
    if (!std::isfinite(v)) throw DomainError("omega entries must be finite");
}

DynamicGraph gen_evolving_graph(const SynthConfig& cfg) {
  cfg.validate();
  const int n = cfg.n;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::bernoulli_distribution keep(cfg.p_edge);

  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> present(n, n);
  present.setConstant(false);
  Eigen::MatrixXd weight = Eigen::MatrixXd::Zero(n, n);

  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (keep(rng)) {
        present(u, v) = true;
        weight(u, v) = std::abs(normal(rng));
      }

  // Patch the skeleton to one component so the constant vector is the unique
  // zero-eigenvalue direction of every combinatorial snapshot.
  UnionFind uf(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (present(u, v)) uf.unite(u, v);
  int root = uf.find(0);
  for (int v = 1; v < n; ++v)
    if (uf.find(v) != root) {
      uf.unite(root, v);
      present(0, v) = true;
      weight(0, v) = std::abs(normal(rng));
      root = uf.find(0);
    }

  auto snapshot = [&]() {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (present(u, v)) edges.push_back({u, v, weight(u, v)});
    return WeightedGraph(n, std::move(edges));
  };

  DynamicGraph dg;
  dg.snapshots.reserve(cfg.t);
  dg.snapshots.push_back(snapshot());

  std::bernoulli_distribution toggle(cfg.p_struct);
  for (int s = 1; s < cfg.t; ++s) {
    // One standard normal per present edge, scaled afterwards: configs that
    // differ only in perturb_scale share the same underlying draws.
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (present(u, v)) {
          const double z = normal(rng);
          weight(u, v) = std::max(0.0, weight(u, v) + cfg.perturb_scale * z);
        }
    if (cfg.p_struct > 0.0)
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (toggle(rng)) {
            present(u, v) = !present(u, v);
            weight(u, v) = present(u, v) ? std::abs(normal(rng)) : 0.0;
          }
    dg.snapshots.push_back(snapshot());
  }
  return dg;
}

SignalPair gen_signal(const SynthConfig& cfg, const DynamicGraph& dg) {
  cfg.validate();
  dg.validate();
  const int n = dg.num_nodes();
  const int t = dg.num_steps();

  // Sentinel -1 draws a non-trivial index from a stream of its own, so adding
  // noise components does not shift which eigenvector a seed picks.
  std::mt19937_64 pick(cfg.seed ^ 0xD1B54A32D192ED03ull);
  std::uniform_int_distribution<int> uniform_index(std::min(1, n - 1), n - 1);
  std::vector<int> indices(cfg.eigvec_index.size());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const int idx = cfg.eigvec_index[k] == -1 ? uniform_index(pick) : cfg.eigvec_index[k];
    if (idx >= n)
      throw DomainError("eigvec_index " + std::to_string(idx) + " out of range for n=" +
                        std::to_string(n));
    indices[k] = idx;
  }

  SignalPair out;
  out.clean = Eigen::MatrixXd::Zero(n, t);

  if (!indices.empty()) {
    const std::vector<GftBasis> bases = gft_bases(dg, cfg.kind);
    for (std::size_t k = 0; k < indices.size(); ++k) {
      Eigen::VectorXd prev = bases[0].vectors.row(indices[k]).transpose();
      out.clean.col(0) += cfg.alpha[k] * prev;
      for (int s = 1; s < t; ++s) {
        Eigen::VectorXd v = bases[s].vectors.row(indices[k]).transpose();
        if (prev.dot(v) < 0.0) v = -v;
        out.clean.col(s) += cfg.alpha[k] * v;
        prev = std::move(v);
      }
    }
  }
  for (std::size_t f = 0; f < cfg.beta.size(); ++f)
    for (int s = 0; s < t; ++s)
      out.clean.col(s).array() += cfg.beta[f] * std::cos(cfg.omega[f] * s);

  out.noisy = out.clean;
  if (cfg.noise_std > 0.0) {
    // Separate stream from the graph draws: the same seed pairs one graph
    // with one noise realization without the two generators interleaving.
    std::mt19937_64 rng(cfg.seed ^ 0x9E3779B97F4A7C15ull);
    std::normal_distribution<double> normal(0.0, cfg.noise_std);
    for (int s = 0; s < t; ++s)
      for (int i = 0; i < n; ++i) out.noisy(i, s) += normal(rng);
  }
  return out;
}

DynamicMesh gen_dynamic_mesh(int frames, int resolution) {
  if (resolution < 2) throw DomainError("mesh resolution must be at least 2");
  if (frames < 1) throw DomainError("mesh needs at least one frame");
  const int m = resolution;
  const int n = m * m;

  std::vector<Edge> edges;
  edges.reserve(2 * m * (m - 1));
  auto id = [m](int r, int c) { return r * m + c; };
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      if (c + 1 < m) edges.push_back({id(r, c), id(r, c + 1), 1.0});
      if (r + 1 < m) edges.push_back({id(r, c), id(r + 1, c), 1.0});
    }
  const WeightedGraph grid(n, std::move(edges));

  DynamicMesh mesh;
  mesh.resolution = m;
  mesh.graph.snapshots.assign(frames, grid);
  for (auto& ch : mesh.channels) ch.resize(n, frames);

  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      const int i = id(r, c);
      const double x = static_cast<double>(c) / (m - 1);
      const double y = static_cast<double>(r) / (m - 1);
      for (int f = 0; f < frames; ++f) {
        mesh.channels[0](i, f) = x;
        mesh.channels[1](i, f) = y;
        // Wave travels in +x with an 8-frame period.
        mesh.channels[2](i, f) = 0.2 * std::sin(2.0 * M_PI * (x - f / 8.0));
      }
    }
  return mesh;
}

}  // namespace eft
