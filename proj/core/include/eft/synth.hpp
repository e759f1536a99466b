#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "eft/errors.hpp"
#include "eft/graph.hpp"

namespace eft {

/// Configuration for the synthetic generators. Everything downstream is a
/// deterministic function of this struct, so experiments replay exactly.
struct SynthConfig {
  int n = 20;
  int t = 32;
  double perturb_scale = 0.05;  // per-step edge weight drift, std dev
  double p_edge = 0.3;          // skeleton edge probability
  double p_struct = 0.0;        // per-step edge toggle probability
  std::vector<double> alpha = {0.5, 0.5};   // snapshot eigenvector amplitudes
  std::vector<int> eigvec_index = {1, 2};   // -1 draws a non-trivial one per seed
  std::vector<double> beta = {0.5, 0.5};    // temporal cosine amplitudes
  std::vector<double> omega = {0.25 * M_PI, 0.375 * M_PI};
  double noise_std = 0.1;
  std::uint64_t seed = 0;
  LaplacianKind kind = LaplacianKind::Combinatorial;

  void validate() const;
};

struct SignalPair {
  Eigen::MatrixXd clean;  // N x T
  Eigen::MatrixXd noisy;
};

/// Regular grid with two static coordinate channels and a travelling wave.
struct DynamicMesh {
  DynamicGraph graph;
  std::array<Eigen::MatrixXd, 3> channels;  // x, y, z; each N x frames
  int resolution = 0;
};

/// @brief Random evolving graph: a fixed Erdos-Renyi skeleton whose edge
/// weights drift as a clamped Gaussian walk.
///
/// Base weights are |N(0,1)|, each step adds N(0, perturb_scale) per edge and
/// clamps at zero. The skeleton is patched to be connected so the zero
/// eigenvalue stays simple. With p_struct > 0 edges also toggle on or off
/// each step. perturb_scale = 0 reproduces the first snapshot exactly.
DynamicGraph gen_evolving_graph(const SynthConfig& cfg);

/// @brief Synthetic signal: tracked snapshot eigenvectors plus global
/// temporal cosines, with optional additive Gaussian noise.
///
/// Eigenvector components keep a fixed index per snapshot and only the sign
/// is aligned to the previous step. The noise stream is decoupled from the
/// graph stream, so the same seed pairs one graph with one noise draw.
SignalPair gen_signal(const SynthConfig& cfg, const DynamicGraph& dg);

/// Square mesh of the given resolution whose z channel carries a sine wave
/// travelling in x with period 8 frames.
DynamicMesh gen_dynamic_mesh(int frames, int resolution);

}  // namespace eft
