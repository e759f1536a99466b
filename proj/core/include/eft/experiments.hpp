#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "eft/graph.hpp"
#include "eft/synth.hpp"

namespace eft {

/// Transform family to compare. EFT is the evolving transform, AD the exact
/// joint-Laplacian eigenbasis, the others drop one of the two axes.
enum class Method { EFT, AD, DFTOnly, GFTOnly };

std::string to_string(Method m);
Method method_from_string(const std::string& name);

struct DenoiseReport {
  Method method = Method::EFT;
  double keep_fraction = 0.0;
  double error = 0.0;  // relative to the clean signal
  std::uint64_t seed = 0;
  SynthConfig config;
};

struct CompactionReport {
  Method method = Method::EFT;
  double percentile_removed = 0.0;
  double error = 0.0;  // relative to the transformed input
  std::uint64_t seed = 0;
};

/// One row of the perturbation probe: how far the factored basis drifts from
/// the exact joint basis as the graph sequence is scaled away from static.
struct BoundReport {
  double perturb_scale = 0.0;
  double diff_norm = 0.0;      // aligned basis difference
  double lipschitz = 0.0;      // max consecutive Laplacian step
  double min_gap_g = 0.0;      // smallest snapshot eigenvalue gap
  double min_gap_j = 0.0;      // smallest joint eigenvalue gap
  double residual_max = 0.0;   // worst tracked-eigenvector residual
  double bound_value = 0.0;    // lipschitz * N * T^2
  double omega_max = 2.0 * M_PI;
  std::uint64_t seed = 0;
};

struct BenchCell {
  std::string op;
  int n = 0;
  int t = 0;
  double seconds = 0.0;
  bool skipped = false;
};

struct BenchSlope {
  std::string op;
  int n = 0;
  double slope = 0.0;  // d log(seconds) / d log(T) over the ran cells
};

struct ScalingBenchReport {
  std::vector<BenchCell> cells;
  std::vector<BenchSlope> slopes;
};

struct PropertyCheck {
  std::string name;
  bool pass = false;
  std::string detail;  // counterexample info when failing, tolerances when passing
};

/// Deliberate defect injected into the property suite to prove the suite can
/// fail: NegatedInverse flips the sign of reconstructed signals.
enum class InjectedFault { None, NegatedInverse };

/**
 * @brief Sparsify-and-reconstruct denoising across methods.
 *
 * For each seed a graph/signal pair is generated from cfg, the noisy signal
 * is transformed per method, all but the top keep_fraction*N*T coefficients
 * by magnitude are zeroed (at least one kept), and the reconstruction error
 * against the clean signal is reported.
 */
std::vector<DenoiseReport> run_denoise(const SynthConfig& cfg,
                                       const std::vector<Method>& methods,
                                       const std::vector<double>& keep_fractions,
                                       const std::vector<std::uint64_t>& seeds);

/**
 * @brief Coefficient compaction curve: drop the smallest p percent of
 * coefficients and reconstruct.
 *
 * error is relative to the input signal itself, so every method starts near 0
 * and ends at exactly 1, and the curve is non-decreasing in p.
 */
std::vector<CompactionReport> run_compaction(const DynamicGraph& dg, const Eigen::MatrixXd& x,
                                             const std::vector<Method>& methods,
                                             const std::vector<double>& percentiles,
                                             std::uint64_t seed = 0);

/// Compaction on the mesh's wave channel, one run per seed with a 5%
/// multiplicative jitter on the edge weights so medians over seeds are
/// meaningful.
std::vector<CompactionReport> run_mesh_compaction(int frames, int resolution,
                                                  const std::vector<Method>& methods,
                                                  const std::vector<double>& percentiles,
                                                  const std::vector<std::uint64_t>& seeds);

/**
 * @brief Perturbation probe behind the drift bounds.
 *
 * scales must contain 0 (the static reference point). For each (seed, scale)
 * the generator runs with that perturb_scale, and the report row carries the
 * aligned distance between the factored transform and the exact joint basis,
 * the Lipschitz constant of the sequence, the spectral gaps, and the worst
 * tracked-eigenvector residual with its bound.
 */
std::vector<BoundReport> run_bound_probe(const SynthConfig& base_cfg,
                                         const std::vector<double>& scales,
                                         const std::vector<std::uint64_t>& seeds);

/**
 * @brief Wall-clock scaling of the factored transform vs the joint EVD.
 *
 * Each grid cell times the full forward transform (per-snapshot EVDs
 * included) and the joint eigenbasis on one generated instance, reporting the
 * median of `repeats` runs. Joint cells beyond the dense guard are marked
 * skipped. Slopes are least-squares fits of log(seconds) against log(T) per
 * op and node count.
 */
ScalingBenchReport run_scaling_bench(const std::vector<int>& n_grid,
                                     const std::vector<int>& t_grid, int repeats);

/// Every module invariant evaluated on seeded random instances, one named
/// line each. The injected fault must flip the reconstruction checks, which
/// is itself checked by tests (a suite that cannot fail proves nothing).
std::vector<PropertyCheck> run_property_suite(std::uint64_t seed,
                                              InjectedFault fault = InjectedFault::None);

}  // namespace eft
