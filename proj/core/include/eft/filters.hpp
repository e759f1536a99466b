#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "eft/errors.hpp"
#include "eft/graph.hpp"

namespace eft {

/// Polynomial filter in the Chebyshev basis on [0, lambda_max].
///
/// coeffs[j] multiplies T_j(s) where s = 2*lambda/lambda_max - 1 maps the
/// spectral interval onto [-1, 1]. order is redundant with coeffs.size() but
/// kept explicit so truncation mistakes surface as validation errors.
struct ChebyshevFilter {
  Eigen::VectorXd coeffs;
  int order = 0;
  double lambda_max = 2.0;

  void validate() const;
};

/// Frequency response sampled on the ring spectrum, one entry per bin k.
struct TemporalFilter {
  Eigen::VectorXcd response;
};

enum class PresetKind { LowPass, HighPass, BandPass, BandStop, AllPass };

std::string to_string(PresetKind kind);  // "lowpass", "highpass", ...
PresetKind preset_kind_from_string(const std::string& name);

/// Brick-wall preset on a normalized frequency axis in [0, 1].
///
/// Pass/stop membership uses half-open intervals [low, high): LowPass keeps
/// v < cutoff, HighPass keeps v >= cutoff, BandPass keeps low <= v < high,
/// BandStop suppresses that same interval.
struct FilterPreset {
  PresetKind name = PresetKind::AllPass;
  std::vector<double> cutoffs;  // empty, {cutoff}, or {low, high}

  void validate() const;
};

enum class FilterOrder { VertexFirst, TimeFirst };

struct LambdaMaxEstimate {
  double value = 0.0;
  bool converged = true;
};

/// @brief Apply a Chebyshev polynomial of the Laplacian to each column of x.
///
/// Uses the three-term recurrence on vectors, so the cost is
/// O(order * (|E| + N) * d) sparse matvecs; no dense matrix power is formed.
Eigen::MatrixXd chebyshev_apply(const Laplacian& lap, const ChebyshevFilter& f,
                                const Eigen::MatrixXd& x);

/// Least-squares fit of target at the Chebyshev nodes of the given order.
ChebyshevFilter fit_chebyshev(const std::function<double(double)>& target, int order,
                              double lambda_max);

/// Scalar response of the filter at eigenvalue lambda (Clenshaw evaluation).
double chebyshev_eval(const ChebyshevFilter& f, double lambda);

bool is_conjugate_symmetric(const Eigen::VectorXcd& response, double tol = 1e-12);

/// @brief Pointwise spectral filter along time.
///
/// x is time-major (rows = timesteps, columns = independent signals).
Eigen::MatrixXcd temporal_filter_apply(const TemporalFilter& f, const Eigen::MatrixXcd& x);

/// Real-signal overload; requires a conjugate-symmetric response so the
/// output is real, and throws DomainError otherwise.
Eigen::MatrixXd temporal_filter_apply(const TemporalFilter& f, const Eigen::MatrixXd& x);

/// Evaluate the preset's indicator response on a normalized frequency grid.
Eigen::VectorXd preset_response(const FilterPreset& p, const Eigen::VectorXd& grid);

/// @brief Largest-eigenvalue estimate via power iteration.
///
/// Normalized Laplacians short-circuit to the provable bound 2. Power
/// iteration runs to relative tolerance 1e-6 (at most 500 iterations) and
/// pads the estimate by 1%, so the filter interval always covers the
/// spectrum. On non-convergence the trace bound is returned and converged is
/// cleared.
LambdaMaxEstimate estimate_lambda_max(const Laplacian& lap);

/// @brief Separable joint filter: Chebyshev on each snapshot, pointwise
/// response along time.
///
/// x is node-major (N x T). The vertex stage re-estimates lambda_max per
/// snapshot so the shared coefficients always act on the normalized spectral
/// axis, and each column is filtered with its own snapshot's Laplacian
/// regardless of evaluation order. The temporal response must be
/// conjugate-symmetric. The two orders evaluate the same contraction
/// (vertex stage batched then one time pass, or the time weights spread per
/// source column) and agree to rounding on any snapshot sequence.
Eigen::MatrixXd joint_filter(const DynamicGraph& dg, const Eigen::MatrixXd& x,
                             const ChebyshevFilter& vf, const TemporalFilter& tf,
                             LaplacianKind kind = LaplacianKind::Combinatorial,
                             FilterOrder order = FilterOrder::VertexFirst);

}  // namespace eft
