#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "eft/graph.hpp"

namespace eft {

/// Largest dense NT x NT object the library will materialize unless forced.
inline constexpr int kDenseSizeGuard = 4096;

/**
 * @brief Eigenbasis of one snapshot Laplacian.
 *
 * Rows of `vectors` are eigenvectors, ordered by ascending eigenvalue, with
 * the sign convention that each row's largest-magnitude entry is positive
 * (ties broken by lowest column index).
 */
struct GftBasis {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd vectors;
  LaplacianKind kind = LaplacianKind::Combinatorial;
};

/// Unitary DFT basis: vectors(k, t) = exp(-i*2*pi*k*t/T)/sqrt(T).
struct DftBasis {
  Eigen::MatrixXcd vectors;
  Eigen::VectorXd frequencies;  // 2*pi*k/T
};

/**
 * @brief Time-vertex frequency coefficients.
 *
 * values(i, j) is the coefficient at graph-frequency index i (per-timestep
 * ascending eigenvalue order) and time-frequency index j (DFT bin).
 * graph_freqs column t holds the eigenvalue grid of snapshot t.
 */
struct EftCoefficients {
  Eigen::MatrixXcd values;
  Eigen::MatrixXd graph_freqs;
  Eigen::VectorXd time_freqs;
};

/// Exact eigenbasis of the joint Laplacian (rows = eigenvectors, ascending
/// eigenvalues, same sign convention as GftBasis). The oracle every
/// approximate transform is compared against.
struct AdBasis {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd vectors;
  int num_nodes = 0;
  int num_steps = 0;
  LaplacianKind kind = LaplacianKind::Combinatorial;
};

/// Which side of the Einstein contraction is evaluated first in the forward
/// transform; both orders give identical results (the contraction is
/// associative) and TimeFirst exists to verify exactly that.
enum class ContractionOrder { GraphFirst, TimeFirst };

GftBasis gft_basis(const Laplacian& lap);

/// Per-snapshot bases of a dynamic graph, in timestep order.
std::vector<GftBasis> gft_bases(const DynamicGraph& dg,
                                LaplacianKind kind = LaplacianKind::Combinatorial);

DftBasis dft_basis(int num_steps);

/**
 * @brief Forward transform: each timestep column through its own snapshot
 * basis, then a unitary DFT along the time axis.
 */
EftCoefficients eft_forward(const DynamicGraph& dg, const Eigen::MatrixXd& x,
                            LaplacianKind kind = LaplacianKind::Combinatorial,
                            ContractionOrder order = ContractionOrder::GraphFirst);
EftCoefficients eft_forward(const DynamicGraph& dg, const Eigen::MatrixXcd& x,
                            LaplacianKind kind = LaplacianKind::Combinatorial,
                            ContractionOrder order = ContractionOrder::GraphFirst);
/// Variant over precomputed bases (shared across calls).
EftCoefficients eft_forward(const std::vector<GftBasis>& bases, const Eigen::MatrixXcd& x,
                            ContractionOrder order = ContractionOrder::GraphFirst);

/// Inverse transform: unitary inverse DFT along time, then each column back
/// through the transpose of its snapshot basis. Exact inverse of eft_forward.
Eigen::MatrixXcd eft_inverse(const DynamicGraph& dg, const EftCoefficients& c,
                             LaplacianKind kind = LaplacianKind::Combinatorial);
Eigen::MatrixXcd eft_inverse(const std::vector<GftBasis>& bases, const Eigen::MatrixXcd& values);

/// Full EVD of the joint Laplacian. Guarded to size() <= kDenseSizeGuard
/// unless force_dense (SizeGuardError).
AdBasis ad_basis(const JointLaplacian& joint, bool force_dense = false);

/**
 * @brief Materialized NT x NT transform matrix:
 * (Psi_D)[j*N+i, k*N+m] = Psi_T(j,k) * Psi_{G_k}(i,m), so that
 * Psi_D * vec(X) = vec(eft_forward(X)). Guarded like ad_basis.
 */
Eigen::MatrixXcd eft_matrix(const DynamicGraph& dg,
                            LaplacianKind kind = LaplacianKind::Combinatorial,
                            bool force_dense = false);

/**
 * @brief Alignment of basis B onto basis A, permitted within groups of nearly
 * equal eigenvalues.
 *
 * Rows are grouped by eigenvalue proximity (adjacent sorted eigenvalues closer
 * than group_tol in either input stay in one group). Inside each group, rows
 * of B are greedily matched to rows of A by largest |inner product| and phase
 * (sign, for real bases) flipped to positive correlation. `difference` is the
 * Frobenius norm of A minus aligned B, where degenerate groups are aligned by
 * their best unitary mixing (subspace comparison), so exactly degenerate
 * eigenspaces spanning the same subspace contribute 0.
 */
struct BasisAlignment {
  std::vector<int> permutation;  // permutation[r] = row of B matched to row r of A
  Eigen::VectorXcd phases;       // unit-modulus factor applied to B's matched row
  double difference = 0.0;
};

BasisAlignment align_bases(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                           const Eigen::VectorXd& eig_a, const Eigen::VectorXd& eig_b,
                           double group_tol = 1e-6);
BasisAlignment align_bases(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                           const Eigen::VectorXd& eig_a, const Eigen::VectorXd& eig_b,
                           double group_tol = 1e-6);

/**
 * @brief Residual of the joint-eigenvector candidate built from snapshot
 * eigenvectors tracked across time.
 *
 * y[t*N + i] = Psi_T(k, t) * z_l^t[i], where z_l^0 is the l-th eigenvector of
 * snapshot 0 and z_l^t follows it through later snapshots by maximal |inner
 * product| (sign-aligned). residual = ||L_JD y - (mu_k + lambda_l^0) y|| / ||y||.
 */
struct PseudospectrumResult {
  double residual = 0.0;
  double reference = 0.0;  // mu_k + lambda_l^0
  double delta = 0.0;      // max_t ||L_{G_{t+1}} - L_{G_t}||_F
  double bound = 0.0;      // delta * N * T^2
};

PseudospectrumResult pseudospectrum_residual(const DynamicGraph& dg, int k, int l,
                                             LaplacianKind kind = LaplacianKind::Combinatorial);

/// All (k, l) residuals at once (row = graph index l, column = time index k),
/// sharing one set of bases; equals the per-pair operation entry-wise.
Eigen::MatrixXd pseudospectrum_residuals(const DynamicGraph& dg,
                                         LaplacianKind kind = LaplacianKind::Combinatorial);

}  // namespace eft
