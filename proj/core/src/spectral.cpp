#include "eft/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eig.hpp"
#include "fft.hpp"

namespace eft {

namespace {

using Cd = std::complex<double>;

void check_signal_shape(int n, int t, Eigen::Index rows, Eigen::Index cols) {
  if (rows != n || cols != t)
    throw ShapeError("signal is " + std::to_string(rows) + "x" + std::to_string(cols) +
                     ", expected " + std::to_string(n) + "x" + std::to_string(t));
}

Eigen::VectorXd time_freq_grid(int t) {
  Eigen::VectorXd f(t);
  for (int k = 0; k < t; ++k) f[k] = 2.0 * M_PI * k / t;
  return f;
}

Eigen::MatrixXd graph_freq_grid(const std::vector<GftBasis>& bases) {
  const int t = static_cast<int>(bases.size());
  const int n = static_cast<int>(bases.front().eigenvalues.size());
  Eigen::MatrixXd grid(n, t);
  for (int s = 0; s < t; ++s) grid.col(s) = bases[s].eigenvalues;
  return grid;
}

// B real, x complex: B*x evaluated on the real and imaginary parts separately.
Eigen::VectorXcd real_times_complex(const Eigen::MatrixXd& b, const Eigen::VectorXcd& x) {
  const Eigen::VectorXd re = b * x.real();
  const Eigen::VectorXd im = b * x.imag();
  return re + Cd(0.0, 1.0) * im;
}

}  // namespace

GftBasis gft_basis(const Laplacian& lap) {
  detail::SymEig eig = detail::sym_eig(lap.dense());
  GftBasis basis;
  basis.kind = lap.kind;
  basis.eigenvalues = std::move(eig.eigenvalues);
  basis.vectors = eig.vectors.transpose();
  detail::sign_fix_rows(basis.vectors);
  return basis;
}

std::vector<GftBasis> gft_bases(const DynamicGraph& dg, LaplacianKind kind) {
  dg.validate();
  std::vector<GftBasis> bases;
  bases.reserve(dg.snapshots.size());
  for (const auto& g : dg.snapshots) bases.push_back(gft_basis(build_laplacian(g, kind)));
  return bases;
}

DftBasis dft_basis(int num_steps) {
  if (num_steps < 1) throw DomainError("DFT basis needs at least one timestep");
  DftBasis basis;
  basis.vectors.resize(num_steps, num_steps);
  const double scale = 1.0 / std::sqrt(static_cast<double>(num_steps));
  for (int k = 0; k < num_steps; ++k)
    for (int t = 0; t < num_steps; ++t)
      basis.vectors(k, t) = std::polar(scale, -2.0 * M_PI * k * t / num_steps);
  basis.frequencies = time_freq_grid(num_steps);
  return basis;
}

EftCoefficients eft_forward(const std::vector<GftBasis>& bases, const Eigen::MatrixXcd& x,
                            ContractionOrder order) {
  if (bases.empty()) throw ShapeError("no snapshot bases supplied");
  const int t = static_cast<int>(bases.size());
  const int n = static_cast<int>(bases.front().vectors.rows());
  check_signal_shape(n, t, x.rows(), x.cols());

  EftCoefficients c;
  if (order == ContractionOrder::GraphFirst) {
    c.values.resize(n, t);
    for (int s = 0; s < t; ++s) c.values.col(s) = real_times_complex(bases[s].vectors, x.col(s));
    detail::dft_rows_inplace(c.values, true);
  } else {
    // Same contraction with the time transform applied before the vertex-index
    // sum: each source node's basis-entry-modulated series is transformed
    // first, then accumulated. Verification path; costs N times the other one.
    c.values = Eigen::MatrixXcd::Zero(n, t);
    Eigen::MatrixXcd contrib(n, t);
    for (int m = 0; m < n; ++m) {
      for (int s = 0; s < t; ++s) contrib.col(s) = bases[s].vectors.col(m) * x(m, s);
      detail::dft_rows_inplace(contrib, true);
      c.values += contrib;
    }
  }
  c.graph_freqs = graph_freq_grid(bases);
  c.time_freqs = time_freq_grid(t);
  return c;
}

EftCoefficients eft_forward(const DynamicGraph& dg, const Eigen::MatrixXcd& x,
                            LaplacianKind kind, ContractionOrder order) {
  return eft_forward(gft_bases(dg, kind), x, order);
}

EftCoefficients eft_forward(const DynamicGraph& dg, const Eigen::MatrixXd& x,
                            LaplacianKind kind, ContractionOrder order) {
  const std::vector<GftBasis> bases = gft_bases(dg, kind);
  const int t = static_cast<int>(bases.size());
  const int n = static_cast<int>(bases.front().vectors.rows());
  check_signal_shape(n, t, x.rows(), x.cols());

  if (order != ContractionOrder::GraphFirst) return eft_forward(bases, x.cast<Cd>(), order);

  EftCoefficients c;
  Eigen::MatrixXd y(n, t);
  for (int s = 0; s < t; ++s) y.col(s).noalias() = bases[s].vectors * x.col(s);
  c.values = y.cast<Cd>();
  detail::dft_rows_inplace(c.values, true);
  c.graph_freqs = graph_freq_grid(bases);
  c.time_freqs = time_freq_grid(t);
  return c;
}

Eigen::MatrixXcd eft_inverse(const std::vector<GftBasis>& bases, const Eigen::MatrixXcd& values) {
  if (bases.empty()) throw ShapeError("no snapshot bases supplied");
  const int t = static_cast<int>(bases.size());
  const int n = static_cast<int>(bases.front().vectors.rows());
  check_signal_shape(n, t, values.rows(), values.cols());

  Eigen::MatrixXcd y = values;
  detail::dft_rows_inplace(y, false);
  Eigen::MatrixXcd x(n, t);
  for (int s = 0; s < t; ++s)
    x.col(s) = real_times_complex(bases[s].vectors.transpose(), y.col(s));
  return x;
}

Eigen::MatrixXcd eft_inverse(const DynamicGraph& dg, const EftCoefficients& c,
                             LaplacianKind kind) {
  return eft_inverse(gft_bases(dg, kind), c.values);
}

AdBasis ad_basis(const JointLaplacian& joint, bool force_dense) {
  const int size = joint.size();
  if (size < 1) throw ShapeError("empty joint Laplacian");
  if (size > kDenseSizeGuard && !force_dense)
    throw SizeGuardError("joint basis of size " + std::to_string(size) +
                         " exceeds the dense guard of " + std::to_string(kDenseSizeGuard) +
                         " (pass force_dense to override)");
  detail::SymEig eig = detail::sym_eig(joint.dense());
  AdBasis basis;
  basis.num_nodes = joint.num_nodes;
  basis.num_steps = joint.num_steps;
  basis.kind = joint.kind;
  basis.eigenvalues = std::move(eig.eigenvalues);
  basis.vectors = eig.vectors.transpose();
  detail::sign_fix_rows(basis.vectors);
  return basis;
}

Eigen::MatrixXcd eft_matrix(const DynamicGraph& dg, LaplacianKind kind, bool force_dense) {
  dg.validate();
  const int n = dg.num_nodes();
  const int t = dg.num_steps();
  const int size = n * t;
  if (size > kDenseSizeGuard && !force_dense)
    throw SizeGuardError("transform matrix of size " + std::to_string(size) +
                         " exceeds the dense guard of " + std::to_string(kDenseSizeGuard) +
                         " (pass force_dense to override)");

  const std::vector<GftBasis> bases = gft_bases(dg, kind);
  const DftBasis dft = dft_basis(t);
  Eigen::MatrixXcd psi(size, size);
  for (int j = 0; j < t; ++j)
    for (int k = 0; k < t; ++k)
      psi.block(j * n, k * n, n, n) = dft.vectors(j, k) * bases[k].vectors;
  return psi;
}

namespace {

struct SortedEigs {
  std::vector<int> order;      // position -> original row
  Eigen::VectorXd sorted;      // ascending eigenvalues
};

SortedEigs sort_eigs(const Eigen::VectorXd& eig) {
  SortedEigs s;
  s.order.resize(eig.size());
  std::iota(s.order.begin(), s.order.end(), 0);
  std::stable_sort(s.order.begin(), s.order.end(),
                   [&](int i, int j) { return eig[i] < eig[j]; });
  s.sorted.resize(eig.size());
  for (Eigen::Index p = 0; p < eig.size(); ++p) s.sorted[p] = eig[s.order[p]];
  return s;
}

}  // namespace

BasisAlignment align_bases(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                           const Eigen::VectorXd& eig_a, const Eigen::VectorXd& eig_b,
                           double group_tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("bases differ in shape");
  const int rows = static_cast<int>(a.rows());
  if (eig_a.size() != rows || eig_b.size() != rows)
    throw ShapeError("eigenvalue vectors must have one entry per basis row");

  const SortedEigs sa = sort_eigs(eig_a);
  const SortedEigs sb = sort_eigs(eig_b);

  BasisAlignment out;
  out.permutation.assign(rows, 0);
  out.phases = Eigen::VectorXcd::Ones(rows);

  double diff_sq = 0.0;
  int lo = 0;
  while (lo < rows) {
    int hi = lo + 1;
    while (hi < rows && (sa.sorted[hi] - sa.sorted[hi - 1] <= group_tol ||
                         sb.sorted[hi] - sb.sorted[hi - 1] <= group_tol))
      ++hi;
    const int g = hi - lo;

    std::vector<bool> used(g, false);
    std::vector<int> matched(g, 0);
    for (int p = 0; p < g; ++p) {
      const int ra = sa.order[lo + p];
      double best_abs = -1.0;
      int best_q = -1;
      Cd best_h = 1.0;
      for (int q = 0; q < g; ++q) {
        if (used[q]) continue;
        const int rb = sb.order[lo + q];
        const Cd h = (a.row(ra).array() * b.row(rb).array().conjugate()).sum();
        if (std::abs(h) > best_abs) {
          best_abs = std::abs(h);
          best_q = q;
          best_h = h;
        }
      }
      used[best_q] = true;
      matched[p] = best_q;
      const int rb = sb.order[lo + best_q];
      out.permutation[ra] = rb;
      out.phases[ra] = best_abs > 1e-300 ? best_h / std::abs(best_h) : Cd(1.0, 0.0);
    }

    if (g == 1) {
      const int ra = sa.order[lo];
      const int rb = sb.order[lo];
      diff_sq += (a.row(ra) - out.phases[ra] * b.row(rb)).squaredNorm();
    } else {
      // Degenerate group: individual eigenvectors are not unique, so compare
      // the spanned subspaces through the best unitary mixing of B's rows.
      Eigen::MatrixXcd ag(g, a.cols()), bg(g, a.cols());
      for (int p = 0; p < g; ++p) {
        ag.row(p) = a.row(sa.order[lo + p]);
        bg.row(p) = b.row(sb.order[lo + p]);
      }
      const Eigen::MatrixXcd m = ag * bg.adjoint();
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const Eigen::MatrixXcd w = svd.matrixU() * svd.matrixV().adjoint();
      diff_sq += (ag - w * bg).squaredNorm();
    }
    lo = hi;
  }
  out.difference = std::sqrt(diff_sq);
  return out;
}

BasisAlignment align_bases(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                           const Eigen::VectorXd& eig_a, const Eigen::VectorXd& eig_b,
                           double group_tol) {
  return align_bases(Eigen::MatrixXcd(a.cast<Cd>()), Eigen::MatrixXcd(b.cast<Cd>()), eig_a,
                     eig_b, group_tol);
}

namespace {

// z_l^t for all t: follow row l of snapshot 0 through later snapshots by
// maximal |inner product|, sign-aligned to the previous step.
Eigen::MatrixXd track_eigenvector(const std::vector<GftBasis>& bases, int l) {
  const int t = static_cast<int>(bases.size());
  const int n = static_cast<int>(bases.front().vectors.rows());
  Eigen::MatrixXd z(n, t);
  z.col(0) = bases[0].vectors.row(l).transpose();
  for (int s = 1; s < t; ++s) {
    const Eigen::VectorXd overlaps = bases[s].vectors * z.col(s - 1);
    Eigen::Index best = 0;
    overlaps.cwiseAbs().maxCoeff(&best);
    const double sign = overlaps[best] < 0.0 ? -1.0 : 1.0;
    z.col(s) = sign * bases[s].vectors.row(best).transpose();
  }
  return z;
}

double candidate_residual(const JointLaplacian& joint, const Eigen::MatrixXd& z, int k,
                          double reference) {
  const int n = joint.num_nodes;
  const int t = joint.num_steps;
  const double scale = 1.0 / std::sqrt(static_cast<double>(t));
  Eigen::VectorXd yr(n * t), yi(n * t);
  for (int s = 0; s < t; ++s) {
    const double angle = -2.0 * M_PI * k * s / t;
    yr.segment(s * n, n) = scale * std::cos(angle) * z.col(s);
    yi.segment(s * n, n) = scale * std::sin(angle) * z.col(s);
  }
  const Eigen::VectorXd rr = joint.matrix * yr - reference * yr;
  const Eigen::VectorXd ri = joint.matrix * yi - reference * yi;
  const double norm_y = std::sqrt(yr.squaredNorm() + yi.squaredNorm());
  return std::sqrt(rr.squaredNorm() + ri.squaredNorm()) / norm_y;
}

}  // namespace

PseudospectrumResult pseudospectrum_residual(const DynamicGraph& dg, int k, int l,
                                             LaplacianKind kind) {
  dg.validate();
  const int n = dg.num_nodes();
  const int t = dg.num_steps();
  if (k < 0 || k >= t) throw DomainError("time index " + std::to_string(k) + " out of range");
  if (l < 0 || l >= n) throw DomainError("graph index " + std::to_string(l) + " out of range");

  const std::vector<GftBasis> bases = gft_bases(dg, kind);
  const JointLaplacian joint = build_joint_laplacian(dg, kind);
  const Eigen::VectorXd mu = time_ring_eigenvalues(t);
  const Eigen::MatrixXd z = track_eigenvector(bases, l);

  PseudospectrumResult res;
  res.reference = mu[k] + bases[0].eigenvalues[l];
  res.residual = candidate_residual(joint, z, k, res.reference);
  res.delta = max_laplacian_step(dg, kind);
  res.bound = res.delta * n * static_cast<double>(t) * t;
  return res;
}

Eigen::MatrixXd pseudospectrum_residuals(const DynamicGraph& dg, LaplacianKind kind) {
  dg.validate();
  const int n = dg.num_nodes();
  const int t = dg.num_steps();
  const std::vector<GftBasis> bases = gft_bases(dg, kind);
  const JointLaplacian joint = build_joint_laplacian(dg, kind);
  const Eigen::VectorXd mu = time_ring_eigenvalues(t);

  Eigen::MatrixXd residuals(n, t);
  for (int l = 0; l < n; ++l) {
    const Eigen::MatrixXd z = track_eigenvector(bases, l);
    const double lambda0 = bases[0].eigenvalues[l];
    for (int k = 0; k < t; ++k)
      residuals(l, k) = candidate_residual(joint, z, k, mu[k] + lambda0);
  }
  return residuals;
}

}  // namespace eft
