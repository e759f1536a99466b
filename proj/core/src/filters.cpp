#include "eft/filters.hpp"

#include <cmath>
#include <random>
#include <string>

#include "fft.hpp"

namespace eft {

void ChebyshevFilter::validate() const {
  if (coeffs.size() != order + 1)
    throw ShapeError("filter order " + std::to_string(order) + " needs " +
                     std::to_string(order + 1) + " coefficients, got " +
                     std::to_string(coeffs.size()));
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max))
    throw DomainError("lambda_max must be positive and finite");
  if (!coeffs.allFinite()) throw DomainError("filter coefficients must be finite");
}

std::string to_string(PresetKind kind) {
  switch (kind) {
    case PresetKind::LowPass: return "lowpass";
    case PresetKind::HighPass: return "highpass";
    case PresetKind::BandPass: return "bandpass";
    case PresetKind::BandStop: return "bandstop";
    case PresetKind::AllPass: return "allpass";
  }
  return "allpass";
}

PresetKind preset_kind_from_string(const std::string& name) {
  if (name == "lowpass") return PresetKind::LowPass;
  if (name == "highpass") return PresetKind::HighPass;
  if (name == "bandpass") return PresetKind::BandPass;
  if (name == "bandstop") return PresetKind::BandStop;
  if (name == "allpass") return PresetKind::AllPass;
  throw DomainError("unknown preset '" + name + "'");
}

void FilterPreset::validate() const {
  const std::size_t expected = name == PresetKind::AllPass ? 0
                               : (name == PresetKind::LowPass || name == PresetKind::HighPass)
                                   ? 1
                                   : 2;
  if (cutoffs.size() != expected)
    throw DomainError("preset expects " + std::to_string(expected) + " cutoffs, got " +
                      std::to_string(cutoffs.size()));
  for (double c : cutoffs)
    if (!(c > 0.0 && c < 1.0))
      throw DomainError("cutoff " + std::to_string(c) + " must lie strictly inside (0, 1)");
  if (cutoffs.size() == 2 && !(cutoffs[0] < cutoffs[1]))
    throw DomainError("band cutoffs must satisfy low < high");
}

Eigen::MatrixXd chebyshev_apply(const Laplacian& lap, const ChebyshevFilter& f,
                                const Eigen::MatrixXd& x) {
  f.validate();
  const Eigen::SparseMatrix<double>& m = lap.matrix;
  if (x.rows() != m.rows())
    throw ShapeError("signal has " + std::to_string(x.rows()) + " rows, Laplacian is " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));

  const double a = 2.0 / f.lambda_max;
  auto scaled_apply = [&](const Eigen::MatrixXd& v) -> Eigen::MatrixXd {
    return a * (m * v) - v;
  };

  Eigen::MatrixXd prev = x;
  Eigen::MatrixXd y = f.coeffs[0] * prev;
  if (f.order == 0) return y;

  Eigen::MatrixXd cur = scaled_apply(prev);
  y += f.coeffs[1] * cur;
  for (int j = 2; j <= f.order; ++j) {
    Eigen::MatrixXd next = 2.0 * scaled_apply(cur) - prev;
    y += f.coeffs[j] * next;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return y;
}

ChebyshevFilter fit_chebyshev(const std::function<double(double)>& target, int order,
                              double lambda_max) {
  if (order < 0) throw DomainError("filter order must be non-negative");
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max))
    throw DomainError("lambda_max must be positive and finite");

  const int m = order + 1;
  Eigen::VectorXd values(m), thetas(m);
  for (int i = 0; i < m; ++i) {
    thetas[i] = M_PI * (i + 0.5) / m;
    const double lambda = lambda_max * 0.5 * (std::cos(thetas[i]) + 1.0);
    values[i] = target(lambda);
  }

  ChebyshevFilter f;
  f.order = order;
  f.lambda_max = lambda_max;
  f.coeffs.resize(m);
  for (int j = 0; j < m; ++j) {
    double acc = 0.0;
    for (int i = 0; i < m; ++i) acc += values[i] * std::cos(j * thetas[i]);
    f.coeffs[j] = (j == 0 ? 1.0 : 2.0) * acc / m;
  }
  return f;
}

double chebyshev_eval(const ChebyshevFilter& f, double lambda) {
  f.validate();
  const double s = 2.0 * lambda / f.lambda_max - 1.0;
  double b1 = 0.0, b2 = 0.0;
  for (int j = f.order; j >= 1; --j) {
    const double b = 2.0 * s * b1 - b2 + f.coeffs[j];
    b2 = b1;
    b1 = b;
  }
  return s * b1 - b2 + f.coeffs[0];
}

bool is_conjugate_symmetric(const Eigen::VectorXcd& response, double tol) {
  const Eigen::Index t = response.size();
  for (Eigen::Index k = 0; k < t; ++k)
    if (std::abs(response[k] - std::conj(response[(t - k) % t])) > tol) return false;
  return true;
}

Eigen::MatrixXcd temporal_filter_apply(const TemporalFilter& f, const Eigen::MatrixXcd& x) {
  if (x.rows() != f.response.size())
    throw ShapeError("signal has " + std::to_string(x.rows()) + " timesteps, response has " +
                     std::to_string(f.response.size()));
  Eigen::MatrixXcd y = x;
  detail::dft_cols_inplace(y, true);
  y.array().colwise() *= f.response.array();
  detail::dft_cols_inplace(y, false);
  return y;
}

Eigen::MatrixXd temporal_filter_apply(const TemporalFilter& f, const Eigen::MatrixXd& x) {
  if (!is_conjugate_symmetric(f.response))
    throw DomainError("temporal response is not conjugate-symmetric; a real signal would "
                      "come back complex");
  return temporal_filter_apply(f, Eigen::MatrixXcd(x.cast<std::complex<double>>()))
      .real();
}

Eigen::VectorXd preset_response(const FilterPreset& p, const Eigen::VectorXd& grid) {
  p.validate();
  auto inside = [&](double v) {
    switch (p.name) {
      case PresetKind::AllPass:
        return true;
      case PresetKind::LowPass:
        return v < p.cutoffs[0];
      case PresetKind::HighPass:
        return v >= p.cutoffs[0];
      case PresetKind::BandPass:
        return v >= p.cutoffs[0] && v < p.cutoffs[1];
      case PresetKind::BandStop:
        return v < p.cutoffs[0] || v >= p.cutoffs[1];
    }
    return true;
  };
  Eigen::VectorXd r(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) r[i] = inside(grid[i]) ? 1.0 : 0.0;
  return r;
}

LambdaMaxEstimate estimate_lambda_max(const Laplacian& lap) {
  if (lap.kind == LaplacianKind::Normalized) return {2.0, true};

  const Eigen::SparseMatrix<double>& m = lap.matrix;
  const Eigen::Index n = m.rows();
  constexpr double kFloor = 1e-12;
  if (n == 0) return {kFloor, true};

  std::mt19937_64 rng(0x243F6A8885A308D3ull);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
  v.normalize();

  double lambda = 0.0;
  for (int iter = 0; iter < 500; ++iter) {
    const Eigen::VectorXd w = m * v;
    const double norm_w = w.norm();
    if (norm_w < kFloor) return {kFloor, true};
    const double next = v.dot(w);
    v = w / norm_w;
    if (iter > 0 && std::abs(next - lambda) <= 1e-6 * std::abs(next))
      return {std::max(next * 1.01, kFloor), true};
    lambda = next;
  }
  // Fall back to the trace, an upper bound for a PSD matrix, and flag it.
  double trace = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) trace += m.coeff(i, i);
  return {std::max(trace, kFloor), false};
}

Eigen::MatrixXd joint_filter(const DynamicGraph& dg, const Eigen::MatrixXd& x,
                             const ChebyshevFilter& vf, const TemporalFilter& tf,
                             LaplacianKind kind, FilterOrder order) {
  dg.validate();
  vf.validate();
  const int n = dg.num_nodes();
  const int t = dg.num_steps();
  if (x.rows() != n || x.cols() != t)
    throw ShapeError("signal is " + std::to_string(x.rows()) + "x" +
                     std::to_string(x.cols()) + ", expected " + std::to_string(n) + "x" +
                     std::to_string(t));
  if (tf.response.size() != t)
    throw ShapeError("temporal response has " + std::to_string(tf.response.size()) +
                     " bins, expected " + std::to_string(t));

  auto vertex_column = [&](int s, const Eigen::VectorXd& col) {
    const Laplacian lap = build_laplacian(dg.snapshots[s], kind);
    ChebyshevFilter local = vf;
    local.lambda_max = std::max(estimate_lambda_max(lap).value, 1e-12);
    return chebyshev_apply(lap, local, col);
  };

  if (order == FilterOrder::VertexFirst) {
    Eigen::MatrixXd mid(n, t);
    for (int s = 0; s < t; ++s) mid.col(s) = vertex_column(s, x.col(s));
    return temporal_filter_apply(tf, Eigen::MatrixXd(mid.transpose())).transpose();
  }

  // Same contraction evaluated from the time side: the temporal weights are
  // materialized first (filtered unit impulses), then each source column is
  // vertex-filtered with its own snapshot and spread across the outputs.
  const Eigen::MatrixXd spread =
      temporal_filter_apply(tf, Eigen::MatrixXd(Eigen::MatrixXd::Identity(t, t)));
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, t);
  for (int s = 0; s < t; ++s)
    out += vertex_column(s, x.col(s)) * spread.col(s).transpose();
  return out;
}

}  // namespace eft
