#include "eft/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>

#include "eft/filters.hpp"
#include "eft/spectral.hpp"
#include "eig.hpp"
#include "fft.hpp"

namespace eft {

std::string to_string(Method m) {
  switch (m) {
    case Method::EFT: return "eft";
    case Method::AD: return "ad";
    case Method::DFTOnly: return "dft";
    case Method::GFTOnly: return "gft";
  }
  return "eft";
}

Method method_from_string(const std::string& name) {
  if (name == "eft") return Method::EFT;
  if (name == "ad") return Method::AD;
  if (name == "dft") return Method::DFTOnly;
  if (name == "gft") return Method::GFTOnly;
  throw DomainError("unknown method '" + name + "' (expected eft, ad, dft or gft)");
}

namespace {

using Cd = std::complex<double>;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

double relative_error(const Eigen::MatrixXd& got, const Eigen::MatrixXd& ref) {
  const double scale = ref.norm();
  return scale > 0.0 ? (got - ref).norm() / scale : (got - ref).norm();
}

/// Flattened coefficients of one method plus the matching reconstruction.
struct MethodTransform {
  Eigen::VectorXcd coeffs;
  std::function<Eigen::MatrixXd(const Eigen::VectorXcd&)> invert;
};

MethodTransform make_transform(Method m, const std::vector<GftBasis>& bases,
                               const AdBasis* ad, const Eigen::MatrixXd& x) {
  const int n = static_cast<int>(x.rows());
  const int t = static_cast<int>(x.cols());
  MethodTransform tr;

  switch (m) {
    case Method::EFT: {
      tr.coeffs = vectorize(eft_forward(bases, x.cast<Cd>()).values);
      tr.invert = [bases, n, t](const Eigen::VectorXcd& c) {
        return Eigen::MatrixXd(eft_inverse(bases, unvectorize(c, n, t)).real());
      };
      break;
    }
    case Method::AD: {
      const Eigen::VectorXd c = ad->vectors * vectorize(x);
      tr.coeffs = c.cast<Cd>();
      const Eigen::MatrixXd back = ad->vectors.transpose();
      tr.invert = [back, n, t](const Eigen::VectorXcd& c) {
        return unvectorize(Eigen::VectorXd(back * c.real()), n, t);
      };
      break;
    }
    case Method::DFTOnly: {
      Eigen::MatrixXcd y = x.cast<Cd>();
      detail::dft_rows_inplace(y, true);
      tr.coeffs = vectorize(y);
      tr.invert = [n, t](const Eigen::VectorXcd& c) {
        Eigen::MatrixXcd y = unvectorize(c, n, t);
        detail::dft_rows_inplace(y, false);
        return Eigen::MatrixXd(y.real());
      };
      break;
    }
    case Method::GFTOnly: {
      Eigen::MatrixXd y(n, t);
      for (int s = 0; s < t; ++s) y.col(s).noalias() = bases[s].vectors * x.col(s);
      tr.coeffs = y.reshaped().cast<Cd>();
      tr.invert = [bases, n, t](const Eigen::VectorXcd& c) {
        const Eigen::MatrixXcd y = unvectorize(c, n, t);
        Eigen::MatrixXd out(n, t);
        for (int s = 0; s < t; ++s)
          out.col(s).noalias() = bases[s].vectors.transpose() * y.col(s).real();
        return out;
      };
      break;
    }
  }
  return tr;
}

/// Zero everything but the k largest-magnitude entries (ties to lower index).
Eigen::VectorXcd keep_top(const Eigen::VectorXcd& c, Eigen::Index k) {
  const Eigen::Index m = c.size();
  if (k <= 0) return Eigen::VectorXcd::Zero(m);
  if (k >= m) return c;
  std::vector<Eigen::Index> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double ma = std::abs(c[a]), mb = std::abs(c[b]);
    return ma != mb ? ma > mb : a < b;
  });
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(m);
  for (Eigen::Index i = 0; i < k; ++i) out[idx[i]] = c[idx[i]];
  return out;
}

bool contains(const std::vector<Method>& ms, Method m) {
  return std::find(ms.begin(), ms.end(), m) != ms.end();
}

}  // namespace

std::vector<DenoiseReport> run_denoise(const SynthConfig& cfg,
                                       const std::vector<Method>& methods,
                                       const std::vector<double>& keep_fractions,
                                       const std::vector<std::uint64_t>& seeds) {
  cfg.validate();
  if (methods.empty()) throw DomainError("no methods requested");
  if (keep_fractions.empty()) throw DomainError("no keep fractions requested");
  for (double f : keep_fractions)
    if (!(f > 0.0 && f <= 1.0))
      throw DomainError("keep fraction " + num(f) + " must lie in (0, 1]");
  if (seeds.empty()) throw DomainError("no seeds requested");

  std::vector<DenoiseReport> reports;
  reports.reserve(seeds.size() * methods.size() * keep_fractions.size());
  for (std::uint64_t seed : seeds) {
    SynthConfig c = cfg;
    c.seed = seed;
    const DynamicGraph dg = gen_evolving_graph(c);
    const SignalPair sig = gen_signal(c, dg);
    const std::vector<GftBasis> bases = gft_bases(dg, c.kind);
    std::optional<AdBasis> ad;
    if (contains(methods, Method::AD)) ad = ad_basis(build_joint_laplacian(dg, c.kind));

    const Eigen::Index m = static_cast<Eigen::Index>(c.n) * c.t;
    for (Method method : methods) {
      const MethodTransform tr =
          make_transform(method, bases, ad ? &*ad : nullptr, sig.noisy);
      for (double f : keep_fractions) {
        const Eigen::Index k = std::max<Eigen::Index>(1, std::llround(f * m));
        const Eigen::MatrixXd xhat = tr.invert(keep_top(tr.coeffs, k));
        reports.push_back({method, f, relative_error(xhat, sig.clean), seed, c});
      }
    }
  }
  return reports;
}

std::vector<CompactionReport> run_compaction(const DynamicGraph& dg, const Eigen::MatrixXd& x,
                                             const std::vector<Method>& methods,
                                             const std::vector<double>& percentiles,
                                             std::uint64_t seed) {
  dg.validate();
  if (x.rows() != dg.num_nodes() || x.cols() != dg.num_steps())
    throw ShapeError("signal shape does not match the dynamic graph");
  if (methods.empty()) throw DomainError("no methods requested");
  for (double p : percentiles)
    if (!(p >= 0.0 && p <= 100.0))
      throw DomainError("percentile " + num(p) + " must lie in [0, 100]");

  const std::vector<GftBasis> bases = gft_bases(dg);
  std::optional<AdBasis> ad;
  if (contains(methods, Method::AD)) ad = ad_basis(build_joint_laplacian(dg));

  const Eigen::Index m = x.size();
  std::vector<CompactionReport> reports;
  reports.reserve(methods.size() * percentiles.size());
  for (Method method : methods) {
    const MethodTransform tr = make_transform(method, bases, ad ? &*ad : nullptr, x);
    for (double p : percentiles) {
      const Eigen::Index keep = m - std::llround(p / 100.0 * m);
      const Eigen::MatrixXd xhat = tr.invert(keep_top(tr.coeffs, keep));
      reports.push_back({method, p, relative_error(xhat, x), seed});
    }
  }
  return reports;
}

std::vector<CompactionReport> run_mesh_compaction(int frames, int resolution,
                                                  const std::vector<Method>& methods,
                                                  const std::vector<double>& percentiles,
                                                  const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw DomainError("no seeds requested");
  const DynamicMesh mesh = gen_dynamic_mesh(frames, resolution);
  const Eigen::MatrixXd& z = mesh.channels[2];

  std::vector<CompactionReport> reports;
  for (std::uint64_t seed : seeds) {
    // Each seed compacts the exact wave on a slightly irregular copy of the
    // mesh: edge weights get a 5% multiplicative jitter, shared by all frames
    // so the topology stays static while the seeds vary the spectrum.
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 0.05);
    std::vector<Edge> edges = mesh.graph.snapshots[0].edges();
    for (Edge& e : edges) e.w = std::max(0.1, e.w * (1.0 + normal(rng)));
    DynamicGraph irregular = mesh.graph;
    const WeightedGraph snapshot(mesh.graph.num_nodes(), edges);
    for (auto& g : irregular.snapshots) g = snapshot;
    const auto rows = run_compaction(irregular, z, methods, percentiles, seed);
    reports.insert(reports.end(), rows.begin(), rows.end());
  }
  return reports;
}

std::vector<BoundReport> run_bound_probe(const SynthConfig& base_cfg,
                                         const std::vector<double>& scales,
                                         const std::vector<std::uint64_t>& seeds) {
  base_cfg.validate();
  if (std::find(scales.begin(), scales.end(), 0.0) == scales.end())
    throw DomainError("scales must include 0, the static reference point");
  for (double s : scales)
    if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("scales must be finite and >= 0");
  if (seeds.empty()) throw DomainError("no seeds requested");

  std::vector<BoundReport> reports;
  reports.reserve(scales.size() * seeds.size());
  for (std::uint64_t seed : seeds) {
    for (double scale : scales) {
      SynthConfig c = base_cfg;
      c.seed = seed;
      c.perturb_scale = scale;
      const DynamicGraph dg = gen_evolving_graph(c);
      const int n = c.n;
      const int t = c.t;

      const std::vector<GftBasis> bases = gft_bases(dg, c.kind);
      const Eigen::MatrixXcd psi = eft_matrix(dg, c.kind);
      const AdBasis ad = ad_basis(build_joint_laplacian(dg, c.kind));

      // Label factored rows by ring eigenvalue plus time-averaged snapshot
      // eigenvalue; at scale 0 this is the exact joint spectrum.
      const Eigen::VectorXd mu = time_ring_eigenvalues(t);
      Eigen::VectorXd mean_lambda = Eigen::VectorXd::Zero(n);
      for (const auto& b : bases) mean_lambda += b.eigenvalues;
      mean_lambda /= t;
      Eigen::VectorXd eig_rows(n * t);
      for (int j = 0; j < t; ++j)
        for (int i = 0; i < n; ++i) eig_rows[j * n + i] = mu[j] + mean_lambda[i];

      const BasisAlignment align =
          align_bases(psi, Eigen::MatrixXcd(ad.vectors.cast<Cd>()), eig_rows, ad.eigenvalues);

      double min_gap_g = std::numeric_limits<double>::infinity();
      for (const auto& b : bases)
        for (Eigen::Index i = 1; i < b.eigenvalues.size(); ++i)
          min_gap_g = std::min(min_gap_g, b.eigenvalues[i] - b.eigenvalues[i - 1]);
      double min_gap_j = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 1; i < ad.eigenvalues.size(); ++i)
        min_gap_j = std::min(min_gap_j, ad.eigenvalues[i] - ad.eigenvalues[i - 1]);

      BoundReport row;
      row.perturb_scale = scale;
      row.diff_norm = align.difference;
      row.lipschitz = max_laplacian_step(dg, c.kind);
      row.min_gap_g = min_gap_g;
      row.min_gap_j = min_gap_j;
      row.residual_max = pseudospectrum_residuals(dg, c.kind).maxCoeff();
      row.bound_value = row.lipschitz * n * static_cast<double>(t) * t;
      row.seed = seed;
      reports.push_back(row);
    }
  }
  return reports;
}

ScalingBenchReport run_scaling_bench(const std::vector<int>& n_grid,
                                     const std::vector<int>& t_grid, int repeats) {
  if (repeats < 1) throw DomainError("repeats must be >= 1");
  if (n_grid.empty() || t_grid.empty()) throw DomainError("empty benchmark grid");

  ScalingBenchReport report;
  volatile double sink = 0.0;
  auto time_once = [&](const std::function<double()>& fn) {
    std::vector<double> times(repeats);
    for (int r = 0; r < repeats; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      sink = sink + fn();
      const auto t1 = std::chrono::steady_clock::now();
      times[r] = std::chrono::duration<double>(t1 - t0).count();
    }
    return median(times);
  };

  for (int n : n_grid) {
    for (int t : t_grid) {
      SynthConfig c;
      c.n = n;
      c.t = t;
      c.seed = 0;
      const DynamicGraph dg = gen_evolving_graph(c);
      std::mt19937_64 rng(1);
      std::normal_distribution<double> normal(0.0, 1.0);
      Eigen::MatrixXd x(n, t);
      for (int j = 0; j < t; ++j)
        for (int i = 0; i < n; ++i) x(i, j) = normal(rng);

      report.cells.push_back(
          {"eft_forward", n, t,
           time_once([&] { return eft_forward(dg, x).values.squaredNorm(); }), false});

      if (static_cast<long>(n) * t > kDenseSizeGuard) {
        report.cells.push_back({"ad_basis", n, t, 0.0, true});
      } else {
        const JointLaplacian joint = build_joint_laplacian(dg);
        report.cells.push_back(
            {"ad_basis", n, t, time_once([&] { return ad_basis(joint).eigenvalues.sum(); }),
             false});
      }
    }
  }

  for (const std::string& op : {std::string("eft_forward"), std::string("ad_basis")}) {
    for (int n : n_grid) {
      std::vector<double> lx, ly;
      for (const auto& cell : report.cells)
        if (cell.op == op && cell.n == n && !cell.skipped && cell.seconds > 0.0) {
          lx.push_back(std::log(static_cast<double>(cell.t)));
          ly.push_back(std::log(cell.seconds));
        }
      if (lx.size() < 2) continue;
      const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
      const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
      double cov = 0.0, var = 0.0;
      for (std::size_t i = 0; i < lx.size(); ++i) {
        cov += (lx[i] - mx) * (ly[i] - my);
        var += (lx[i] - mx) * (lx[i] - mx);
      }
      report.slopes.push_back({op, n, cov / var});
    }
  }
  return report;
}

std::vector<PropertyCheck> run_property_suite(std::uint64_t seed, InjectedFault fault) {
  std::vector<PropertyCheck> checks;
  auto record = [&](const std::string& name, bool pass, const std::string& detail) {
    checks.push_back({name, pass, detail});
  };

  SynthConfig cfg;
  cfg.n = 6;
  cfg.t = 5;
  cfg.perturb_scale = 0.1;
  cfg.noise_std = 0.1;
  cfg.seed = seed;

  const DynamicGraph dg = gen_evolving_graph(cfg);
  const SignalPair sig = gen_signal(cfg, dg);
  const std::vector<GftBasis> bases = gft_bases(dg);
  const JointLaplacian joint = build_joint_laplacian(dg);
  std::mt19937_64 rng(seed ^ 0xD1B54A32D192ED03ull);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd xr(cfg.n, cfg.t);
  for (int j = 0; j < cfg.t; ++j)
    for (int i = 0; i < cfg.n; ++i) xr(i, j) = normal(rng);

  {
    double worst = 0.0;
    for (const auto& g : dg.snapshots) {
      const Laplacian lap = build_laplacian(g, LaplacianKind::Combinatorial);
      worst = std::max(worst, (lap.dense().rowwise().sum()).cwiseAbs().maxCoeff());
    }
    record("laplacian_row_sums_zero", worst <= 1e-12, "max |row sum| " + num(worst));
  }
  {
    std::vector<Edge> looped = dg.snapshots[0].edges();
    looped.push_back({0, 0, 3.0});
    const WeightedGraph with_loop(cfg.n, looped);
    const double dev =
        (build_laplacian(with_loop, LaplacianKind::Combinatorial).dense() -
         build_laplacian(dg.snapshots[0], LaplacianKind::Combinatorial).dense())
            .cwiseAbs()
            .maxCoeff();
    record("selfloop_ignored_by_laplacian", dev == 0.0, "max deviation " + num(dev));
  }
  {
    double min_eig = 0.0;
    double max_norm_eig = 0.0;
    for (const auto& g : dg.snapshots) {
      const GftBasis comb = gft_basis(build_laplacian(g, LaplacianKind::Combinatorial));
      min_eig = std::min(min_eig, comb.eigenvalues.minCoeff());
      const GftBasis norm = gft_basis(build_laplacian(g, LaplacianKind::Normalized));
      min_eig = std::min(min_eig, norm.eigenvalues.minCoeff());
      max_norm_eig = std::max(max_norm_eig, norm.eigenvalues.maxCoeff());
    }
    record("laplacian_positive_semidefinite", min_eig >= -1e-10,
           "min eigenvalue " + num(min_eig));
    record("normalized_spectrum_in_range", max_norm_eig <= 2.0 + 1e-9,
           "max normalized eigenvalue " + num(max_norm_eig));
  }
  {
    const TimeRingLaplacian ring = build_time_ring_laplacian(cfg.t);
    const detail::SymEig eig = detail::sym_eig(ring.dense());
    Eigen::VectorXd closed = time_ring_eigenvalues(cfg.t);
    std::sort(closed.begin(), closed.end());
    const double dev = (eig.eigenvalues - closed).cwiseAbs().maxCoeff();
    record("time_ring_matches_closed_form", dev <= 1e-12, "max deviation " + num(dev));
  }
  {
    const Eigen::VectorXd v = vectorize(xr);
    const double quad = v.dot(joint.matrix * v);
    const double s2 = dirichlet_s2(dg, xr);
    const double dev = std::abs(quad - s2) / std::max(1.0, std::abs(quad));
    record("dirichlet_matches_quadratic_form", dev <= 1e-8, "relative deviation " + num(dev));
  }
  {
    double worst_orth = 0.0, worst_diag = 0.0;
    for (int s = 0; s < cfg.t; ++s) {
      const Eigen::MatrixXd& b = bases[s].vectors;
      worst_orth = std::max(
          worst_orth,
          (b * b.transpose() - Eigen::MatrixXd::Identity(cfg.n, cfg.n)).cwiseAbs().maxCoeff());
      const Eigen::MatrixXd lam =
          b * build_laplacian(dg.snapshots[s], LaplacianKind::Combinatorial).dense() *
          b.transpose();
      worst_diag = std::max(
          worst_diag,
          (lam - Eigen::MatrixXd(bases[s].eigenvalues.asDiagonal())).cwiseAbs().maxCoeff());
    }
    record("snapshot_basis_orthonormal", worst_orth <= 1e-9, "max deviation " + num(worst_orth));
    record("snapshot_basis_diagonalizes", worst_diag <= 1e-8,
           "max off-diagonal " + num(worst_diag));
  }
  {
    const DftBasis dft = dft_basis(cfg.t);
    const double dev = (dft.vectors * dft.vectors.adjoint() -
                        Eigen::MatrixXcd::Identity(cfg.t, cfg.t))
                           .cwiseAbs()
                           .maxCoeff();
    record("dft_basis_unitary", dev <= 1e-10, "max deviation " + num(dev));
  }

  const EftCoefficients coeff = eft_forward(dg, xr);
  {
    Eigen::MatrixXd back = eft_inverse(dg, coeff).real();
    if (fault == InjectedFault::NegatedInverse) back = -back;
    const double err = relative_error(back, xr);
    record("transform_round_trip", err <= 1e-9, "relative error " + num(err));
  }
  {
    const double dev = std::abs(coeff.values.norm() - xr.norm()) / xr.norm();
    record("transform_unitary_parseval", dev <= 1e-8, "relative energy drift " + num(dev));
  }
  {
    Eigen::MatrixXd yr(cfg.n, cfg.t);
    for (int j = 0; j < cfg.t; ++j)
      for (int i = 0; i < cfg.n; ++i) yr(i, j) = normal(rng);
    const Eigen::MatrixXcd lhs = eft_forward(dg, Eigen::MatrixXd(2.0 * xr - 3.0 * yr)).values;
    const Eigen::MatrixXcd rhs = 2.0 * coeff.values - 3.0 * eft_forward(dg, yr).values;
    const double dev = (lhs - rhs).norm() / std::max(1.0, rhs.norm());
    record("transform_linear", dev <= 1e-9, "relative deviation " + num(dev));
  }
  {
    const Eigen::MatrixXcd alt =
        eft_forward(dg, xr, LaplacianKind::Combinatorial, ContractionOrder::TimeFirst).values;
    const double dev = (alt - coeff.values).norm();
    record("contraction_order_invariant", dev <= 1e-10, "norm difference " + num(dev));
  }
  {
    SynthConfig stat = cfg;
    stat.perturb_scale = 0.0;
    const DynamicGraph ds = gen_evolving_graph(stat);
    const Eigen::MatrixXcd psi = eft_matrix(ds);
    const Eigen::MatrixXcd lj = build_joint_laplacian(ds).dense().cast<Cd>();
    const std::vector<GftBasis> sb = gft_bases(ds);
    const Eigen::VectorXd mu = time_ring_eigenvalues(stat.t);
    double worst = 0.0;
    for (int j = 0; j < stat.t; ++j)
      for (int i = 0; i < stat.n; ++i) {
        const Eigen::VectorXcd row = psi.row(j * stat.n + i).transpose();
        const double ev = mu[j] + sb[0].eigenvalues[i];
        worst = std::max(worst, (lj * row - ev * row).norm());
      }
    record("static_rows_are_joint_eigenvectors", worst <= 1e-8, "max residual " + num(worst));

    const Eigen::MatrixXd lt = build_time_ring_laplacian(stat.t).dense();
    const Eigen::MatrixXd lg =
        build_laplacian(ds.snapshots[0], LaplacianKind::Combinatorial).dense();
    Eigen::MatrixXd kron = Eigen::MatrixXd::Zero(stat.n * stat.t, stat.n * stat.t);
    for (int j = 0; j < stat.t; ++j)
      for (int k = 0; k < stat.t; ++k) {
        kron.block(j * stat.n, k * stat.n, stat.n, stat.n) =
            lt(j, k) * Eigen::MatrixXd::Identity(stat.n, stat.n);
        if (j == k) kron.block(j * stat.n, k * stat.n, stat.n, stat.n) += lg;
      }
    const double kdev = (build_joint_laplacian(ds).dense() - kron).cwiseAbs().maxCoeff();
    record("static_joint_is_kron_sum", kdev <= 1e-12, "max deviation " + num(kdev));

    const double sres = pseudospectrum_residuals(ds).maxCoeff();
    record("static_residual_zero", sres <= 1e-8, "max residual " + num(sres));

    const Eigen::MatrixXcd psi_dyn = eft_matrix(dg);
    const double dev = (psi_dyn * psi_dyn.adjoint() -
                        Eigen::MatrixXcd::Identity(psi_dyn.rows(), psi_dyn.cols()))
                           .cwiseAbs()
                           .maxCoeff();
    record("transform_matrix_unitary", dev <= 1e-8, "max deviation " + num(dev));
  }

  const Laplacian lap0 = build_laplacian(dg.snapshots[0], LaplacianKind::Combinatorial);
  {
    ChebyshevFilter ident;
    ident.coeffs = Eigen::VectorXd::Ones(1);
    ident.order = 0;
    ident.lambda_max = std::max(estimate_lambda_max(lap0).value, 1e-12);
    const double dev = (chebyshev_apply(lap0, ident, xr) - xr).cwiseAbs().maxCoeff();
    record("chebyshev_identity_coeffs", dev <= 1e-12, "max deviation " + num(dev));
  }
  {
    const double lmax = std::max(estimate_lambda_max(lap0).value, 1e-12);
    auto target = [](double l) { return 0.25 - 0.5 * l + l * l; };
    const ChebyshevFilter f = fit_chebyshev(target, 2, lmax);
    const GftBasis b0 = gft_basis(lap0);
    Eigen::VectorXd resp(cfg.n);
    for (int i = 0; i < cfg.n; ++i) resp[i] = target(b0.eigenvalues[i]);
    const Eigen::MatrixXd exact =
        b0.vectors.transpose() * resp.asDiagonal() * b0.vectors * xr;
    const double dev = (chebyshev_apply(lap0, f, xr) - exact).cwiseAbs().maxCoeff();
    record("chebyshev_degree_exact", dev <= 1e-8, "max deviation " + num(dev));
  }
  {
    TemporalFilter all;
    all.response = Eigen::VectorXcd::Ones(cfg.t);
    const Eigen::MatrixXd y = temporal_filter_apply(all, Eigen::MatrixXd(xr.transpose()));
    const double dev = (y - xr.transpose()).cwiseAbs().maxCoeff();
    record("temporal_allpass_identity", dev <= 1e-12, "max deviation " + num(dev));
  }
  {
    TemporalFilter dc;
    dc.response = Eigen::VectorXcd::Zero(cfg.t);
    dc.response[0] = 1.0;
    const Eigen::MatrixXd y = temporal_filter_apply(dc, Eigen::MatrixXd(xr.transpose()));
    double dev = 0.0;
    for (int i = 0; i < cfg.n; ++i) {
      const double mean = xr.row(i).mean();
      dev = std::max(dev, (y.col(i).array() - mean).abs().maxCoeff());
    }
    record("temporal_mean_projector", dev <= 1e-10, "max deviation " + num(dev));
  }
  {
    ChebyshevFilter half;  // response lambda / lambda_max, bounded by 1
    half.coeffs = Eigen::VectorXd::Constant(2, 0.5);
    half.order = 1;
    half.lambda_max = 2.0;
    TemporalFilter low;
    low.response = Eigen::VectorXcd::Zero(cfg.t);
    low.response[0] = 1.0;
    low.response[1] = 1.0;
    low.response[cfg.t - 1] = 1.0;
    const Eigen::MatrixXd y = joint_filter(dg, xr, half, low);
    const bool ok = y.norm() <= xr.norm() + 1e-8;
    record("filter_energy_nonexpansive", ok,
           "output norm " + num(y.norm()) + " vs input " + num(xr.norm()));

    Eigen::MatrixXd zr(cfg.n, cfg.t);
    for (int j = 0; j < cfg.t; ++j)
      for (int i = 0; i < cfg.n; ++i) zr(i, j) = normal(rng);
    const Eigen::MatrixXd lhs = joint_filter(dg, Eigen::MatrixXd(xr + 2.0 * zr), half, low);
    const Eigen::MatrixXd rhs =
        joint_filter(dg, xr, half, low) + 2.0 * joint_filter(dg, zr, half, low);
    const double dev = (lhs - rhs).norm() / std::max(1.0, rhs.norm());
    record("filter_linear", dev <= 1e-9, "relative deviation " + num(dev));

    const Eigen::MatrixXcd yc =
        temporal_filter_apply(low, Eigen::MatrixXcd(xr.transpose().cast<Cd>()));
    const double imag = yc.imag().cwiseAbs().maxCoeff();
    record("filter_symmetric_response_real", imag <= 1e-10,
           "max imaginary part " + num(imag));
  }
  {
    const DynamicGraph dg2 = gen_evolving_graph(cfg);
    const SignalPair sig2 = gen_signal(cfg, dg2);
    const bool same = dg2 == dg && sig2.clean == sig.clean && sig2.noisy == sig.noisy;
    record("generator_deterministic", same,
           same ? "replay is bit-identical" : "replay diverged");
  }
  {
    std::vector<double> gaps;
    for (std::uint64_t j = 0; j < 11; ++j) {
      SynthConfig c = cfg;
      c.seed = seed * 1000 + j;
      const DynamicGraph d = gen_evolving_graph(c);
      const SignalPair s = gen_signal(c, d);
      gaps.push_back(dirichlet_s2(d, s.noisy) - dirichlet_s2(d, s.clean));
    }
    const double med = median(gaps);
    record("noise_increases_dirichlet", med > 0.0, "median energy gap " + num(med));
  }
  {
    const BasisAlignment self =
        align_bases(bases[0].vectors, bases[0].vectors, bases[0].eigenvalues,
                    bases[0].eigenvalues);
    record("alignment_identity_zero", self.difference <= 1e-12,
           "difference " + num(self.difference));
  }
  {
    const double res_max = pseudospectrum_residuals(dg).maxCoeff();
    const double bound =
        max_laplacian_step(dg, LaplacianKind::Combinatorial) * cfg.n *
        static_cast<double>(cfg.t) * cfg.t;
    record("residual_within_bound", res_max <= bound + 1e-9,
           "max residual " + num(res_max) + " vs bound " + num(bound));
  }
  {
    const auto rows =
        run_compaction(dg, xr, {Method::EFT}, {0.0, 25.0, 50.0, 75.0, 100.0}, seed);
    bool monotone = true;
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (rows[i].error < rows[i - 1].error - 1e-12) monotone = false;
    const bool ends = rows.front().error <= 1e-9 && std::abs(rows.back().error - 1.0) <= 1e-9;
    record("compaction_curve_monotone", monotone && ends,
           "endpoints " + num(rows.front().error) + " and " + num(rows.back().error));
  }
  {
    const auto rows = run_denoise(cfg, {Method::EFT, Method::AD}, {0.1, 0.3}, {seed});
    double worst = 0.0;
    for (const auto& ad : rows) {
      if (ad.method != Method::AD) continue;
      for (const auto& ef : rows)
        if (ef.method == Method::EFT && ef.keep_fraction == ad.keep_fraction)
          worst = std::max(worst, ad.error - ef.error);
    }
    record("denoise_oracle_within_margin", worst <= 0.05,
           "worst oracle excess " + num(worst));
  }
  {
    const auto a = run_denoise(cfg, {Method::EFT}, {0.2}, {seed});
    const auto b = run_denoise(cfg, {Method::EFT}, {0.2}, {seed});
    const bool same = a.size() == b.size() && a.front().error == b.front().error;
    record("experiment_replay_identical", same,
           same ? "errors are bit-identical" : "replay diverged");
  }

  return checks;
}

}  // namespace eft
