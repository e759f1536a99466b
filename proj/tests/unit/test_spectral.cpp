#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <complex>

#include "eft/spectral.hpp"
#include "eft/synth.hpp"

using namespace eft;
using Cplx = std::complex<double>;

namespace {

DynamicGraph two_step_pair() {
  DynamicGraph dg;
  dg.snapshots.push_back(WeightedGraph(2, {{0, 1, 0.5}}));
  dg.snapshots.push_back(WeightedGraph(2, {{0, 1, 0.6}}));
  return dg;
}

DynamicGraph random_instance(int n, int t, std::uint64_t seed, double perturb = 0.05) {
  SynthConfig cfg;
  cfg.n = n;
  cfg.t = t;
  cfg.seed = seed;
  cfg.perturb_scale = perturb;
  return gen_evolving_graph(cfg);
}

Eigen::MatrixXd random_signal(int n, int t, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd x(n, t);
  for (int j = 0; j < t; ++j)
    for (int i = 0; i < n; ++i) x(i, j) = normal(rng);
  return x;
}

Eigen::VectorXcd vectorize_cplx(const Eigen::MatrixXcd& x) {
  Eigen::VectorXcd v(x.size());
  for (Eigen::Index t = 0; t < x.cols(); ++t)
    for (Eigen::Index i = 0; i < x.rows(); ++i) v[t * x.rows() + i] = x(i, t);
  return v;
}

}  // namespace

TEST_CASE("gft basis of the half-weight pair") {
  Eigen::MatrixXd a(2, 2);
  a << 0, 0.5, 0.5, 0;
  const GftBasis b = gft_basis(build_laplacian(a, LaplacianKind::Combinatorial));
  CHECK(b.eigenvalues[0] == doctest::Approx(0.0));
  CHECK(b.eigenvalues[1] == doctest::Approx(1.0));
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXd want(2, 2);
  want << r, r, r, -r;
  CHECK((b.vectors - want).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("gft basis degenerate and path cases") {
  const GftBasis zero = gft_basis(build_laplacian(Eigen::MatrixXd::Zero(3, 3),
                                                  LaplacianKind::Combinatorial));
  CHECK(zero.eigenvalues.cwiseAbs().maxCoeff() == 0.0);
  CHECK((zero.vectors - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);

  const WeightedGraph path(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  const GftBasis b = gft_basis(build_laplacian(path, LaplacianKind::Combinatorial));
  Eigen::Vector3d want(0.0, 1.0, 3.0);
  CHECK((b.eigenvalues - want).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(b.vectors.row(0).minCoeff() > 0.0);  // constant row, sign fixed positive
}

TEST_CASE("gft basis is orthonormal and diagonalizes") {
  const DynamicGraph dg = random_instance(7, 3, 5);
  for (const auto& g : dg.snapshots) {
    const Laplacian lap = build_laplacian(g, LaplacianKind::Combinatorial);
    const GftBasis b = gft_basis(lap);
    CHECK((b.vectors * b.vectors.transpose() - Eigen::MatrixXd::Identity(7, 7))
              .cwiseAbs()
              .maxCoeff() <= 1e-9);
    const Eigen::MatrixXd d = b.vectors * lap.dense() * b.vectors.transpose();
    CHECK((d - Eigen::MatrixXd(b.eigenvalues.asDiagonal())).cwiseAbs().maxCoeff() <= 1e-8);
    for (int i = 1; i < 7; ++i) CHECK(b.eigenvalues[i] >= b.eigenvalues[i - 1]);
  }
  const std::vector<GftBasis> all = gft_bases(dg);
  REQUIRE(all.size() == 3);
  CHECK(all[1].vectors ==
        gft_basis(build_laplacian(dg.snapshots[1], LaplacianKind::Combinatorial)).vectors);
}

TEST_CASE("dft basis small cases") {
  const DftBasis one = dft_basis(1);
  CHECK(one.vectors(0, 0) == Cplx(1.0, 0.0));

  const DftBasis two = dft_basis(2);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(two.vectors(0, 0) - Cplx(r, 0)) <= 1e-12);
  CHECK(std::abs(two.vectors(1, 1) - Cplx(-r, 0)) <= 1e-12);

  const DftBasis four = dft_basis(4);
  CHECK(std::abs(four.vectors(1, 0) - Cplx(0.5, 0)) <= 1e-12);
  CHECK(std::abs(four.vectors(1, 1) - Cplx(0, -0.5)) <= 1e-12);
  CHECK(std::abs(four.vectors(1, 2) - Cplx(-0.5, 0)) <= 1e-12);
  CHECK(std::abs(four.vectors(1, 3) - Cplx(0, 0.5)) <= 1e-12);

  CHECK((four.vectors * four.vectors.adjoint() - Eigen::MatrixXcd::Identity(4, 4))
            .cwiseAbs()
            .maxCoeff() <= 1e-10);
  CHECK(four.frequencies[1] == doctest::Approx(2.0 * M_PI / 4.0));
}

TEST_CASE("single node transform reduces to the dft") {
  DynamicGraph dg;
  for (int s = 0; s < 4; ++s) dg.snapshots.push_back(WeightedGraph(1, {}));
  Eigen::MatrixXd x = Eigen::MatrixXd::Ones(1, 4);
  const EftCoefficients c = eft_forward(dg, x);
  CHECK(std::abs(c.values(0, 0) - Cplx(2.0, 0.0)) <= 1e-12);
  for (int k = 1; k < 4; ++k) CHECK(std::abs(c.values(0, k)) <= 1e-12);
}

TEST_CASE("transform round trip") {
  const DynamicGraph dg = random_instance(5, 8, 3);
  const Eigen::MatrixXd x = random_signal(5, 8, 3);
  const EftCoefficients c = eft_forward(dg, x);
  const Eigen::MatrixXcd back = eft_inverse(dg, c);
  CHECK((back.real() - x).norm() / x.norm() <= 1e-9);
  CHECK(back.imag().cwiseAbs().maxCoeff() <= 1e-10);

  EftCoefficients silent = c;
  silent.values.setZero();
  CHECK(eft_inverse(dg, silent).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("transform is linear and unitary") {
  const DynamicGraph dg = random_instance(6, 5, 9);
  const Eigen::MatrixXd x = random_signal(6, 5, 1);
  const Eigen::MatrixXd y = random_signal(6, 5, 2);
  const Eigen::MatrixXcd lhs = eft_forward(dg, Eigen::MatrixXd(3.0 * x - 0.5 * y)).values;
  const Eigen::MatrixXcd rhs =
      3.0 * eft_forward(dg, x).values - 0.5 * eft_forward(dg, y).values;
  CHECK((lhs - rhs).norm() <= 1e-10 * rhs.norm());

  const double drift = std::abs(eft_forward(dg, x).values.norm() - x.norm()) / x.norm();
  CHECK(drift <= 1e-8);
}

TEST_CASE("contraction order does not matter") {
  for (std::uint64_t seed : {1, 2, 3}) {
    const DynamicGraph dg = random_instance(5, 6, seed, 0.2);
    const Eigen::MatrixXd x = random_signal(5, 6, seed);
    const Eigen::MatrixXcd a =
        eft_forward(dg, x, LaplacianKind::Combinatorial, ContractionOrder::GraphFirst).values;
    const Eigen::MatrixXcd b =
        eft_forward(dg, x, LaplacianKind::Combinatorial, ContractionOrder::TimeFirst).values;
    CHECK((a - b).norm() <= 1e-10);
  }
}

TEST_CASE("transform shape errors") {
  const DynamicGraph dg = two_step_pair();
  CHECK_THROWS_AS(eft_forward(dg, Eigen::MatrixXd(Eigen::MatrixXd::Zero(3, 2))), ShapeError);
  CHECK_THROWS_AS(eft_forward(dg, Eigen::MatrixXd(Eigen::MatrixXd::Zero(2, 3))), ShapeError);

  EftCoefficients c = eft_forward(dg, Eigen::MatrixXd(Eigen::MatrixXd::Zero(2, 2)));
  c.values.resize(2, 3);
  CHECK_THROWS_AS(eft_inverse(dg, c), ShapeError);
}

TEST_CASE("frequency grids describe the instance") {
  const DynamicGraph dg = random_instance(4, 6, 17);
  const EftCoefficients c = eft_forward(dg, random_signal(4, 6, 17));
  REQUIRE(c.graph_freqs.rows() == 4);
  REQUIRE(c.graph_freqs.cols() == 6);
  for (int s = 0; s < 6; ++s) {
    const GftBasis b = gft_basis(build_laplacian(dg.snapshots[s], LaplacianKind::Combinatorial));
    CHECK((c.graph_freqs.col(s) - b.eigenvalues).cwiseAbs().maxCoeff() <= 1e-12);
  }
  for (int k = 0; k < 6; ++k) CHECK(c.time_freqs[k] == doctest::Approx(2.0 * M_PI * k / 6.0));
}

TEST_CASE("static coefficients live on the joint spectrum") {
  const int n = 4, t = 4;
  const DynamicGraph one = random_instance(n, 2, 21);
  DynamicGraph dg;
  for (int s = 0; s < t; ++s) dg.snapshots.push_back(one.snapshots[0]);

  const AdBasis ad = ad_basis(build_joint_laplacian(dg));
  const GftBasis g = gft_basis(build_laplacian(dg.snapshots[0], LaplacianKind::Combinatorial));
  std::vector<double> expect;
  for (int k = 0; k < t; ++k)
    for (int l = 0; l < n; ++l) expect.push_back(time_ring_eigenvalues(t)[k] + g.eigenvalues[l]);
  std::sort(expect.begin(), expect.end());
  for (int i = 0; i < n * t; ++i) CHECK(ad.eigenvalues[i] == doctest::Approx(expect[i]).epsilon(1e-8));

  // A single coefficient inverts to an eigen-signal of the joint Laplacian.
  EftCoefficients c = eft_forward(dg, Eigen::MatrixXd(Eigen::MatrixXd::Zero(n, t)));
  const int l = 2, k = 1;
  c.values(l, k) = 1.0;
  const Eigen::MatrixXcd sig = eft_inverse(dg, c);
  const Eigen::VectorXcd v = vectorize_cplx(sig);
  const Eigen::MatrixXcd joint = build_joint_laplacian(dg).dense().cast<Cplx>();
  const double ev = time_ring_eigenvalues(t)[k] + g.eigenvalues[l];
  CHECK((joint * v - ev * v).norm() <= 1e-8 * v.norm());
}

TEST_CASE("explicit transform matrix matches the operator") {
  const DynamicGraph dg = random_instance(3, 4, 8, 0.1);
  const Eigen::MatrixXcd psi = eft_matrix(dg);
  REQUIRE(psi.rows() == 12);

  CHECK((psi * psi.adjoint() - Eigen::MatrixXcd::Identity(12, 12)).cwiseAbs().maxCoeff() <=
        1e-8);

  const Eigen::MatrixXd x = random_signal(3, 4, 8);
  const EftCoefficients c = eft_forward(dg, x);
  const Eigen::VectorXcd lhs = psi * vectorize(x).cast<Cplx>();
  const Eigen::VectorXcd rhs = vectorize_cplx(c.values);
  CHECK((lhs - rhs).norm() <= 1e-10);
}

TEST_CASE("transform matrix of the drifting pair is half integers") {
  const Eigen::MatrixXcd psi = eft_matrix(two_step_pair());
  for (Eigen::Index r = 0; r < 4; ++r)
    for (Eigen::Index q = 0; q < 4; ++q) {
      CHECK(std::abs(psi(r, q).imag()) <= 1e-12);
      CHECK(std::abs(std::abs(psi(r, q).real()) - 0.5) <= 1e-12);
    }
}

TEST_CASE("dense size guard") {
  DynamicGraph big;
  big.snapshots.push_back(WeightedGraph(4097, {{0, 1, 1.0}}));
  CHECK_THROWS_AS(ad_basis(build_joint_laplacian(big)), SizeGuardError);
  CHECK_THROWS_AS(eft_matrix(big), SizeGuardError);

  // The escape hatch still works where the problem is small.
  const DynamicGraph dg = two_step_pair();
  CHECK(ad_basis(build_joint_laplacian(dg), true).eigenvalues.size() == 4);
}

TEST_CASE("ad basis diagonalizes the joint laplacian") {
  const DynamicGraph dg = random_instance(5, 4, 13, 0.2);
  const JointLaplacian joint = build_joint_laplacian(dg);
  const AdBasis ad = ad_basis(joint);
  const Eigen::MatrixXd b = ad.vectors;
  CHECK((b * b.transpose() - Eigen::MatrixXd::Identity(20, 20)).cwiseAbs().maxCoeff() <= 1e-8);
  const Eigen::MatrixXd d = b * joint.dense() * b.transpose();
  CHECK((d - Eigen::MatrixXd(ad.eigenvalues.asDiagonal())).cwiseAbs().maxCoeff() <= 1e-7);
  for (int i = 1; i < 20; ++i) CHECK(ad.eigenvalues[i] >= ad.eigenvalues[i - 1]);
}

TEST_CASE("single node ad basis is the ring spectrum") {
  DynamicGraph dg;
  for (int s = 0; s < 6; ++s) dg.snapshots.push_back(WeightedGraph(1, {}));
  const AdBasis ad = ad_basis(build_joint_laplacian(dg));
  Eigen::VectorXd mu = time_ring_eigenvalues(6);
  std::sort(mu.begin(), mu.end());
  CHECK((ad.eigenvalues - mu).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((ad.vectors * ad.vectors.transpose() - Eigen::MatrixXd::Identity(6, 6))
            .cwiseAbs()
            .maxCoeff() <= 1e-10);
}

TEST_CASE("basis alignment recovers permutations and signs") {
  const DynamicGraph dg = random_instance(6, 2, 31);
  const GftBasis b = gft_basis(build_laplacian(dg.snapshots[0], LaplacianKind::Combinatorial));

  const BasisAlignment self = align_bases(b.vectors, b.vectors, b.eigenvalues, b.eigenvalues);
  CHECK(self.difference <= 1e-12);
  for (int i = 0; i < 6; ++i) CHECK(self.permutation[i] == i);

  Eigen::MatrixXd shuffled(6, 6);
  Eigen::VectorXd eig_shuffled(6);
  const int perm[6] = {3, 0, 5, 1, 4, 2};
  for (int i = 0; i < 6; ++i) {
    shuffled.row(i) = ((i % 2) ? -1.0 : 1.0) * b.vectors.row(perm[i]);
    eig_shuffled[i] = b.eigenvalues[perm[i]];
  }
  const BasisAlignment a = align_bases(b.vectors, shuffled, b.eigenvalues, eig_shuffled);
  CHECK(a.difference <= 1e-10);

  CHECK_THROWS_AS(align_bases(b.vectors, Eigen::MatrixXd::Identity(5, 5), b.eigenvalues,
                              Eigen::VectorXd::Zero(5)),
                  ShapeError);
}

TEST_CASE("drifting pair factored basis stays near the exact one") {
  const DynamicGraph dg = two_step_pair();
  const Eigen::MatrixXcd psi = eft_matrix(dg);
  const AdBasis ad = ad_basis(build_joint_laplacian(dg));

  Eigen::VectorXd ref(4);
  const Eigen::VectorXd mu = time_ring_eigenvalues(2);
  const GftBasis g0 = gft_basis(build_laplacian(dg.snapshots[0], LaplacianKind::Combinatorial));
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) ref[j * 2 + i] = mu[j] + g0.eigenvalues[i];

  const BasisAlignment a =
      align_bases(psi, ad.vectors.cast<Cplx>(), ref, ad.eigenvalues);
  CHECK(a.difference >= 0.05);
  CHECK(a.difference <= 0.10);
}

TEST_CASE("pseudospectrum residuals vanish on static graphs") {
  const DynamicGraph one = random_instance(4, 2, 19);
  DynamicGraph dg;
  for (int s = 0; s < 5; ++s) dg.snapshots.push_back(one.snapshots[0]);
  const Eigen::MatrixXd res = pseudospectrum_residuals(dg);
  CHECK(res.maxCoeff() <= 1e-8);
}

TEST_CASE("pseudospectrum residuals obey the drift bound") {
  const DynamicGraph dg = two_step_pair();
  const double bound = max_laplacian_step(dg) * 2.0 * 2.0 * 2.0;  // delta * N * T^2
  const Eigen::MatrixXd res = pseudospectrum_residuals(dg);
  REQUIRE(res.rows() == 2);
  REQUIRE(res.cols() == 2);
  CHECK(res.maxCoeff() <= bound + 1e-12);

  const PseudospectrumResult r = pseudospectrum_residual(dg, 1, 0);
  CHECK(r.residual == doctest::Approx(res(0, 1)));
  CHECK(r.bound == doctest::Approx(bound));
  CHECK_THROWS_AS(pseudospectrum_residual(dg, 2, 0), DomainError);
  CHECK_THROWS_AS(pseudospectrum_residual(dg, 0, 7), DomainError);
}
