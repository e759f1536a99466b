#include <benchmark/benchmark.h>

#include <Eigen/Dense>
#include <random>

#include "eft/filters.hpp"
#include "eft/graph.hpp"
#include "eft/spectral.hpp"
#include "eft/synth.hpp"

namespace {

eft::DynamicGraph make_instance(int n, int t) {
  eft::SynthConfig cfg;
  cfg.n = n;
  cfg.t = t;
  cfg.seed = 1;
  return eft::gen_evolving_graph(cfg);
}

Eigen::MatrixXd make_signal(int n, int t) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd x(n, t);
  for (int j = 0; j < t; ++j)
    for (int i = 0; i < n; ++i) x(i, j) = normal(rng);
  return x;
}

void BM_EftForward(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int t = static_cast<int>(state.range(1));
  const eft::DynamicGraph dg = make_instance(n, t);
  const Eigen::MatrixXd x = make_signal(n, t);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eft_forward(dg, x).values.squaredNorm());
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n) * t);
}
BENCHMARK(BM_EftForward)->Args({16, 16})->Args({16, 64})->Args({32, 64})->Args({64, 64});

// The joint EVD this transform avoids; sizes stay under the dense guard.
void BM_AdBasis(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int t = static_cast<int>(state.range(1));
  const eft::JointLaplacian joint = eft::build_joint_laplacian(make_instance(n, t));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eft::ad_basis(joint).eigenvalues.sum());
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n) * t);
}
BENCHMARK(BM_AdBasis)->Args({16, 16})->Args({16, 32})->Args({16, 64})->Args({32, 32});

void BM_JointLaplacianBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int t = static_cast<int>(state.range(1));
  const eft::DynamicGraph dg = make_instance(n, t);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eft::build_joint_laplacian(dg).matrix.nonZeros());
  }
}
BENCHMARK(BM_JointLaplacianBuild)->Args({64, 64})->Args({128, 32});

void BM_ChebyshevApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int order = static_cast<int>(state.range(1));
  const eft::DynamicGraph dg = make_instance(n, 2);
  const eft::Laplacian lap =
      eft::build_laplacian(dg.snapshots[0], eft::LaplacianKind::Combinatorial);
  eft::ChebyshevFilter f = eft::fit_chebyshev(
      [](double v) { return 1.0 / (1.0 + v); }, order,
      eft::estimate_lambda_max(lap).value);
  const Eigen::MatrixXd x = make_signal(n, 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eft::chebyshev_apply(lap, f, x).squaredNorm());
  }
}
BENCHMARK(BM_ChebyshevApply)->Args({256, 8})->Args({256, 32})->Args({1024, 16});

}  // namespace

BENCHMARK_MAIN();
