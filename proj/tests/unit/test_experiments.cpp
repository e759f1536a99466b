#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "eft/experiments.hpp"
#include "eft/spectral.hpp"

using namespace eft;

namespace {

SynthConfig small_config(std::uint64_t seed = 0) {
  SynthConfig cfg;
  cfg.n = 6;
  cfg.t = 5;
  cfg.seed = seed;
  return cfg;
}

Eigen::MatrixXd random_signal(int n, int t, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd x(n, t);
  for (int j = 0; j < t; ++j)
    for (int i = 0; i < n; ++i) x(i, j) = normal(rng);
  return x;
}

}  // namespace

TEST_CASE("method names round trip") {
  for (Method m : {Method::EFT, Method::AD, Method::DFTOnly, Method::GFTOnly})
    CHECK(method_from_string(to_string(m)) == m);
  CHECK_THROWS_AS(method_from_string("wavelet"), DomainError);
}

TEST_CASE("denoise keeps everything at fraction one") {
  const SynthConfig cfg = small_config(4);
  const DynamicGraph dg = gen_evolving_graph(cfg);
  const SignalPair sig = gen_signal(cfg, dg);
  const double want = (sig.noisy - sig.clean).norm() / sig.clean.norm();

  const auto rows = run_denoise(cfg, {Method::EFT, Method::AD}, {1.0}, {4});
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) CHECK(r.error == doctest::Approx(want).epsilon(1e-6));
}

TEST_CASE("denoise rows carry the grid and replay identically") {
  const SynthConfig cfg = small_config(1);
  const auto a = run_denoise(cfg, {Method::EFT, Method::DFTOnly}, {0.1, 0.5}, {1, 2});
  REQUIRE(a.size() == 8);
  const auto b = run_denoise(cfg, {Method::EFT, Method::DFTOnly}, {0.1, 0.5}, {1, 2});
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].error == b[i].error);
    CHECK(std::isfinite(a[i].error));
    CHECK(a[i].error >= 0.0);
  }
  CHECK_THROWS_AS(run_denoise(cfg, {}, {0.1}, {1}), DomainError);
  CHECK_THROWS_AS(run_denoise(cfg, {Method::EFT}, {}, {1}), DomainError);
  CHECK_THROWS_AS(run_denoise(cfg, {Method::EFT}, {0.1}, {}), DomainError);
  CHECK_THROWS_AS(run_denoise(cfg, {Method::EFT}, {1.5}, {1}), DomainError);
}

TEST_CASE("tiny keep fraction still keeps one coefficient") {
  const SynthConfig cfg = small_config(9);
  const auto rows = run_denoise(cfg, {Method::EFT}, {1e-9}, {9});
  REQUIRE(rows.size() == 1);
  CHECK(std::isfinite(rows[0].error));
  CHECK(rows[0].error > 0.0);
}

TEST_CASE("more noise means more reconstruction error") {
  SynthConfig quiet = small_config(3);
  quiet.noise_std = 0.02;
  SynthConfig loud = quiet;
  loud.noise_std = 0.5;
  std::vector<double> q, l;
  for (std::uint64_t s = 0; s < 9; ++s) {
    q.push_back(run_denoise(quiet, {Method::EFT}, {0.3}, {s}).front().error);
    l.push_back(run_denoise(loud, {Method::EFT}, {0.3}, {s}).front().error);
  }
  std::sort(q.begin(), q.end());
  std::sort(l.begin(), l.end());
  CHECK(l[4] > q[4]);
}

TEST_CASE("compaction curve runs from zero to one") {
  const SynthConfig cfg = small_config(7);
  const DynamicGraph dg = gen_evolving_graph(cfg);
  const Eigen::MatrixXd x = random_signal(6, 5, 7);
  const std::vector<double> percentiles = {0.0, 20.0, 40.0, 60.0, 80.0, 100.0};

  for (Method m : {Method::EFT, Method::AD, Method::DFTOnly, Method::GFTOnly}) {
    const auto rows = run_compaction(dg, x, {m}, percentiles, 7);
    REQUIRE(rows.size() == percentiles.size());
    CHECK(rows.front().error <= 1e-9);
    CHECK(rows.back().error == doctest::Approx(1.0));
    for (std::size_t i = 1; i < rows.size(); ++i)
      CHECK(rows[i].error >= rows[i - 1].error - 1e-12);
  }

  CHECK_THROWS_AS(run_compaction(dg, x, {Method::EFT}, {-5.0}, 7), DomainError);
  CHECK_THROWS_AS(run_compaction(dg, x, {Method::EFT}, {101.0}, 7), DomainError);
  CHECK_THROWS_AS(run_compaction(dg, random_signal(4, 5, 7), {Method::EFT}, {50.0}, 7),
                  ShapeError);
}

TEST_CASE("mesh compaction grid and determinism") {
  const std::vector<double> percentiles = {50.0, 95.0};
  const auto a = run_mesh_compaction(8, 4, {Method::EFT, Method::GFTOnly}, percentiles, {0, 1});
  REQUIRE(a.size() == 8);  // seeds x methods x percentiles
  const auto b = run_mesh_compaction(8, 4, {Method::EFT, Method::GFTOnly}, percentiles, {0, 1});
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].error == b[i].error);

  // The wave is a handful of factored coefficients, so half the budget is free.
  for (const auto& r : a)
    if (r.method == Method::EFT && r.percentile_removed == 50.0) CHECK(r.error <= 1e-9);

  CHECK_THROWS_AS(run_mesh_compaction(8, 4, {Method::EFT}, percentiles, {}), DomainError);
}

TEST_CASE("bound probe needs the static reference point") {
  const SynthConfig cfg = small_config(2);
  CHECK_THROWS_AS(run_bound_probe(cfg, {0.5, 1.0}, {2}), DomainError);
  CHECK_THROWS_AS(run_bound_probe(cfg, {}, {2}), DomainError);
}

TEST_CASE("bound probe rows describe the drift") {
  SynthConfig cfg = small_config(5);
  cfg.perturb_scale = 0.1;
  const auto rows = run_bound_probe(cfg, {0.0, 0.5, 1.0}, {5, 6});
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) {
    CHECK(r.bound_value == doctest::Approx(r.lipschitz * 6.0 * 25.0));
    CHECK(r.residual_max <= r.bound_value + 1e-9);
    CHECK(r.diff_norm >= 0.0);
    if (r.perturb_scale == 0.0) {
      CHECK(r.diff_norm <= 1e-8);
      CHECK(r.lipschitz <= 1e-12);
    } else {
      CHECK(r.lipschitz > 0.0);
    }
  }
}

TEST_CASE("scaling bench respects the dense guard") {
  const ScalingBenchReport report = run_scaling_bench({4}, {6, 12}, 1);
  REQUIRE(report.cells.size() == 4);
  for (const auto& c : report.cells) {
    CHECK_FALSE(c.skipped);
    CHECK(c.seconds > 0.0);
  }
  REQUIRE(report.slopes.size() == 2);

  const ScalingBenchReport guarded = run_scaling_bench({70}, {60}, 1);
  bool found = false;
  for (const auto& c : guarded.cells)
    if (c.op == "ad_basis") {
      CHECK(c.skipped);
      found = true;
    }
  CHECK(found);
}

TEST_CASE("property suite passes and the fault trips it") {
  const auto checks = run_property_suite(0);
  CHECK(checks.size() >= 25);
  for (const auto& c : checks) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.pass);
  }

  const auto faulty = run_property_suite(0, InjectedFault::NegatedInverse);
  bool tripped = false;
  for (const auto& c : faulty)
    if (c.name == "transform_round_trip") tripped = !c.pass;
  CHECK(tripped);
}

TEST_CASE("property suite holds across seeds") {
  for (std::uint64_t seed : {11, 29}) {
    const auto checks = run_property_suite(seed);
    int failed = 0;
    for (const auto& c : checks)
      if (!c.pass) ++failed;
    CHECK(failed == 0);
  }
}
