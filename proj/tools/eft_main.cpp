// Command line front end. Every command is a thin shell over the library:
// parse flags, call one library entry point, write files through io. All
// output bytes are deterministic for a given flag set; the clock only ever
// appears in default output filenames.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <string>
#include <vector>

#include "eft/experiments.hpp"
#include "eft/filters.hpp"
#include "eft/graph.hpp"
#include "eft/io.hpp"
#include "eft/spectral.hpp"
#include "eft/synth.hpp"

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<double> parse_double_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& tok : split(s, ',')) {
    if (tok.empty()) throw eft::ParseError("empty entry in " + what + " list '" + s + "'");
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size())
      throw eft::ParseError("invalid " + what + " entry '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  for (double v : parse_double_list(s, what)) out.push_back(static_cast<int>(v));
  return out;
}

std::vector<eft::Method> parse_methods(const std::string& s) {
  std::vector<eft::Method> out;
  for (const auto& tok : split(s, ',')) out.push_back(eft::method_from_string(tok));
  return out;
}

std::vector<std::uint64_t> seed_range(std::uint64_t base, int count) {
  if (count < 1) throw eft::DomainError("num-seeds must be >= 1");
  std::vector<std::uint64_t> seeds(count);
  for (int i = 0; i < count; ++i) seeds[i] = base + i;
  return seeds;
}

std::string output_path(const std::string& out, const std::string& experiment) {
  return out.empty() ? experiment + "_" + eft::timestamp_tag() + ".csv" : out;
}

std::string sibling_json_path(const std::string& csv_path) {
  const std::string suffix = ".csv";
  if (csv_path.size() > suffix.size() &&
      csv_path.compare(csv_path.size() - suffix.size(), suffix.size(), suffix) == 0)
    return csv_path.substr(0, csv_path.size() - suffix.size()) + ".json";
  return csv_path + ".json";
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

// Shared flag values; each subcommand registers the subset it uses.
struct Options {
  std::string graph_path;
  std::string signal_path;
  std::string clean_path;
  std::string coeff_path;
  std::string filter_path;
  std::string config_path;
  std::string out;
  std::string kind = "comb";
  std::string methods = "eft,ad,dft,gft";
  std::string keep = "0.1";
  std::string percentiles = "50,80,95";
  std::string scales = "0,0.125,0.25,0.5,1";
  std::string n_grid = "16,32";
  std::string t_grid = "16,32,64,128";
  std::uint64_t seed = 0;
  int num_seeds = 1;
  int n = 20;
  int t = 32;
  double noise = 0.1;
  double perturb = 0.05;
  int frames = 16;
  int resolution = 8;
  int order = 16;
  int repeats = 3;
  bool json_stdout = false;
  bool force_dense = false;
  bool inject_fault = false;
};

eft::SynthConfig build_config(const CLI::App* sub, const Options& opt) {
  eft::SynthConfig cfg;
  if (!opt.config_path.empty()) cfg = eft::read_synth_config(opt.config_path);
  if (sub->count("--n")) cfg.n = opt.n;
  if (sub->count("--t")) cfg.t = opt.t;
  if (sub->count("--seed")) cfg.seed = opt.seed;
  if (sub->count("--noise")) cfg.noise_std = opt.noise;
  if (sub->count("--perturb")) cfg.perturb_scale = opt.perturb;
  if (sub->count("--kind")) cfg.kind = eft::kind_from_string(opt.kind);
  return cfg;
}

void emit_report(const std::string& csv, const std::string& json, const std::string& path,
                 bool json_stdout) {
  eft::write_text_file(csv, path);
  eft::write_text_file(json, sibling_json_path(path));
  std::printf("wrote %s and %s\n", path.c_str(), sibling_json_path(path).c_str());
  if (json_stdout) std::fputs(json.c_str(), stdout);
}

int cmd_generate(const CLI::App* sub, const Options& opt) {
  eft::SynthConfig cfg = build_config(sub, opt);
  const eft::DynamicGraph dg = eft::gen_evolving_graph(cfg);
  const eft::SignalPair sig = eft::gen_signal(cfg, dg);
  if (!opt.graph_path.empty()) eft::write_graph_json(dg, opt.graph_path);
  if (!opt.signal_path.empty()) eft::write_signal_csv(sig.noisy, opt.signal_path);
  if (!opt.clean_path.empty()) eft::write_signal_csv(sig.clean, opt.clean_path);
  std::printf("generated n=%d t=%d edges_t0=%zu seed=%llu\n", cfg.n, cfg.t,
              dg.snapshots.front().edges().size(),
              static_cast<unsigned long long>(cfg.seed));
  return 0;
}

int cmd_laplacian(const Options& opt) {
  const eft::DynamicGraph dg = eft::read_graph_json(opt.graph_path);
  const eft::LaplacianKind kind = eft::kind_from_string(opt.kind);
  const eft::JointLaplacian joint = eft::build_joint_laplacian(dg, kind);
  if (joint.size() > eft::kDenseSizeGuard && !opt.force_dense)
    throw eft::SizeGuardError("dense joint Laplacian of size " + std::to_string(joint.size()) +
                              " exceeds the guard of " + std::to_string(eft::kDenseSizeGuard) +
                              " (pass --force-dense to override)");
  if (!opt.out.empty()) eft::write_signal_csv(joint.dense(), opt.out);
  std::printf("joint laplacian size=%d nnz=%ld kind=%s\n", joint.size(),
              static_cast<long>(joint.matrix.nonZeros()), eft::to_string(kind).c_str());
  return 0;
}

int cmd_transform(const Options& opt) {
  const eft::DynamicGraph dg = eft::read_graph_json(opt.graph_path);
  const Eigen::MatrixXd x = eft::read_signal_csv(opt.signal_path);
  const eft::LaplacianKind kind = eft::kind_from_string(opt.kind);
  const eft::EftCoefficients c = eft::eft_forward(dg, x, kind);
  const double residual = std::abs(c.values.norm() - x.norm());
  if (!opt.out.empty()) eft::write_coeff_csv(c, kind, opt.out);
  std::printf("N=%d T=%d parseval_residual=%.3e\n", dg.num_nodes(), dg.num_steps(), residual);
  return 0;
}

int cmd_inverse(const CLI::App* sub, const Options& opt) {
  const eft::DynamicGraph dg = eft::read_graph_json(opt.graph_path);
  const eft::CoeffFile file = eft::read_coeff_csv(opt.coeff_path);
  const eft::LaplacianKind kind =
      sub->count("--kind") ? eft::kind_from_string(opt.kind) : file.kind;
  eft::EftCoefficients c;
  c.values = file.values;
  const Eigen::MatrixXcd x = eft::eft_inverse(dg, c, kind);
  const double imag_residual = x.imag().cwiseAbs().maxCoeff();
  if (!opt.out.empty()) eft::write_signal_csv(x.real(), opt.out);
  std::printf("N=%d T=%d imag_residual=%.3e\n", dg.num_nodes(), dg.num_steps(), imag_residual);
  return 0;
}

int cmd_filter(const Options& opt) {
  const eft::DynamicGraph dg = eft::read_graph_json(opt.graph_path);
  const Eigen::MatrixXd x = eft::read_signal_csv(opt.signal_path);
  const eft::LaplacianKind kind = eft::kind_from_string(opt.kind);
  const int t = dg.num_steps();

  eft::FilterSpecFile spec;
  if (!opt.filter_path.empty()) spec = eft::read_filter_spec(opt.filter_path);

  // Vertex side: coefficients live on the normalized spectral axis [0, 1];
  // the joint filter rescales per snapshot.
  eft::ChebyshevFilter vf;
  if (!spec.has_vertex) {
    vf.coeffs = Eigen::VectorXd::Ones(1);
    vf.order = 0;
    vf.lambda_max = 1.0;
  } else if (spec.vertex_is_preset) {
    const eft::FilterPreset preset = spec.vertex_preset;
    vf = eft::fit_chebyshev(
        [&preset](double v) {
          Eigen::VectorXd grid(1);
          grid[0] = v;
          return eft::preset_response(preset, grid)[0];
        },
        opt.order, 1.0);
  } else {
    vf = spec.vertex_chebyshev;
  }

  eft::TemporalFilter tf;
  if (!spec.has_temporal) {
    tf.response = Eigen::VectorXcd::Ones(t);
  } else if (spec.temporal_is_preset) {
    // Fold bins onto [0, 1] so k and T-k share a response value and the
    // filter stays conjugate-symmetric.
    Eigen::VectorXd grid(t);
    for (int k = 0; k < t; ++k) grid[k] = 2.0 * std::min(k, t - k) / t;
    tf.response = eft::preset_response(spec.temporal_preset, grid).cast<std::complex<double>>();
  } else {
    tf.response = spec.temporal_response;
  }

  const Eigen::MatrixXd y = eft::joint_filter(dg, x, vf, tf, kind);
  if (!opt.out.empty()) eft::write_signal_csv(y, opt.out);
  std::printf("N=%d T=%d s2_before=%.6g s2_after=%.6g\n", dg.num_nodes(), t,
              eft::dirichlet_s2(dg, x), eft::dirichlet_s2(dg, y));
  return 0;
}

int cmd_denoise(const CLI::App* sub, const Options& opt) {
  const eft::SynthConfig cfg = build_config(sub, opt);
  const auto methods = parse_methods(opt.methods);
  const auto keeps = parse_double_list(opt.keep, "keep fraction");
  const auto seeds = seed_range(opt.seed, opt.num_seeds);
  const auto rows = eft::run_denoise(cfg, methods, keeps, seeds);

  for (eft::Method m : methods)
    for (double k : keeps) {
      std::vector<double> errs;
      for (const auto& r : rows)
        if (r.method == m && r.keep_fraction == k) errs.push_back(r.error);
      std::printf("method=%s keep=%g median_error=%.6g\n", eft::to_string(m).c_str(), k,
                  median_of(std::move(errs)));
    }

  const std::string path = output_path(opt.out, "denoise");
  emit_report(eft::format_denoise_csv(rows), eft::summary_json("denoise", cfg), path,
              opt.json_stdout);
  return 0;
}

int cmd_compact(const Options& opt) {
  const auto methods = parse_methods(opt.methods);
  const auto percentiles = parse_double_list(opt.percentiles, "percentile");
  std::vector<eft::CompactionReport> rows;
  if (!opt.graph_path.empty()) {
    const eft::DynamicGraph dg = eft::read_graph_json(opt.graph_path);
    const Eigen::MatrixXd x = eft::read_signal_csv(opt.signal_path);
    rows = eft::run_compaction(dg, x, methods, percentiles, opt.seed);
  } else {
    rows = eft::run_mesh_compaction(opt.frames, opt.resolution, methods, percentiles,
                                    seed_range(opt.seed, opt.num_seeds));
  }

  for (eft::Method m : methods)
    for (double p : percentiles) {
      std::vector<double> errs;
      for (const auto& r : rows)
        if (r.method == m && r.percentile_removed == p) errs.push_back(r.error);
      std::printf("method=%s percentile=%g median_error=%.6g\n", eft::to_string(m).c_str(), p,
                  median_of(std::move(errs)));
    }

  const std::string path = output_path(opt.out, "compact");
  emit_report(eft::format_compaction_csv(rows),
              eft::summary_json("compact", {{"frames", static_cast<double>(opt.frames)},
                                            {"resolution", static_cast<double>(opt.resolution)}}),
              path, opt.json_stdout);
  return 0;
}

int cmd_bound(const CLI::App* sub, const Options& opt) {
  const eft::SynthConfig cfg = build_config(sub, opt);
  const auto scales = parse_double_list(opt.scales, "scale");
  const auto seeds = seed_range(opt.seed, opt.num_seeds);
  const auto rows = eft::run_bound_probe(cfg, scales, seeds);

  for (double s : scales) {
    std::vector<double> diffs, residuals, bounds;
    for (const auto& r : rows)
      if (r.perturb_scale == s) {
        diffs.push_back(r.diff_norm);
        residuals.push_back(r.residual_max);
        bounds.push_back(r.bound_value);
      }
    std::printf("scale=%g median_diff=%.6g median_residual=%.6g median_bound=%.6g\n", s,
                median_of(std::move(diffs)), median_of(std::move(residuals)),
                median_of(std::move(bounds)));
  }

  const std::string path = output_path(opt.out, "bound");
  emit_report(eft::format_bound_csv(rows), eft::summary_json("bound", cfg), path,
              opt.json_stdout);
  return 0;
}

int cmd_bench(const Options& opt) {
  const auto n_grid = parse_int_list(opt.n_grid, "n grid");
  const auto t_grid = parse_int_list(opt.t_grid, "t grid");
  const eft::ScalingBenchReport report = eft::run_scaling_bench(n_grid, t_grid, opt.repeats);

  std::vector<std::pair<std::string, double>> extras;
  extras.emplace_back("repeats", opt.repeats);
  for (const auto& s : report.slopes) {
    std::printf("op=%s n=%d log_slope=%.3f\n", s.op.c_str(), s.n, s.slope);
    extras.emplace_back("slope_" + s.op + "_n" + std::to_string(s.n), s.slope);
  }

  const std::string path = output_path(opt.out, "bench");
  emit_report(eft::format_bench_csv(report), eft::summary_json("bench", extras), path,
              opt.json_stdout);
  return 0;
}

int cmd_selftest(const Options& opt) {
  const auto checks = eft::run_property_suite(
      opt.seed, opt.inject_fault ? eft::InjectedFault::NegatedInverse
                                 : eft::InjectedFault::None);
  int failed = 0;
  for (const auto& c : checks)
    if (!c.pass) ++failed;

  if (opt.json_stdout) {
    nlohmann::json verdict;
    verdict["pass"] = failed == 0;
    verdict["checks"] = nlohmann::json::object();
    for (const auto& c : checks) verdict["checks"][c.name] = c.pass;
    std::printf("%s\n", verdict.dump(2).c_str());
  } else {
    for (const auto& c : checks)
      std::printf("%s %s  (%s)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    std::printf("selftest: %zu/%zu checks passed\n", checks.size() - failed, checks.size());
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolving graph Fourier transform toolkit"};
  app.require_subcommand(1);
  Options opt;

  auto add_kind = [&](CLI::App* sub) {
    sub->add_option("--kind", opt.kind, "Laplacian kind: comb or norm");
  };
  auto add_config_flags = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "generator config JSON");
    sub->add_option("--n", opt.n, "number of nodes");
    sub->add_option("--t", opt.t, "number of timesteps");
    sub->add_option("--seed", opt.seed, "base seed");
    sub->add_option("--noise", opt.noise, "noise standard deviation");
    sub->add_option("--perturb", opt.perturb, "per-step edge drift scale");
    add_kind(sub);
  };
  auto add_report_flags = [&](CLI::App* sub) {
    sub->add_option("--out", opt.out, "output CSV path (default <cmd>_<timestamp>.csv)");
    sub->add_flag("--json", opt.json_stdout, "also print the JSON summary to stdout");
  };

  CLI::App* gen = app.add_subcommand("generate", "generate a random evolving graph and signal");
  add_config_flags(gen);
  gen->add_option("--graph", opt.graph_path, "write the graph JSON here");
  gen->add_option("--signal", opt.signal_path, "write the noisy signal CSV here");
  gen->add_option("--clean", opt.clean_path, "write the clean signal CSV here");

  CLI::App* lap = app.add_subcommand("laplacian", "build the joint Laplacian of a graph file");
  lap->add_option("--graph", opt.graph_path, "input graph JSON")->required();
  lap->add_option("--out", opt.out, "write the dense matrix CSV here");
  lap->add_flag("--force-dense", opt.force_dense, "ignore the dense size guard");
  add_kind(lap);

  CLI::App* tra = app.add_subcommand("transform", "forward transform of a signal");
  tra->add_option("--graph", opt.graph_path, "input graph JSON")->required();
  tra->add_option("--signal", opt.signal_path, "input signal CSV")->required();
  tra->add_option("--out", opt.out, "write coefficients CSV here");
  add_kind(tra);

  CLI::App* inv = app.add_subcommand("inverse", "inverse transform of coefficients");
  inv->add_option("--graph", opt.graph_path, "input graph JSON")->required();
  inv->add_option("--coeffs", opt.coeff_path, "input coefficients CSV")->required();
  inv->add_option("--out", opt.out, "write the reconstructed signal CSV here");
  add_kind(inv);

  CLI::App* fil = app.add_subcommand("filter", "apply a separable joint filter");
  fil->add_option("--graph", opt.graph_path, "input graph JSON")->required();
  fil->add_option("--signal", opt.signal_path, "input signal CSV")->required();
  fil->add_option("--filter", opt.filter_path, "filter spec JSON (default identity)");
  fil->add_option("--order", opt.order, "Chebyshev order used for presets");
  fil->add_option("--out", opt.out, "write the filtered signal CSV here");
  add_kind(fil);

  CLI::App* den = app.add_subcommand("denoise", "sparsify-and-reconstruct comparison");
  add_config_flags(den);
  den->add_option("--methods", opt.methods, "comma list of eft,ad,dft,gft");
  den->add_option("--keep", opt.keep, "comma list of keep fractions");
  den->add_option("--num-seeds", opt.num_seeds, "number of consecutive seeds");
  add_report_flags(den);

  CLI::App* com = app.add_subcommand("compact", "coefficient compaction curves");
  com->add_option("--graph", opt.graph_path, "input graph JSON (default: generated mesh)");
  com->add_option("--signal", opt.signal_path, "input signal CSV (with --graph)");
  com->add_option("--methods", opt.methods, "comma list of eft,ad,dft,gft");
  com->add_option("--percentiles", opt.percentiles, "comma list of removal percentiles");
  com->add_option("--frames", opt.frames, "mesh frames");
  com->add_option("--resolution", opt.resolution, "mesh grid resolution");
  com->add_option("--seed", opt.seed, "base seed");
  com->add_option("--num-seeds", opt.num_seeds, "number of consecutive seeds");
  add_report_flags(com);

  CLI::App* bou = app.add_subcommand("bound", "perturbation bound probe");
  add_config_flags(bou);
  bou->add_option("--scales", opt.scales, "comma list of perturbation scales, must include 0");
  bou->add_option("--num-seeds", opt.num_seeds, "number of consecutive seeds");
  add_report_flags(bou);

  CLI::App* ben = app.add_subcommand("bench", "wall-clock scaling benchmark");
  ben->add_option("--n-grid", opt.n_grid, "comma list of node counts");
  ben->add_option("--t-grid", opt.t_grid, "comma list of timestep counts");
  ben->add_option("--repeats", opt.repeats, "repeats per cell (median reported)");
  add_report_flags(ben);

  CLI::App* sel = app.add_subcommand("selftest", "run every library invariant check");
  sel->add_option("--seed", opt.seed, "suite seed");
  sel->add_flag("--json", opt.json_stdout, "print a verdict object instead of text lines");
  sel->add_flag("--inject-fault", opt.inject_fault,
                "negate the inverse to prove the suite detects defects");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen, opt);
    if (lap->parsed()) return cmd_laplacian(opt);
    if (tra->parsed()) return cmd_transform(opt);
    if (inv->parsed()) return cmd_inverse(inv, opt);
    if (fil->parsed()) return cmd_filter(opt);
    if (den->parsed()) return cmd_denoise(den, opt);
    if (com->parsed()) return cmd_compact(opt);
    if (bou->parsed()) return cmd_bound(bou, opt);
    if (ben->parsed()) return cmd_bench(opt);
    if (sel->parsed()) return cmd_selftest(opt);
  } catch (const eft::ParseError& e) {
    if (e.line >= 1)
      std::fprintf(stderr, "error at line %d, column %d: %s\n", e.line, e.column, e.what());
    else
      std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const eft::SymmetryError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const eft::DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const eft::ShapeError& e) {
    std::fprintf(stderr, "shape error: %s\n", e.what());
    return 3;
  } catch (const eft::SizeGuardError& e) {
    std::fprintf(stderr, "numerical guard: %s\n", e.what());
    return 4;
  } catch (const eft::NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 4;
  } catch (const eft::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 4;
  }
  return 0;
}
