#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "eft/errors.hpp"
#include "eft/experiments.hpp"
#include "eft/filters.hpp"
#include "eft/graph.hpp"
#include "eft/spectral.hpp"
#include "eft/synth.hpp"

namespace eft {

// Dynamic graphs travel as JSON:
//   {"num_nodes": 2, "snapshots": [[[0, 1, 0.5]], [[0, 1, 0.6]]]}
// Edge rows are [u, v, w]. Duplicate rows for one node pair with different
// weights describe an asymmetric relation and raise SymmetryError naming the
// pair; malformed JSON raises ParseError with line and column.
DynamicGraph parse_graph_json(const std::string& text);
DynamicGraph read_graph_json(const std::string& path);
std::string format_graph_json(const DynamicGraph& dg);
void write_graph_json(const DynamicGraph& dg, const std::string& path);

// Generator configs as JSON objects; absent fields keep their defaults.
SynthConfig parse_synth_config(const std::string& text);
SynthConfig read_synth_config(const std::string& path);
std::string format_synth_config(const SynthConfig& cfg);

std::string to_string(LaplacianKind kind);  // "comb" / "norm"
LaplacianKind kind_from_string(const std::string& name);

// Signals are bare CSV, N rows by T columns, full double precision.
// '#'-prefixed lines are comments.
Eigen::MatrixXd parse_signal_csv(const std::string& text);
Eigen::MatrixXd read_signal_csv(const std::string& path);
std::string format_signal_csv(const Eigen::MatrixXd& x);
void write_signal_csv(const Eigen::MatrixXd& x, const std::string& path);

// Coefficient files interleave real and imaginary parts (2T columns) under
// the header "# eft N=<N> T=<T> kind=<kind> norm=unitary".
struct CoeffFile {
  Eigen::MatrixXcd values;
  LaplacianKind kind = LaplacianKind::Combinatorial;
};
std::string format_coeff_csv(const EftCoefficients& c, LaplacianKind kind);
void write_coeff_csv(const EftCoefficients& c, LaplacianKind kind, const std::string& path);
CoeffFile parse_coeff_csv(const std::string& text);
CoeffFile read_coeff_csv(const std::string& path);

// Joint basis dump, one row per eigenvector prefixed by its eigenvalue.
std::string format_basis_csv(const AdBasis& basis);
void write_basis_csv(const AdBasis& basis, const std::string& path);

/// Parsed filter description. Either side may be absent (identity), be a
/// named preset, or carry explicit data:
///   {"vertex": {"type": "chebyshev", "coeffs": [...], "order": 2}
///             | {"type": "preset", "preset": "lowpass", "cutoffs": [0.5]},
///    "temporal": {"type": "preset", ...}
///              | {"type": "explicit", "response_re": [...], "response_im": [...]}}
struct FilterSpecFile {
  bool has_vertex = false;
  bool vertex_is_preset = false;
  ChebyshevFilter vertex_chebyshev;
  FilterPreset vertex_preset;
  bool has_temporal = false;
  bool temporal_is_preset = false;
  FilterPreset temporal_preset;
  Eigen::VectorXcd temporal_response;
};
FilterSpecFile parse_filter_spec(const std::string& text);
FilterSpecFile read_filter_spec(const std::string& path);

// Report tables, one writer per experiment. Output is deterministic for a
// given report list; nothing inside a file depends on the clock.
std::string format_denoise_csv(const std::vector<DenoiseReport>& rows);
std::string format_compaction_csv(const std::vector<CompactionReport>& rows);
std::string format_bound_csv(const std::vector<BoundReport>& rows);
std::string format_bench_csv(const ScalingBenchReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& text, const std::string& path);

/// Companion JSON summary: experiment name, config echo, git describe output
/// and a hardware note, plus caller-supplied scalar extras.
std::string summary_json(const std::string& experiment, const SynthConfig& cfg,
                         const std::vector<std::pair<std::string, double>>& extras = {});
std::string summary_json(const std::string& experiment,
                         const std::vector<std::pair<std::string, double>>& extras);

std::string git_describe();   // "unknown" when not in a repository
std::string hardware_note();  // kernel, machine, hardware thread count
std::string timestamp_tag();  // UTC, YYYYmmdd_HHMMSS, for default filenames

}  // namespace eft
