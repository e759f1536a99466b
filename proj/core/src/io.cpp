#include "eft/io.hpp"

#include <sys/utsname.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <thread>

namespace eft {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::pair<int, int> line_col_at(const std::string& text, std::size_t byte) {
  const std::size_t pos = byte > 0 ? std::min(byte - 1, text.size()) : 0;
  int line = 1, col = 1;
  for (std::size_t i = 0; i < pos; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col_at(text, e.byte);
    throw ParseError(std::string("JSON parse error: ") + e.what(), line, col);
  }
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

std::string to_string(LaplacianKind kind) {
  return kind == LaplacianKind::Combinatorial ? "comb" : "norm";
}

LaplacianKind kind_from_string(const std::string& name) {
  if (name == "comb") return LaplacianKind::Combinatorial;
  if (name == "norm") return LaplacianKind::Normalized;
  throw DomainError("unknown Laplacian kind '" + name + "' (expected comb or norm)");
}

DynamicGraph parse_graph_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("graph file must be a JSON object");
  if (!j.contains("num_nodes") || !j["num_nodes"].is_number_integer())
    throw ParseError("graph file needs an integer 'num_nodes' field");
  const int n = j["num_nodes"].get<int>();
  if (!j.contains("snapshots") || !j["snapshots"].is_array() || j["snapshots"].empty())
    throw ParseError("graph file needs a non-empty 'snapshots' array");

  DynamicGraph dg;
  for (const auto& snap : j["snapshots"]) {
    if (!snap.is_array())
      throw ParseError("each snapshot must be an array of [u, v, w] triples");
    std::vector<Edge> edges;
    for (const auto& e : snap) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
          !e[1].is_number_integer() || !e[2].is_number())
        throw ParseError("each edge must be a [u, v, w] triple with integer endpoints");
      edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
    }
    dg.snapshots.emplace_back(n, std::move(edges));
  }
  dg.validate();
  return dg;
}

DynamicGraph read_graph_json(const std::string& path) {
  return parse_graph_json(read_text_file(path));
}

std::string format_graph_json(const DynamicGraph& dg) {
  dg.validate();
  json j;
  j["num_nodes"] = dg.num_nodes();
  j["snapshots"] = json::array();
  for (const auto& g : dg.snapshots) {
    json edges = json::array();
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v, e.w});
    j["snapshots"].push_back(std::move(edges));
  }
  return j.dump(2) + "\n";
}

void write_graph_json(const DynamicGraph& dg, const std::string& path) {
  write_text_file(format_graph_json(dg), path);
}

SynthConfig parse_synth_config(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("config file must be a JSON object");
  SynthConfig cfg;
  cfg.n = j.value("n", cfg.n);
  cfg.t = j.value("t", cfg.t);
  cfg.perturb_scale = j.value("perturb_scale", cfg.perturb_scale);
  cfg.p_edge = j.value("p_edge", cfg.p_edge);
  cfg.p_struct = j.value("p_struct", cfg.p_struct);
  cfg.alpha = j.value("alpha", cfg.alpha);
  cfg.eigvec_index = j.value("eigvec_index", cfg.eigvec_index);
  cfg.beta = j.value("beta", cfg.beta);
  cfg.omega = j.value("omega", cfg.omega);
  cfg.noise_std = j.value("noise_std", cfg.noise_std);
  cfg.seed = j.value("seed", cfg.seed);
  if (j.contains("kind")) cfg.kind = kind_from_string(j["kind"].get<std::string>());
  cfg.validate();
  return cfg;
}

SynthConfig read_synth_config(const std::string& path) {
  return parse_synth_config(read_text_file(path));
}

std::string format_synth_config(const SynthConfig& cfg) {
  json j;
  j["n"] = cfg.n;
  j["t"] = cfg.t;
  j["perturb_scale"] = cfg.perturb_scale;
  j["p_edge"] = cfg.p_edge;
  j["p_struct"] = cfg.p_struct;
  j["alpha"] = cfg.alpha;
  j["eigvec_index"] = cfg.eigvec_index;
  j["beta"] = cfg.beta;
  j["omega"] = cfg.omega;
  j["noise_std"] = cfg.noise_std;
  j["seed"] = cfg.seed;
  j["kind"] = to_string(cfg.kind);
  return j.dump(2) + "\n";
}

Eigen::MatrixXd parse_signal_csv(const std::string& text) {
  const std::vector<std::string> lines = split_lines(text);
  std::vector<std::vector<double>> rows;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string& line = lines[li];
    if (is_blank(line) || line[0] == '#') continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) comma = line.size();
      std::string tok = line.substr(pos, comma - pos);
      const std::size_t col = pos + 1;
      const std::size_t a = tok.find_first_not_of(" \t");
      const std::size_t b = tok.find_last_not_of(" \t");
      tok = a == std::string::npos ? std::string() : tok.substr(a, b - a + 1);
      char* end = nullptr;
      const double v = tok.empty() ? 0.0 : std::strtod(tok.c_str(), &end);
      if (tok.empty() || end != tok.c_str() + tok.size())
        throw ParseError("invalid number '" + tok + "'", static_cast<int>(li + 1),
                         static_cast<int>(col));
      row.push_back(v);
      pos = comma + 1;
      if (comma == line.size()) break;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("row has " + std::to_string(row.size()) + " fields, expected " +
                           std::to_string(rows.front().size()),
                       static_cast<int>(li + 1));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no numeric rows found");
  Eigen::MatrixXd x(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) x(i, j) = rows[i][j];
  return x;
}

Eigen::MatrixXd read_signal_csv(const std::string& path) {
  return parse_signal_csv(read_text_file(path));
}

std::string format_signal_csv(const Eigen::MatrixXd& x) {
  std::string out;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      if (j) out += ',';
      out += fmt(x(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_signal_csv(const Eigen::MatrixXd& x, const std::string& path) {
  write_text_file(format_signal_csv(x), path);
}

namespace {

std::string spectral_header(int n, int t, LaplacianKind kind) {
  return "# eft N=" + std::to_string(n) + " T=" + std::to_string(t) + " kind=" +
         to_string(kind) + " norm=unitary\n";
}

// Parses "# eft N=<N> T=<T> kind=<kind> norm=unitary" from the first line.
void parse_spectral_header(const std::string& text, int& n, int& t, LaplacianKind& kind) {
  const std::vector<std::string> lines = split_lines(text);
  for (const auto& line : lines) {
    if (is_blank(line)) continue;
    if (line[0] != '#') break;
    std::istringstream iss(line);
    std::string hash, tag, token;
    iss >> hash >> tag;
    if (hash != "#" || tag != "eft") break;
    n = t = -1;
    std::string kind_name;
    while (iss >> token) {
      const std::size_t eq = token.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = token.substr(0, eq);
      const std::string value = token.substr(eq + 1);
      if (key == "N") n = std::stoi(value);
      if (key == "T") t = std::stoi(value);
      if (key == "kind") kind_name = value;
    }
    if (n < 1 || t < 1 || kind_name.empty())
      throw ParseError("incomplete header line '" + line + "'", 1);
    kind = kind_from_string(kind_name);
    return;
  }
  throw ParseError("missing '# eft ...' header line", 1);
}

}  // namespace

std::string format_coeff_csv(const EftCoefficients& c, LaplacianKind kind) {
  const int n = static_cast<int>(c.values.rows());
  const int t = static_cast<int>(c.values.cols());
  std::string out = spectral_header(n, t, kind);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < t; ++j) {
      if (j) out += ',';
      out += fmt(c.values(i, j).real());
      out += ',';
      out += fmt(c.values(i, j).imag());
    }
    out += '\n';
  }
  return out;
}

void write_coeff_csv(const EftCoefficients& c, LaplacianKind kind, const std::string& path) {
  write_text_file(format_coeff_csv(c, kind), path);
}

CoeffFile parse_coeff_csv(const std::string& text) {
  int n = 0, t = 0;
  CoeffFile file;
  parse_spectral_header(text, n, t, file.kind);
  const Eigen::MatrixXd raw = parse_signal_csv(text);
  if (raw.rows() != n || raw.cols() != 2 * t)
    throw ShapeError("coefficient table is " + std::to_string(raw.rows()) + "x" +
                     std::to_string(raw.cols()) + ", header says " + std::to_string(n) + "x2*" +
                     std::to_string(t));
  file.values.resize(n, t);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < t; ++j)
      file.values(i, j) = {raw(i, 2 * j), raw(i, 2 * j + 1)};
  return file;
}

CoeffFile read_coeff_csv(const std::string& path) {
  return parse_coeff_csv(read_text_file(path));
}

std::string format_basis_csv(const AdBasis& basis) {
  std::string out = spectral_header(basis.num_nodes, basis.num_steps, basis.kind);
  for (Eigen::Index i = 0; i < basis.vectors.rows(); ++i) {
    out += fmt(basis.eigenvalues[i]);
    for (Eigen::Index j = 0; j < basis.vectors.cols(); ++j) {
      out += ',';
      out += fmt(basis.vectors(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_basis_csv(const AdBasis& basis, const std::string& path) {
  write_text_file(format_basis_csv(basis), path);
}

namespace {

FilterPreset parse_preset(const json& v, const std::string& side) {
  if (!v.contains("preset") || !v["preset"].is_string())
    throw ParseError(side + " preset filter needs a 'preset' name");
  FilterPreset preset;
  preset.name = preset_kind_from_string(v["preset"].get<std::string>());
  preset.cutoffs = v.value("cutoffs", std::vector<double>{});
  try {
    preset.validate();
  } catch (const Error& e) {
    throw ParseError(side + " filter: " + e.what());
  }
  return preset;
}

}  // namespace

FilterSpecFile parse_filter_spec(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("filter file must be a JSON object");
  FilterSpecFile f;

  if (j.contains("vertex")) {
    const json& v = j["vertex"];
    if (!v.is_object() || !v.contains("type") || !v["type"].is_string())
      throw ParseError("vertex filter needs a 'type' field");
    const std::string type = v["type"].get<std::string>();
    f.has_vertex = true;
    if (type == "chebyshev") {
      if (!v.contains("coeffs") || !v["coeffs"].is_array())
        throw ParseError("chebyshev vertex filter needs a 'coeffs' array");
      const auto coeffs = v["coeffs"].get<std::vector<double>>();
      f.vertex_chebyshev.coeffs =
          Eigen::Map<const Eigen::VectorXd>(coeffs.data(), coeffs.size());
      f.vertex_chebyshev.order = v.value("order", static_cast<int>(coeffs.size()) - 1);
      f.vertex_chebyshev.lambda_max = v.value("lambda_max", 2.0);
      try {
        f.vertex_chebyshev.validate();
      } catch (const Error& e) {
        throw ParseError(std::string("vertex filter: ") + e.what());
      }
    } else if (type == "preset") {
      f.vertex_is_preset = true;
      f.vertex_preset = parse_preset(v, "vertex");
    } else {
      throw ParseError("unknown vertex filter type '" + type + "'");
    }
  }

  if (j.contains("temporal")) {
    const json& v = j["temporal"];
    if (!v.is_object() || !v.contains("type") || !v["type"].is_string())
      throw ParseError("temporal filter needs a 'type' field");
    const std::string type = v["type"].get<std::string>();
    f.has_temporal = true;
    if (type == "preset") {
      f.temporal_is_preset = true;
      f.temporal_preset = parse_preset(v, "temporal");
    } else if (type == "explicit") {
      if (!v.contains("response_re") || !v["response_re"].is_array())
        throw ParseError("explicit temporal filter needs a 'response_re' array");
      const auto re = v["response_re"].get<std::vector<double>>();
      auto im = v.value("response_im", std::vector<double>{});
      if (im.empty()) im.assign(re.size(), 0.0);
      if (im.size() != re.size())
        throw ParseError("response_re and response_im must have equal length");
      f.temporal_response.resize(re.size());
      for (std::size_t k = 0; k < re.size(); ++k) f.temporal_response[k] = {re[k], im[k]};
    } else {
      throw ParseError("unknown temporal filter type '" + type + "'");
    }
  }
  return f;
}

FilterSpecFile read_filter_spec(const std::string& path) {
  return parse_filter_spec(read_text_file(path));
}

std::string format_denoise_csv(const std::vector<DenoiseReport>& rows) {
  std::string out = "method,keep_fraction,seed,error\n";
  for (const auto& r : rows)
    out += to_string(r.method) + "," + fmt(r.keep_fraction) + "," + std::to_string(r.seed) +
           "," + fmt(r.error) + "\n";
  return out;
}

std::string format_compaction_csv(const std::vector<CompactionReport>& rows) {
  std::string out = "method,percentile_removed,seed,error\n";
  for (const auto& r : rows)
    out += to_string(r.method) + "," + fmt(r.percentile_removed) + "," +
           std::to_string(r.seed) + "," + fmt(r.error) + "\n";
  return out;
}

std::string format_bound_csv(const std::vector<BoundReport>& rows) {
  std::string out =
      "perturb_scale,seed,diff_norm,lipschitz,min_gap_g,min_gap_j,residual_max,"
      "bound_value,omega_max\n";
  for (const auto& r : rows)
    out += fmt(r.perturb_scale) + "," + std::to_string(r.seed) + "," + fmt(r.diff_norm) + "," +
           fmt(r.lipschitz) + "," + fmt(r.min_gap_g) + "," + fmt(r.min_gap_j) + "," +
           fmt(r.residual_max) + "," + fmt(r.bound_value) + "," + fmt(r.omega_max) + "\n";
  return out;
}

std::string format_bench_csv(const ScalingBenchReport& report) {
  std::string out = "op,n,t,seconds,skipped\n";
  for (const auto& c : report.cells)
    out += c.op + "," + std::to_string(c.n) + "," + std::to_string(c.t) + "," +
           fmt(c.seconds) + "," + (c.skipped ? "1" : "0") + "\n";
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error("failed reading '" + path + "'");
  return ss.str();
}

void write_text_file(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error("failed writing '" + path + "'");
}

namespace {

json summary_base(const std::string& experiment) {
  json j;
  j["experiment"] = experiment;
  j["git_describe"] = git_describe();
  j["hardware"] = hardware_note();
  return j;
}

void add_extras(json& j, const std::vector<std::pair<std::string, double>>& extras) {
  if (extras.empty()) return;
  json e = json::object();
  for (const auto& [key, value] : extras) e[key] = value;
  j["extras"] = std::move(e);
}

}  // namespace

std::string summary_json(const std::string& experiment, const SynthConfig& cfg,
                         const std::vector<std::pair<std::string, double>>& extras) {
  json j = summary_base(experiment);
  j["config"] = json::parse(format_synth_config(cfg));
  add_extras(j, extras);
  return j.dump(2) + "\n";
}

std::string summary_json(const std::string& experiment,
                         const std::vector<std::pair<std::string, double>>& extras) {
  json j = summary_base(experiment);
  add_extras(j, extras);
  return j.dump(2) + "\n";
}

std::string git_describe() {
  FILE* pipe = popen("git describe --always --dirty 2>/dev/null", "r");
  if (!pipe) return "unknown";
  char buf[256] = {0};
  const bool got = std::fgets(buf, sizeof(buf), pipe) != nullptr;
  pclose(pipe);
  if (!got) return "unknown";
  std::string s(buf);
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s.empty() ? "unknown" : s;
}

std::string hardware_note() {
  utsname u{};
  std::string base = "unknown";
  if (uname(&u) == 0) base = std::string(u.sysname) + " " + u.machine;
  return base + ", " + std::to_string(std::thread::hardware_concurrency()) +
         " hardware threads";
}

std::string timestamp_tag() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%d_%H%M%S", &tm);
  return buf;
}

}  // namespace eft
