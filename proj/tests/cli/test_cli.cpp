#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "eft/io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string output;
};

// Runs the installed binary with combined stdout/stderr capture. The tests
// only ever look at exit codes, printed lines and the files left behind.
RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(EFT_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  while (std::fgets(buf, sizeof(buf), pipe)) r.output += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string work_dir() {
  static const std::string dir = [] {
    const std::string d = "/tmp/eft_cli_work";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string at(const std::string& name) { return work_dir() + "/" + name; }

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("usage errors exit 2 and help exits 0") {
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("--bogus").code == 2);
  CHECK(run_cli("transform").code == 2);          // missing required flags
  CHECK(run_cli("transform --bogus x").code == 2);
  const RunResult help = run_cli("--help");
  CHECK(help.code == 0);
  CHECK(help.output.find("selftest") != std::string::npos);
  CHECK(help.output.find("transform") != std::string::npos);
}

TEST_CASE("generate writes deterministic files") {
  const std::string base = "generate --n 6 --t 5 --seed 3 --noise 0.1 --perturb 0.1";
  const RunResult a = run_cli(base + " --graph " + at("g1.json") + " --signal " + at("s1.csv") +
                              " --clean " + at("c1.csv"));
  CHECK(a.code == 0);
  CHECK(a.output.find("generated n=6 t=5") != std::string::npos);
  const RunResult b = run_cli(base + " --graph " + at("g2.json") + " --signal " + at("s2.csv") +
                              " --clean " + at("c2.csv"));
  CHECK(b.code == 0);
  CHECK(eft::read_text_file(at("g1.json")) == eft::read_text_file(at("g2.json")));
  CHECK(eft::read_text_file(at("s1.csv")) == eft::read_text_file(at("s2.csv")));
  CHECK(eft::read_text_file(at("c1.csv")) == eft::read_text_file(at("c2.csv")));

  const RunResult c = run_cli("generate --n 6 --t 5 --seed 31 --noise 0.1 --perturb 0.1 --signal " +
                              at("s3.csv"));
  CHECK(c.code == 0);
  CHECK(eft::read_text_file(at("s1.csv")) != eft::read_text_file(at("s3.csv")));
}

TEST_CASE("transform then inverse reproduces the signal") {
  const RunResult tr = run_cli("transform --graph " + at("g1.json") + " --signal " +
                               at("s1.csv") + " --out " + at("coeffs.csv"));
  CHECK(tr.code == 0);
  CHECK(tr.output.find("parseval_residual") != std::string::npos);
  CHECK(eft::read_text_file(at("coeffs.csv"))
            .rfind("# eft N=6 T=5 kind=comb norm=unitary\n", 0) == 0);

  const RunResult inv = run_cli("inverse --graph " + at("g1.json") + " --coeffs " +
                                at("coeffs.csv") + " --out " + at("back.csv"));
  CHECK(inv.code == 0);
  const Eigen::MatrixXd x = eft::read_signal_csv(at("s1.csv"));
  const Eigen::MatrixXd back = eft::read_signal_csv(at("back.csv"));
  REQUIRE(back.rows() == x.rows());
  REQUIRE(back.cols() == x.cols());
  CHECK((back - x).norm() / x.norm() <= 1e-9);
}

TEST_CASE("laplacian dumps the dense joint matrix") {
  const RunResult r =
      run_cli("laplacian --graph " + at("g1.json") + " --out " + at("lap.csv"));
  CHECK(r.code == 0);
  CHECK(r.output.find("size=30") != std::string::npos);
  const Eigen::MatrixXd lap = eft::read_signal_csv(at("lap.csv"));
  REQUIRE(lap.rows() == 30);
  REQUIRE(lap.cols() == 30);
  CHECK((lap - lap.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(lap.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("filter with no spec or an allpass spec is the identity") {
  const RunResult plain = run_cli("filter --graph " + at("g1.json") + " --signal " +
                                  at("s1.csv") + " --out " + at("f1.csv"));
  CHECK(plain.code == 0);
  const Eigen::MatrixXd x = eft::read_signal_csv(at("s1.csv"));
  CHECK((eft::read_signal_csv(at("f1.csv")) - x).norm() / x.norm() <= 1e-9);

  eft::write_text_file(R"({
    "vertex": {"type": "preset", "preset": "allpass"},
    "temporal": {"type": "preset", "preset": "allpass"}
  })",
                       at("allpass.json"));
  const RunResult ap = run_cli("filter --graph " + at("g1.json") + " --signal " + at("s1.csv") +
                               " --filter " + at("allpass.json") + " --out " + at("f2.csv"));
  CHECK(ap.code == 0);
  CHECK(ap.output.find("s2_before") != std::string::npos);
  CHECK((eft::read_signal_csv(at("f2.csv")) - x).norm() / x.norm() <= 1e-8);

  const RunResult again = run_cli("filter --graph " + at("g1.json") + " --signal " + at("s1.csv") +
                                  " --filter " + at("allpass.json") + " --out " + at("f3.csv"));
  CHECK(again.code == 0);
  CHECK(eft::read_text_file(at("f2.csv")) == eft::read_text_file(at("f3.csv")));
}

TEST_CASE("denoise writes the report pair deterministically") {
  const std::string base =
      "denoise --n 8 --t 6 --seed 3 --methods eft,dft --keep 0.2,0.5 --num-seeds 2";
  const RunResult a = run_cli(base + " --out " + at("dn.csv"));
  CHECK(a.code == 0);
  CHECK(a.output.find("median_error") != std::string::npos);
  const std::string csv = eft::read_text_file(at("dn.csv"));
  CHECK(csv.rfind("method,keep_fraction,seed,error\n", 0) == 0);
  CHECK(count_lines(csv) == 9);  // header + methods x keeps x seeds
  const std::string summary = eft::read_text_file(at("dn.json"));
  CHECK(summary.find("\"experiment\": \"denoise\"") != std::string::npos);

  const RunResult b = run_cli(base + " --out " + at("dn2.csv"));
  CHECK(b.code == 0);
  CHECK(csv == eft::read_text_file(at("dn2.csv")));
}

TEST_CASE("compact covers mesh mode and file mode") {
  const RunResult mesh = run_cli(
      "compact --frames 4 --resolution 4 --methods eft,gft --percentiles 50,95 "
      "--num-seeds 2 --out " +
      at("cp.csv"));
  CHECK(mesh.code == 0);
  CHECK(mesh.output.find("percentile=50") != std::string::npos);
  const std::string csv = eft::read_text_file(at("cp.csv"));
  CHECK(csv.rfind("method,percentile_removed,seed,error\n", 0) == 0);
  CHECK(count_lines(csv) == 9);

  const RunResult file = run_cli("compact --graph " + at("g1.json") + " --signal " +
                                 at("s1.csv") + " --methods eft --percentiles 0,100 --out " +
                                 at("cp2.csv"));
  CHECK(file.code == 0);
  CHECK(count_lines(eft::read_text_file(at("cp2.csv"))) == 3);
}

TEST_CASE("bound writes one row per seed and scale") {
  const RunResult r = run_cli(
      "bound --n 6 --t 5 --scales 0,0.5 --num-seeds 2 --out " + at("bd.csv"));
  CHECK(r.code == 0);
  CHECK(r.output.find("median_residual") != std::string::npos);
  const std::string csv = eft::read_text_file(at("bd.csv"));
  CHECK(csv.rfind("perturb_scale,seed,", 0) == 0);
  CHECK(count_lines(csv) == 5);

  CHECK(run_cli("bound --n 6 --t 5 --scales 0.5,1").code == 2);
}

TEST_CASE("bench reports cells and slopes") {
  const RunResult r =
      run_cli("bench --n-grid 4 --t-grid 4,8 --repeats 1 --out " + at("bench.csv"));
  CHECK(r.code == 0);
  CHECK(r.output.find("log_slope") != std::string::npos);
  const std::string csv = eft::read_text_file(at("bench.csv"));
  CHECK(csv.rfind("op,n,t,seconds,skipped\n", 0) == 0);
  CHECK(count_lines(csv) == 5);
}

TEST_CASE("selftest passes clean and fails with the injected fault") {
  const RunResult clean = run_cli("selftest --seed 0 --json");
  CHECK(clean.code == 0);
  CHECK(clean.output.find("\"pass\": true") != std::string::npos);

  const RunResult faulty = run_cli("selftest --seed 0 --inject-fault --json");
  CHECK(faulty.code == 1);
  CHECK(faulty.output.find("\"transform_round_trip\": false") != std::string::npos);

  const RunResult text = run_cli("selftest --seed 1");
  CHECK(text.code == 0);
  CHECK(text.output.find("checks passed") != std::string::npos);
}

TEST_CASE("failure modes map to distinct exit codes") {
  eft::write_text_file("{\"num_nodes\": 2,\n  \"snapshots\": [[[0, 1,]]]}", at("bad.json"));
  const RunResult parse = run_cli("laplacian --graph " + at("bad.json"));
  CHECK(parse.code == 2);
  CHECK(parse.output.find("error at line") != std::string::npos);

  eft::write_text_file(R"({"num_nodes": 2, "snapshots": [[[0, 1, 0.5], [1, 0, 0.7]]]})",
                       at("asym.json"));
  CHECK(run_cli("laplacian --graph " + at("asym.json")).code == 2);

  CHECK(run_cli("laplacian --graph " + at("g1.json") + " --kind weird").code == 2);
  CHECK(run_cli("transform --graph " + at("missing.json") + " --signal " + at("s1.csv")).code ==
        2);

  eft::write_text_file("1,2,3\n4,5,6\n", at("short.csv"));  // 2 nodes, graph has 6
  const RunResult shape =
      run_cli("transform --graph " + at("g1.json") + " --signal " + at("short.csv"));
  CHECK(shape.code == 3);
  CHECK(shape.output.find("shape error") != std::string::npos);

  eft::write_text_file(R"({"num_nodes": 5000, "snapshots": [[[0, 1, 1.0]]]})", at("big.json"));
  const RunResult guard = run_cli("laplacian --graph " + at("big.json"));
  CHECK(guard.code == 4);
  CHECK(guard.output.find("numerical guard") != std::string::npos);
  CHECK(run_cli("laplacian --graph " + at("big.json") + " --force-dense --kind comb").code == 0);
}
