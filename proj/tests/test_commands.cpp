#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "trapdecay/commands.hpp"
#include "trapdecay/config.hpp"
#include "trapdecay/report.hpp"

using namespace trapdecay;

namespace {

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Csv parse_csv(std::istream& in) {
  Csv csv;
  std::string line;
  std::getline(in, line);
  std::stringstream hs(line);
  for (std::string cell; std::getline(hs, cell, ',');) csv.header.push_back(cell);
  while (std::getline(in, line) && !line.empty()) {
    std::stringstream ls(line);
    std::vector<double> row;
    for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::stod(cell));
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

Csv parse_csv(const std::string& text) {
  std::istringstream in(text);
  return parse_csv(in);
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Run {
  int status;
  std::string out;
  std::string err;
};

template <typename Cmd>
Run run(Cmd cmd, const RunConfig& config) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = cmd(config, out, err);
  return {status, out.str(), err.str()};
}

const std::filesystem::path kTmp = TRAPDECAY_TMP;

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333333");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(level_column(-2) == "pop_m2");
  CHECK(level_column(0) == "pop_0");
  CHECK(level_column(1) == "pop_p1");
}

TEST_CASE("simulate with defaults") {
  const auto r = run(cmd_simulate, default_config());
  REQUIRE(r.status == kExitOk);
  const Csv csv = parse_csv(r.out);
  CHECK(csv.header == std::vector<std::string>{"t", "total", "pop_m1", "pop_0", "pop_p1"});
  REQUIRE(csv.rows.size() == 1000);
  CHECK(csv.rows[0] == std::vector<double>{0, 1, 0, 1, 0});
  CHECK(csv.rows.back()[0] == 50);
  for (const auto& row : csv.rows) CHECK(std::abs(row[2] - row[4]) < 1e-10);
}

TEST_CASE("simulate without side coupling reproduces exp(-t)") {
  const auto r = run(cmd_simulate, parse_config("gamma = 0, 1, 0"));
  REQUIRE(r.status == kExitOk);
  for (const auto& row : parse_csv(r.out).rows) CHECK(std::abs(row[1] - std::exp(-row[0])) < 1e-10);
}

TEST_CASE("simulate writes json records") {
  const auto r = run(cmd_simulate, parse_config("samples = 3\nt_max = 2\nformat = json"));
  REQUIRE(r.status == kExitOk);
  CHECK(r.out.rfind("[\n  {\"t\": 0, \"total\": 1, \"pop_m1\": 0, \"pop_0\": 1, \"pop_p1\": 0},\n", 0) == 0);
  CHECK(r.out.find("{\"t\": 2, \"total\": ") != std::string::npos);
  CHECK(r.out.ends_with("}\n]\n"));
}

TEST_CASE("simulate output is deterministic") {
  const RunConfig c = parse_config("samples = 200\nt_max = 30\nhalf_width = 2");
  CHECK(run(cmd_simulate, c).out == run(cmd_simulate, c).out);
}

TEST_CASE("simulate reports I/O failures") {
  RunConfig c = default_config();
  c.output = (kTmp / "no_such_dir" / "x.csv").string();
  const auto r = run(cmd_simulate, c);
  CHECK(r.status == kExitIoError);
  CHECK(r.err.find("Io") != std::string::npos);
}

TEST_CASE("omega sweep tables") {
  const RunConfig c = parse_config(
      "t_max = 300\nsamples = 301\nsweep_param = omega_bar\nsweep_values = 0, 0.1, 0.3, 0.5, 0.7, 1");
  const auto r = run(cmd_sweep, c);
  REQUIRE(r.status == kExitOk);
  std::istringstream in(r.out);
  const Csv long_table = parse_csv(in);
  const Csv summary = parse_csv(in);
  CHECK(long_table.header == std::vector<std::string>{"sweep_value", "t", "total"});
  CHECK(long_table.rows.size() == 6 * 301);
  CHECK(summary.header == std::vector<std::string>{"sweep_value", "total_at_probe"});
  REQUIRE(summary.rows.size() == 6);
  for (std::size_t k = 1; k < 6; ++k) CHECK(summary.rows[k][1] < summary.rows[k - 1][1]);
}

TEST_CASE("side-rate sweep summary increases with the rate") {
  const RunConfig c = parse_config(
      "t_max = 20\nsamples = 101\nsweep_param = gamma_side\nsweep_values = 0.01, 0.1, 0.5, 1, 3, 5");
  const auto r = run(cmd_sweep, c);
  REQUIRE(r.status == kExitOk);
  std::istringstream in(r.out);
  parse_csv(in);
  const Csv summary = parse_csv(in);
  for (std::size_t k = 1; k < 6; ++k) CHECK(summary.rows[k][1] > summary.rows[k - 1][1]);
}

TEST_CASE("single-value sweep matches simulate on the shared grid") {
  const RunConfig sim = parse_config("t_max = 40\nsamples = 81\nomega_bar = 0.3");
  const RunConfig sw = parse_config(
      "t_max = 40\nsamples = 81\nomega_bar = 0.9\nsweep_param = omega_bar\nsweep_values = 0.3");
  const Csv a = parse_csv(run(cmd_simulate, sim).out);
  const Csv b = parse_csv(run(cmd_sweep, sw).out);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    CHECK(a.rows[k][0] == b.rows[k][1]);
    CHECK(a.rows[k][1] == b.rows[k][2]);
  }
}

TEST_CASE("sweep to files splits long and summary tables") {
  RunConfig c = parse_config("t_max = 5\nsamples = 6\nsweep_param = gamma_side\nsweep_values = 0.5, 1");
  c.output = (kTmp / "sweep_out.csv").string();
  REQUIRE(run(cmd_sweep, c).status == kExitOk);
  CHECK(summary_path(c.output) == (kTmp / "sweep_out.summary.csv").string());
  CHECK(parse_csv(read_file(kTmp / "sweep_out.csv")).rows.size() == 12);
  CHECK(parse_csv(read_file(kTmp / "sweep_out.summary.csv")).rows.size() == 2);
  CHECK(summary_path("plain") == "plain.summary");
}

TEST_CASE("sweep without a sweep section is a config error") {
  CHECK(run(cmd_sweep, default_config()).status == kExitConfigError);
}

TEST_CASE("phases with defaults") {
  const auto r = run(cmd_phases, default_config());
  REQUIRE(r.status == kExitOk);
  const Csv csv = parse_csv(r.out);
  CHECK(csv.header == std::vector<std::string>{"burst_end", "quiescent_rate", "threshold"});
  REQUIRE(csv.rows.size() == 1);
  CHECK(std::isfinite(csv.rows[0][0]));
  CHECK(csv.rows[0][1] < 0.1);
  CHECK(csv.rows[0][2] == 0.1);
}

TEST_CASE("phases on a pure exponential exits with the no-quiescent status") {
  const auto r = run(cmd_phases, parse_config("gamma = 0, 1, 0"));
  CHECK(r.status == kExitNoQuiescentPhase);
  CHECK(r.err.find("NoQuiescentPhase") != std::string::npos);
}

TEST_CASE("phases for degenerate levels") {
  const auto r = run(cmd_phases, parse_config("omega_bar = 0\nt_max = 1000\nsamples = 20000"));
  REQUIRE(r.status == kExitOk);
  CHECK(parse_csv(r.out).rows[0][1] < 1e-6);
}

TEST_CASE("command-line binary") {
  const std::string cli = TRAPDECAY_CLI;
  const auto cfg = kTmp / "cli_config.txt";
  {
    std::ofstream f(cfg);
    f << "# test config\nt_max = 10\nsamples = 50\n";
  }
  auto sh = [&](const std::string& args) {
    return std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
  };
  const auto out1 = kTmp / "cli_a.csv";
  const auto out2 = kTmp / "cli_b.csv";
  REQUIRE(sh("simulate --config " + cfg.string() + " --output " + out1.string()) == 0);
  REQUIRE(sh("simulate --config " + cfg.string() + " --output " + out2.string()) == 0);
  CHECK(read_file(out1) == read_file(out2));
  CHECK(parse_csv(read_file(out1)).rows.size() == 50);

  // Flags override the file.
  REQUIRE(sh("simulate --config " + cfg.string() + " --samples 7 --t-max 3 --output " +
             out1.string()) == 0);
  const Csv small = parse_csv(read_file(out1));
  CHECK(small.rows.size() == 7);
  CHECK(small.rows.back()[0] == 3);

  CHECK(sh("sweep --sweep-param omega_bar --sweep-values 0,0.1 --probe-time 5 --t-max 5 --samples 6 --output " +
           (kTmp / "cli_sweep.csv").string()) == 0);
  CHECK(parse_csv(read_file(kTmp / "cli_sweep.summary.csv")).rows.size() == 2);

  CHECK(sh("phases --threshold 0.1") == 0);
  CHECK(WEXITSTATUS(sh("phases --config " + (kTmp / "missing.txt").string())) == kExitIoError);
  const auto pure = kTmp / "pure.txt";
  {
    std::ofstream f(pure);
    f << "gamma = 0, 1, 0\n";
  }
  CHECK(WEXITSTATUS(sh("phases --config " + pure.string())) == kExitNoQuiescentPhase);
  CHECK(WEXITSTATUS(sh("simulate --format yaml")) == kExitConfigError);
  CHECK(sh("bogus") != 0);
}
