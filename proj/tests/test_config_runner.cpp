#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "ddmcorr/config.hpp"
#include "ddmcorr/error.hpp"
#include "ddmcorr/runner.hpp"

using namespace ddmcorr;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(DDMCORR_TEST_SCRATCH) / "config_runner";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const InvalidArgument& e) {
    return e.what();
  }
  return "";
}

// A short, cheap run.
RunConfig tiny(const std::string& name) {
  RunConfig cfg = parse_config(R"({"t_end": 1.0, "dt": 0.01, "sample_every": 25})");
  cfg.output_path = scratch(name).string();
  return cfg;
}

}  // namespace

TEST_CASE("empty config gives defaults") {
  const RunConfig cfg = parse_config("{}");
  CHECK(cfg.scenario.family == Family::BellPsi);
  CHECK(cfg.scenario.resonator_fock == 1);
  CHECK(cfg.scenario.amplitude_sq == 0.5);
  CHECK(cfg.scenario.grid.sample_count() == 1001);
  CHECK(cfg.output_format == OutputFormat::Csv);
  CHECK(cfg.measure_side == MeasuredQubit::B);
  CHECK(parse_config(R"({"family": "bell_phi"})").scenario.resonator_fock == 0);
}

TEST_CASE("config errors name the key") {
  CHECK(error_of(R"({"kapa": 1})").find("'kapa'") != std::string::npos);
  CHECK(error_of(R"({"g": "fast"})").find("'g'") != std::string::npos);
  CHECK(error_of(R"({"g": -1})").find("'g'") != std::string::npos);
  CHECK(error_of(R"({"n_max": 2.5})").find("'n_max'") != std::string::npos);
  CHECK(error_of(R"({"family": "ghz"})").find("'family'") != std::string::npos);
  CHECK(error_of(R"({"t_end": {"v": 1}})").find("nested") != std::string::npos);
  CHECK(error_of(R"({"resonator_fock": 0})").find("'resonator_fock'") != std::string::npos);
  CHECK(error_of(R"({"family": "bell_phi", "resonator_fock": 1})").find("'resonator_fock'") != std::string::npos);
  CHECK(error_of(R"({"resonator_fock": 7})").find("'resonator_fock'") != std::string::npos);
  CHECK(error_of(R"({"amplitude_sq": 1.5})").find("'amplitude_sq'") != std::string::npos);
  CHECK(error_of(R"({"t_end": 0})").find("'t_end'") != std::string::npos);
  CHECK(error_of(R"({"output_format": "xml"})").find("'output_format'") != std::string::npos);
  CHECK_FALSE(error_of("[1, 2]").empty());
  CHECK_FALSE(error_of("{not json").empty());
}

TEST_CASE("config round-trips through JSON") {
  const RunConfig a = parse_config(
      R"({"family": "separable", "resonator_fock": 2, "kappa": 0.01, "measure_side": "A",
          "output_format": "jsonl", "emit_marginal_coherences": true, "t_end": 50})");
  const RunConfig b = config_from_json(config_to_json(a));
  CHECK(config_to_json(a) == config_to_json(b));
  CHECK(b.scenario.family == Family::Separable);
  CHECK(b.measure_side == MeasuredQubit::A);
  CHECK(b.output_format == OutputFormat::JsonLines);
  CHECK(config_to_json(a).size() == config_keys().size());
}

TEST_CASE("CSV output and diagnostics sidecar") {
  const RunConfig cfg = tiny("csv_run.csv");
  std::ostringstream log;
  REQUIRE(run_scenario(cfg, log) == kExitOk);
  const std::string csv = slurp(cfg.output_path);
  std::istringstream lines(csv);
  std::string header, row0;
  std::getline(lines, header);
  std::getline(lines, row0);
  CHECK(header ==
        "t_ns,coherence_D,discord_Q,classical_C,mutual_I,concurrence,eof,purity,trace_err,argmax_theta,argmax_phi");
  CHECK(row0.rfind("0,1,1,1,2,1,1,1,0,", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  std::size_t rows = 0;
  for (char c : csv) rows += c == '\n';
  CHECK(rows == 1 + 5);

  const auto diag = nlohmann::json::parse(slurp(diagnostics_path(cfg.output_path)));
  CHECK(diag["diagnostics"]["samples"] == 5);
  CHECK(diag["diagnostics"]["max_trace_error"].get<double>() < 1e-12);
  CHECK(diag["config"]["t_end"] == 1.0);
  CHECK(diag["version"] == version_string());
}

TEST_CASE("JSON-lines output with marginal coherences") {
  RunConfig cfg = tiny("jl_run.jsonl");
  cfg.output_format = OutputFormat::JsonLines;
  cfg.emit_marginal_coherences = true;
  std::ostringstream log;
  REQUIRE(run_scenario(cfg, log) == kExitOk);
  std::istringstream lines(slurp(cfg.output_path));
  std::string line;
  std::getline(lines, line);
  const auto head = nlohmann::json::parse(line);
  CHECK(head["columns"].size() == 13);
  std::getline(lines, line);
  const auto row = nlohmann::json::parse(line);
  CHECK(row["mutual_I"] == doctest::Approx(2.0));
  CHECK(row.contains("coh_B"));
}

TEST_CASE("identical runs write identical bytes") {
  RunConfig a = tiny("det_a.csv");
  RunConfig b = tiny("det_b.csv");
  std::ostringstream log;
  REQUIRE(run_scenario(a, log) == kExitOk);
  REQUIRE(run_scenario(b, log) == kExitOk);
  CHECK(slurp(a.output_path) == slurp(b.output_path));
}

TEST_CASE("run exit codes") {
  std::ostringstream log;
  RunConfig bad_path = tiny("unused.csv");
  bad_path.output_path = (scratch("no_such_dir") / "x" / "out.csv").string();
  CHECK(run_scenario(bad_path, log) == kExitConfigError);

  RunConfig invalid = tiny("invalid.csv");
  invalid.scenario.params.n_max = 0;
  CHECK(run_scenario(invalid, log) == kExitConfigError);

  RunConfig blowup = tiny("blowup.csv");
  blowup.scenario.params.g = 1e6;
  blowup.scenario.grid.dt = 0.5;
  blowup.scenario.grid.t_end = 10.0;
  blowup.scenario.grid.sample_every = 1;
  CHECK(run_scenario(blowup, log) == kExitNumericalAbort);
}

TEST_CASE("sweep writes one output per value and a manifest") {
  const RunConfig cfg = tiny("sweep.csv");
  std::ostringstream log;
  CHECK(run_sweep(cfg, "kappa", {0.0, 0.5}, log) == kExitOk);
  CHECK(fs::exists(sweep_item_path(cfg.output_path, "kappa", 0.5)));
  CHECK(sweep_item_path("out/run.csv", "kappa", 0.5) == (fs::path("out") / "run_kappa_0.5.csv").string());
  const auto manifest = nlohmann::json::parse(slurp(sweep_manifest_path(cfg.output_path, "kappa")));
  REQUIRE(manifest["items"].size() == 2);
  CHECK(manifest["items"][1]["status"] == "ok");

  // one bad item does not stop the others
  CHECK(run_sweep(cfg, "g", {0.1, -1.0, 0.2}, log) == kExitConfigError);
  const auto m2 = nlohmann::json::parse(slurp(sweep_manifest_path(cfg.output_path, "g")));
  CHECK(m2["items"][1]["status"] == "failed");
  CHECK(m2["items"][2]["status"] == "ok");

  CHECK(run_sweep(cfg, "n_max", {2.5}, log) == kExitConfigError);
  CHECK(run_sweep(cfg, "family", {1.0}, log) == kExitConfigError);
  CHECK(run_sweep(cfg, "kappa", {}, log) == kExitConfigError);
}

TEST_CASE("shortest number formatting") {
  CHECK(format_shortest(0.1) == "0.1");
  CHECK(format_shortest(2.0) == "2");
  CHECK(format_shortest(1e-3) == "0.001");
}
