// ddmcorr command-line front end: run, sweep, validate, coupling.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ddmcorr/config.hpp"
#include "ddmcorr/error.hpp"
#include "ddmcorr/model.hpp"
#include "ddmcorr/runner.hpp"
#include "ddmcorr/validation.hpp"

using namespace ddmcorr;

namespace {

constexpr double kElementaryCharge = 1.602176634e-19;  // C
constexpr double kHbar = 1.054571817e-34;              // J s

bool load_config(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read config file '" << path << "'\n";
    return false;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    cfg = parse_config(ss.str());
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << path << ": " << e.what() << '\n';
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlation dynamics of two double-dot qubits coupled through a lossy resonator"};
  app.set_version_flag("--version", std::string(version_string()));
  app.require_subcommand(1);

  std::string config_path;
  std::string output_override;

  auto* run = app.add_subcommand("run", "Simulate one configuration and write the sample table");
  run->add_option("config", config_path, "JSON configuration file")->required();
  run->add_option("-o,--output", output_override, "Override output_path");

  std::string sweep_key;
  std::vector<double> sweep_values;
  auto* sweep = app.add_subcommand("sweep", "Repeat a run over values of one parameter");
  sweep->add_option("config", config_path, "JSON configuration file")->required();
  sweep->add_option("-k,--key", sweep_key, "Parameter to vary")->required();
  sweep->add_option("-v,--values", sweep_values, "Comma-separated values")->required()->delimiter(',');
  sweep->add_option("-o,--output", output_override, "Override output_path (base name for items)");

  ValidationOptions vopts;
  std::string json_path;
  auto* validate = app.add_subcommand("validate", "Run the built-in acceptance checks");
  validate->add_option("--dt", vopts.dt, "Integrator step for dynamics checks [ns]")->check(CLI::PositiveNumber);
  validate->add_option("--seed", vopts.seed, "Seed for random test states");
  validate->add_option("--only", vopts.only, "Run only these check ids")->delimiter(',');
  validate->add_option("--json", json_path, "Write the report as JSON");
  validate->add_option("--scratch", vopts.scratch_dir, "Directory for temporary output files");

  double cc = 0, ctot = 0, omega0 = 0, length = 0, c0 = 0, charge = kElementaryCharge;
  auto* coupling = app.add_subcommand("coupling", "Dot-resonator coupling g from circuit parameters (SI units)");
  coupling->add_option("--cc", cc, "Dot-resonator coupling capacitance [F]")->required();
  coupling->add_option("--ctot", ctot, "Total dot capacitance [F]")->required();
  coupling->add_option("--omega0", omega0, "Resonator angular frequency [rad/s]")->required();
  coupling->add_option("--length", length, "Resonator length [m]")->required();
  coupling->add_option("--c0", c0, "Capacitance per unit length [F/m]")->required();
  coupling->add_option("--charge", charge, "Charge [C]")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  if (*run || *sweep) {
    RunConfig cfg;
    if (!load_config(config_path, cfg)) return kExitConfigError;
    if (!output_override.empty()) cfg.output_path = output_override;
    if (*run) return run_scenario(cfg, std::cerr);
    return run_sweep(cfg, sweep_key, sweep_values, std::cerr);
  }

  if (*validate) {
    vopts.progress = &std::cerr;
    ValidationReport report;
    try {
      report = run_validation(vopts);
    } catch (const InvalidArgument& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitConfigError;
    }
    print_report_table(std::cout, report);
    std::cout << report.to_json().dump() << '\n';
    if (!json_path.empty()) {
      std::ofstream out(json_path, std::ios::binary | std::ios::trunc);
      if (!out) {
        std::cerr << "error: cannot write '" << json_path << "'\n";
        return kExitConfigError;
      }
      out << report.to_json().dump(2) << '\n';
    }
    return report.all_passed() ? kExitOk : kExitNumericalAbort;
  }

  if (*coupling) {
    try {
      // hbar g = (e C_c / 2 C_tot) sqrt(hbar omega0 / (L C0))
      const double g = coupling_coefficient(charge, cc, ctot, omega0, length, c0) / std::sqrt(kHbar);
      std::cout << "g = " << g << " rad/s\n"
                << "g/2pi = " << g / (2.0 * std::numbers::pi) / 1e6 << " MHz\n"
                << "g = " << g * 1e-9 << " rad/ns\n";
    } catch (const InvalidArgument& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitConfigError;
    }
    return kExitOk;
  }
  return kExitOk;
}
