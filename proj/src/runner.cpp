#include "ddmcorr/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ddmcorr/error.hpp"
#include "ddmcorr/scenarios.hpp"

#ifndef DDMCORR_VERSION
#define DDMCORR_VERSION "0.0.0"
#endif

namespace ddmcorr {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> row_values(const CorrelationSample& s, bool marginal) {
  std::vector<double> v = {s.t,           s.coherence_D, s.discord_Q, s.classical_C,  s.mutual_I,  s.concurrence,
                           s.eof,         s.purity,      s.trace_err, s.argmax_theta, s.argmax_phi};
  if (marginal) {
    v.push_back(s.coh_A);
    v.push_back(s.coh_B);
  }
  return v;
}

bool is_count_key(const std::string& key) {
  return key == "resonator_fock" || key == "n_max" || key == "sample_every";
}

}  // namespace

const char* version_string() { return DDMCORR_VERSION; }

std::string format_shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Evolution<CorrelationSample> simulate(const RunConfig& cfg) {
  const ScenarioSpec& sc = cfg.scenario;
  const LindbladGenerator gen = build_generator(sc.params);
  const CMatrix rho0 = initial_state(sc);
  const MeasuredQubit side = cfg.measure_side;
  return evolve_and_sample(gen, rho0, sc.grid,
                           [&](double t, const CMatrix& rho) { return sample_all(rho, gen.layout, t, side); });
}

std::vector<std::string> output_columns(bool marginal_coherences) {
  std::vector<std::string> cols = {"t_ns", "coherence_D", "discord_Q", "classical_C", "mutual_I",   "concurrence",
                                   "eof",  "purity",      "trace_err", "argmax_theta", "argmax_phi"};
  if (marginal_coherences) {
    cols.emplace_back("coh_A");
    cols.emplace_back("coh_B");
  }
  return cols;
}

void write_csv(std::ostream& out, const std::vector<CorrelationSample>& samples, bool marginal_coherences) {
  const auto cols = output_columns(marginal_coherences);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& s : samples) {
    const auto vals = row_values(s, marginal_coherences);
    for (std::size_t i = 0; i < vals.size(); ++i) out << (i ? "," : "") << fmt17(vals[i]);
    out << '\n';
  }
}

void write_jsonl(std::ostream& out, const std::vector<CorrelationSample>& samples, bool marginal_coherences) {
  const auto cols = output_columns(marginal_coherences);
  out << json{{"columns", cols}, {"version", version_string()}}.dump() << '\n';
  for (const auto& s : samples) {
    const auto vals = row_values(s, marginal_coherences);
    json row = json::object();
    for (std::size_t i = 0; i < cols.size(); ++i) row[cols[i]] = vals[i];
    out << row.dump() << '\n';
  }
}

std::string diagnostics_path(const std::string& output_path) {
  const fs::path p(output_path);
  return (p.parent_path() / (p.stem().string() + ".diagnostics.json")).string();
}

json diagnostics_json(const RunConfig& cfg, const EvolutionDiagnostics& diag,
                      const std::vector<CorrelationSample>& samples) {
  double min_raw_discord = 0.0;
  std::size_t nonconverged = 0;
  for (const auto& s : samples) {
    min_raw_discord = std::min(min_raw_discord, s.discord_raw);
    if (!s.optimizer_converged) ++nonconverged;
  }
  json warnings = json::array();
  if (diag.cutoff_warning) {
    warnings.push_back("population of the highest Fock level reached " + fmt17(diag.max_cutoff_population) +
                       "; increase n_max");
  }
  if (nonconverged > 0) {
    warnings.push_back("discord optimizer hit its round limit at " + std::to_string(nonconverged) + " samples");
  }
  return json{{"version", version_string()},
              {"config", config_to_json(cfg)},
              {"diagnostics",
               {{"max_trace_error", diag.max_trace_error},
                {"min_eigenvalue", diag.min_eigenvalue},
                {"max_cutoff_population", diag.max_cutoff_population},
                {"max_hermiticity_error", diag.max_hermiticity_error},
                {"steps", diag.steps},
                {"samples", diag.samples},
                {"cutoff_warning", diag.cutoff_warning},
                {"min_raw_discord", min_raw_discord},
                {"optimizer_nonconverged_samples", nonconverged}}},
              {"warnings", warnings}};
}

int run_scenario(const RunConfig& cfg, std::ostream& log) {
  Evolution<CorrelationSample> ev;
  try {
    ev = simulate(cfg);
  } catch (const InvalidArgument& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const NumericalError& e) {
    log << "numerical abort: " << e.what() << '\n';
    return kExitNumericalAbort;
  }

  {
    std::ofstream out(cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!out) {
      log << "error: cannot open output file '" << cfg.output_path << "'\n";
      return kExitConfigError;
    }
    if (cfg.output_format == OutputFormat::Csv) write_csv(out, ev.samples, cfg.emit_marginal_coherences);
    else write_jsonl(out, ev.samples, cfg.emit_marginal_coherences);
    if (!out) {
      log << "error: failed writing '" << cfg.output_path << "'\n";
      return kExitConfigError;
    }
  }
  const std::string diag_path = diagnostics_path(cfg.output_path);
  {
    std::ofstream out(diag_path, std::ios::binary | std::ios::trunc);
    if (!out) {
      log << "error: cannot open diagnostics file '" << diag_path << "'\n";
      return kExitConfigError;
    }
    out << diagnostics_json(cfg, ev.diagnostics, ev.samples).dump(2) << '\n';
  }
  if (ev.diagnostics.cutoff_warning) {
    log << "warning: Fock cutoff population reached " << ev.diagnostics.max_cutoff_population << '\n';
  }
  log << "wrote " << ev.samples.size() << " samples to " << cfg.output_path << '\n';
  return kExitOk;
}

std::string sweep_item_path(const std::string& output_path, const std::string& key, double value) {
  const fs::path p(output_path);
  return (p.parent_path() / (p.stem().string() + "_" + key + "_" + format_shortest(value) + p.extension().string()))
      .string();
}

std::string sweep_manifest_path(const std::string& output_path, const std::string& key) {
  const fs::path p(output_path);
  return (p.parent_path() / (p.stem().string() + "_sweep_" + key + ".json")).string();
}

int run_sweep(const RunConfig& cfg, const std::string& key, const std::vector<double>& values, std::ostream& log) {
  const auto& keys = sweepable_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
    log << "error: '" << key << "' is not a sweepable key\n";
    return kExitConfigError;
  }
  if (values.empty()) {
    log << "error: sweep needs at least one value\n";
    return kExitConfigError;
  }

  const json base = config_to_json(cfg);
  json items = json::array();
  int worst = kExitOk;
  for (double v : values) {
    json item = {{"key", key}, {"value", v}};
    int code = kExitOk;
    try {
      json doc = base;
      if (is_count_key(key)) {
        if (!(v >= 0.0) || std::floor(v) != v) throw InvalidArgument("config key '" + key + "': expected a non-negative integer");
        doc[key] = static_cast<std::size_t>(v);
      } else {
        doc[key] = v;
      }
      doc["output_path"] = sweep_item_path(cfg.output_path, key, v);
      const RunConfig item_cfg = config_from_json(doc);
      item["output"] = item_cfg.output_path;
      item["diagnostics"] = diagnostics_path(item_cfg.output_path);
      std::ostringstream item_log;
      code = run_scenario(item_cfg, item_log);
      log << item_log.str();
      if (code != kExitOk) item["error"] = item_log.str();
    } catch (const InvalidArgument& e) {
      code = kExitConfigError;
      item["error"] = e.what();
      log << "error: " << e.what() << '\n';
    }
    item["exit_code"] = code;
    item["status"] = code == kExitOk ? "ok" : "failed";
    items.push_back(item);
    worst = std::max(worst, code);
  }

  const std::string manifest = sweep_manifest_path(cfg.output_path, key);
  std::ofstream out(manifest, std::ios::binary | std::ios::trunc);
  if (!out) {
    log << "error: cannot write sweep manifest '" << manifest << "'\n";
    return kExitConfigError;
  }
  out << json{{"version", version_string()}, {"key", key}, {"base_config", base}, {"items", items}}.dump(2) << '\n';
  log << "wrote sweep manifest " << manifest << '\n';
  return worst;
}

}  // namespace ddmcorr
