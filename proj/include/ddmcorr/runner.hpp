#pragma once

// Batch execution of configured runs and parameter sweeps.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ddmcorr/config.hpp"
#include "ddmcorr/dynamics.hpp"
#include "ddmcorr/measures.hpp"

namespace ddmcorr {

/// CLI / process exit codes.
enum ExitCode : int { kExitOk = 0, kExitConfigError = 1, kExitNumericalAbort = 2 };

const char* version_string();

/// Evolves the configured scenario and evaluates every measure at each sample.
Evolution<CorrelationSample> simulate(const RunConfig& cfg);

/// Column names in output order.
std::vector<std::string> output_columns(bool marginal_coherences);

void write_csv(std::ostream& out, const std::vector<CorrelationSample>& samples, bool marginal_coherences);
void write_jsonl(std::ostream& out, const std::vector<CorrelationSample>& samples, bool marginal_coherences);

/// "<dir>/<stem>.diagnostics.json" for an output path.
std::string diagnostics_path(const std::string& output_path);

nlohmann::json diagnostics_json(const RunConfig& cfg, const EvolutionDiagnostics& diag,
                                const std::vector<CorrelationSample>& samples);

/// Runs one configuration, writing the sample table and its diagnostics
/// sidecar. Messages go to `log`. Returns an ExitCode.
int run_scenario(const RunConfig& cfg, std::ostream& log);

/// Output path for one sweep item: "<dir>/<stem>_<key>_<value><ext>".
std::string sweep_item_path(const std::string& output_path, const std::string& key, double value);
/// "<dir>/<stem>_sweep_<key>.json"
std::string sweep_manifest_path(const std::string& output_path, const std::string& key);

/// Runs `cfg` once per value of `key`, continuing past failed items, then
/// writes the sweep manifest. Returns kExitOk only if every item succeeded.
int run_sweep(const RunConfig& cfg, const std::string& key, const std::vector<double>& values, std::ostream& log);

/// Shortest decimal text that round-trips `v`.
std::string format_shortest(double v);

}  // namespace ddmcorr
