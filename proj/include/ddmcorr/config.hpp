#pragma once

// Run configuration: a flat JSON object whose keys map onto ScenarioSpec,
// PhysicalParams, TimeGrid and output options. Unknown keys are rejected.
//
//   family                    "bell_psi" | "bell_phi" | "separable"
//   amplitude_sq              alpha^2 or beta^2 in [0, 1]
//   resonator_fock            initial photon number (default 1; 0 for bell_phi)
//   allow_vacuum              permit resonator_fock = 0 for bell_psi
//   g, kappa, gamma, gamma_phi   rad/ns
//   n_max                     Fock cutoff
//   t_start, t_end, dt        ns
//   sample_every              integrator steps between output rows
//   output_path               CSV / JSON-lines destination
//   output_format             "csv" | "jsonl"
//   measure_side              "A" | "B"
//   emit_marginal_coherences  add coh_A, coh_B columns

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ddmcorr/measures.hpp"
#include "ddmcorr/scenarios.hpp"

namespace ddmcorr {

enum class OutputFormat { Csv, JsonLines };

struct RunConfig {
  ScenarioSpec scenario;
  std::string output_path = "ddmcorr_run.csv";
  OutputFormat output_format = OutputFormat::Csv;
  MeasuredQubit measure_side = MeasuredQubit::B;
  bool emit_marginal_coherences = false;
};

/// Every key parse_config accepts, in documentation order.
const std::vector<std::string>& config_keys();

/// Keys run_sweep may vary.
const std::vector<std::string>& sweepable_keys();

/// Parses and validates a configuration document. Absent keys take their
/// defaults. Throws InvalidArgument whose message names the offending key.
RunConfig parse_config(std::string_view text);
RunConfig config_from_json(const nlohmann::json& doc);

/// Full configuration as a JSON object; config_from_json(config_to_json(c))
/// reproduces c.
nlohmann::json config_to_json(const RunConfig& cfg);

}  // namespace ddmcorr
