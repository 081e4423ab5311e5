#include "ddmcorr/config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ddmcorr/error.hpp"

namespace ddmcorr {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& why) {
  throw InvalidArgument("config key '" + key + "': " + why);
}

double get_number(const json& v, const std::string& key) {
  if (!v.is_number()) fail(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(key, "must be finite");
  return x;
}

std::size_t get_count(const json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  if (v.is_number_integer()) fail(key, "must be >= 0");
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (std::isfinite(x) && x >= 0.0 && std::floor(x) == x && x < 1e15) return static_cast<std::size_t>(x);
  }
  fail(key, "expected a non-negative integer");
}

bool get_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) fail(key, "expected true or false");
  return v.get<bool>();
}

std::string get_string(const json& v, const std::string& key) {
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "family",  "amplitude_sq", "resonator_fock", "allow_vacuum",  "g",
      "kappa",   "gamma",        "gamma_phi",      "n_max",         "t_start",
      "t_end",   "dt",           "sample_every",   "output_path",   "output_format",
      "measure_side", "emit_marginal_coherences"};
  return keys;
}

const std::vector<std::string>& sweepable_keys() {
  static const std::vector<std::string> keys = {"amplitude_sq", "resonator_fock", "g",      "kappa",
                                                "gamma",        "gamma_phi",      "n_max",  "t_start",
                                                "t_end",        "dt",             "sample_every"};
  return keys;
}

RunConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw InvalidArgument("config must be a flat JSON object");
  const auto& known = config_keys();
  for (const auto& [key, value] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) fail(key, "unknown key");
    if (value.is_object() || value.is_array()) fail(key, "nested values are not allowed");
  }

  RunConfig cfg;
  ScenarioSpec& sc = cfg.scenario;
  auto has = [&](const char* k) { return doc.contains(k); };

  if (has("family")) {
    const std::string name = get_string(doc["family"], "family");
    const auto fam = parse_family(name);
    if (!fam) fail("family", "unknown family '" + name + "' (expected bell_psi, bell_phi or separable)");
    sc.family = *fam;
  }
  sc.resonator_fock = sc.family == Family::BellPhi ? 0 : 1;

  if (has("amplitude_sq")) sc.amplitude_sq = get_number(doc["amplitude_sq"], "amplitude_sq");
  if (has("resonator_fock")) sc.resonator_fock = get_count(doc["resonator_fock"], "resonator_fock");
  if (has("allow_vacuum")) sc.allow_vacuum = get_bool(doc["allow_vacuum"], "allow_vacuum");
  if (has("g")) sc.params.g = get_number(doc["g"], "g");
  if (has("kappa")) sc.params.kappa = get_number(doc["kappa"], "kappa");
  if (has("gamma")) sc.params.gamma = get_number(doc["gamma"], "gamma");
  if (has("gamma_phi")) sc.params.gamma_phi = get_number(doc["gamma_phi"], "gamma_phi");
  if (has("n_max")) sc.params.n_max = get_count(doc["n_max"], "n_max");
  if (has("t_start")) sc.grid.t_start = get_number(doc["t_start"], "t_start");
  if (has("t_end")) sc.grid.t_end = get_number(doc["t_end"], "t_end");
  if (has("dt")) sc.grid.dt = get_number(doc["dt"], "dt");
  if (has("sample_every")) sc.grid.sample_every = get_count(doc["sample_every"], "sample_every");
  if (has("output_path")) {
    cfg.output_path = get_string(doc["output_path"], "output_path");
    if (cfg.output_path.empty()) fail("output_path", "must not be empty");
  }
  if (has("output_format")) {
    const std::string f = get_string(doc["output_format"], "output_format");
    if (f == "csv") cfg.output_format = OutputFormat::Csv;
    else if (f == "jsonl" || f == "json-lines") cfg.output_format = OutputFormat::JsonLines;
    else fail("output_format", "expected 'csv' or 'jsonl'");
  }
  if (has("measure_side")) {
    const std::string s = get_string(doc["measure_side"], "measure_side");
    if (s == "A") cfg.measure_side = MeasuredQubit::A;
    else if (s == "B") cfg.measure_side = MeasuredQubit::B;
    else fail("measure_side", "expected 'A' or 'B'");
  }
  if (has("emit_marginal_coherences")) {
    cfg.emit_marginal_coherences = get_bool(doc["emit_marginal_coherences"], "emit_marginal_coherences");
  }

  // Re-label invariant violations with the responsible key.
  auto check = [](const char* key, auto&& fn) {
    try {
      fn();
    } catch (const InvalidArgument& e) {
      fail(key, e.what());
    }
  };
  if (!(sc.amplitude_sq >= 0.0 && sc.amplitude_sq <= 1.0)) fail("amplitude_sq", "must lie in [0, 1]");
  for (const char* k : {"g", "kappa", "gamma", "gamma_phi"}) {
    const double v = doc.contains(k) ? doc[k].get<double>() : 0.0;
    if (v < 0.0) fail(k, "must be >= 0");
  }
  if (sc.params.n_max < 1) fail("n_max", "must be >= 1");
  check("n_max", [&] { sc.params.validate(); });
  if (sc.resonator_fock > sc.params.n_max) fail("resonator_fock", "exceeds n_max");
  if (sc.family == Family::BellPsi && sc.resonator_fock == 0 && !sc.allow_vacuum) {
    fail("resonator_fock", "bell_psi needs a nonempty resonator (set allow_vacuum to override)");
  }
  if (sc.family == Family::BellPhi && sc.resonator_fock != 0) {
    fail("resonator_fock", "bell_phi starts with an empty resonator");
  }
  if (!(sc.grid.dt > 0.0)) fail("dt", "must be > 0");
  if (!(sc.grid.t_end > sc.grid.t_start)) fail("t_end", "must be greater than t_start");
  if (sc.grid.sample_every == 0) fail("sample_every", "must be >= 1");
  check("dt", [&] { sc.grid.validate(); });
  sc.validate();
  return cfg;
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(doc);
}

json config_to_json(const RunConfig& cfg) {
  const ScenarioSpec& sc = cfg.scenario;
  json j;
  j["family"] = std::string(family_name(sc.family));
  j["amplitude_sq"] = sc.amplitude_sq;
  j["resonator_fock"] = sc.resonator_fock;
  j["allow_vacuum"] = sc.allow_vacuum;
  j["g"] = sc.params.g;
  j["kappa"] = sc.params.kappa;
  j["gamma"] = sc.params.gamma;
  j["gamma_phi"] = sc.params.gamma_phi;
  j["n_max"] = sc.params.n_max;
  j["t_start"] = sc.grid.t_start;
  j["t_end"] = sc.grid.t_end;
  j["dt"] = sc.grid.dt;
  j["sample_every"] = sc.grid.sample_every;
  j["output_path"] = cfg.output_path;
  j["output_format"] = cfg.output_format == OutputFormat::Csv ? "csv" : "jsonl";
  j["measure_side"] = cfg.measure_side == MeasuredQubit::A ? "A" : "B";
  j["emit_marginal_coherences"] = cfg.emit_marginal_coherences;
  return j;
}

}  // namespace ddmcorr
