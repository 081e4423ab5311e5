#pragma once

// Built-in acceptance suite: analytic dynamics oracles, measure identities,
// optimizer-vs-brute-force checks, qualitative correlation features,
// integrator convergence and output determinism.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace ddmcorr {

struct ValidationOptions {
  double dt = 0.002;              ///< integrator step for every dynamics check [ns]
  std::uint64_t seed = 20101109;  ///< mt19937_64 seed for random states
  std::vector<int> only;          ///< check ids to run; empty runs all
  std::string scratch_dir;        ///< for determinism output files; empty = system temp
  std::ostream* progress = nullptr;
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string measured;
  std::string tolerance;
  double seconds = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::uint64_t seed = 0;
  double dt = 0.0;
  std::vector<CheckResult> checks;

  bool all_passed() const;
  nlohmann::json to_json() const;
};

/// Number of checks in the full suite (ids 1..N).
int validation_check_count();

ValidationReport run_validation(const ValidationOptions& opts = {});

/// One aligned PASS/FAIL line per check.
void print_report_table(std::ostream& out, const ValidationReport& report);

}  // namespace ddmcorr
