#ifndef BICOUPLE_PRESETS_HPP
#define BICOUPLE_PRESETS_HPP

#include <optional>
#include <string>
#include <vector>

#include "bicouple/config.hpp"
#include "bicouple/stepper.hpp"

namespace bicouple {

// Declarative tolerance checks attached to presets. Drifts are final absolute
// drifts of the scaled total concentration, |cbar(T) - cbar(0)|.
struct Check {
  enum class Kind {
    DriftBelow,          // drift(a) <= bound
    DriftEquals,         // |drift(a) - expected| <= tol
    DriftInRange,        // lo <= drift(a) <= hi
    DriftRatioAtLeast,   // drift(a) >= factor * drift(b)
    FinalCbarEquals,     // |cbar_T(a) - expected| <= tol
    InterfaceDiffEquals  // ||u_iface(a) - u_iface(b)| - expected| <= tol
  };
  Kind kind;
  std::string a;  // run label
  std::string b;  // second run label (ratio / interface-diff checks)
  double expected = 0.0;
  double tol = 0.0;
  double bound = 0.0;
  double lo = 0.0, hi = 0.0;
  double factor = 0.0;

  std::string describe() const;
};

// One simulation job: a config whose couplings are run independently. The tag
// prefixes run labels when a preset carries several configs.
struct LabeledConfig {
  std::string tag;
  RunConfig config;
};

struct Preset {
  std::string name;
  std::string summary;
  std::vector<LabeledConfig> configs;
  std::vector<Check> checks;
};

// Frozen catalogue of the reproduction experiments.
const std::vector<Preset>& presets();
const Preset* find_preset(std::string_view name);

// Outcome of one (config, coupling) simulation.
struct CouplingRun {
  std::string label;
  Grid grid;
  CouplingSpec coupling;
  BoundaryKind boundary;
  RunResult result;
  double c0bar = 0.0;
  double ctbar = 0.0;
  double abs_drift = 0.0;

  // Final value of the left interface unknown (nodal u_m / last left cell).
  double interface_u() const;
};

struct CheckResult {
  Check check;
  bool passed = false;
  double measured = 0.0;
  std::string message;
};

struct RunSetOutcome {
  std::string name;
  std::vector<CouplingRun> runs;
  std::vector<CheckResult> check_results;
  bool all_passed = true;

  const CouplingRun* find(std::string_view label) const;
};

// Runs every coupling of every config (concurrently when parallel is set) and
// evaluates the checks. An explicit summation mode overrides the configs'.
RunSetOutcome run_config_set(const std::string& name, const std::vector<LabeledConfig>& configs,
                             const std::vector<Check>& checks,
                             std::optional<SummationMode> summation_override = std::nullopt,
                             bool parallel = true);

RunSetOutcome run_preset(const Preset& preset,
                         std::optional<SummationMode> summation_override = std::nullopt,
                         bool parallel = true);

// Resolves a CLI/JSON run request: {"preset": name} indirects into the
// catalogue, anything else parses as a plain RunConfig without checks.
struct ResolvedInput {
  std::string name;
  std::vector<LabeledConfig> configs;
  std::vector<Check> checks;
};
ResolvedInput resolve_input(const nlohmann::json& j);

}  // namespace bicouple

#endif
