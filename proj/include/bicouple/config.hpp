#ifndef BICOUPLE_CONFIG_HPP
#define BICOUPLE_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bicouple/fluxes.hpp"
#include "bicouple/stepper.hpp"

namespace bicouple {

// Raised for malformed or contradictory run configurations (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A fully validated run description. The mesh is canonicalized to m (a "dx"
// input is converted); the time step stays as given (dt or cfl_fraction).
struct RunConfig {
  GridKind kind = GridKind::Nodal;
  double D_minus = 1.0;
  double D_plus = 1.0;
  int m = 0;
  std::optional<double> dt;
  std::optional<double> cfl_fraction;  // exactly one of dt/cfl_fraction is set
  long n_steps = 0;
  std::optional<BoundaryKind> boundary;  // defaulted per layout when absent
  std::vector<CouplingSpec> couplings;
  std::string initial = "cosine";
  long audit_every = 0;  // 0 = audit endpoints only
  SummationMode summation = SummationMode::Sequential;
  std::string out_dir;
  bool allow_unstable = false;

  double dx() const { return 1.0 / (2.0 * m); }
  double resolved_dt() const;
  BoundaryKind resolved_boundary() const;

  // Scheme for one of the configured couplings.
  SchemeConfig scheme(const CouplingSpec& coupling) const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Strict parser: unknown keys, contradictory keys (dx and m, dt and
// cfl_fraction), and out-of-range values raise ConfigError naming the key.
// cfl_fraction defaults to 0.4 when neither dt nor cfl_fraction is given.
RunConfig parse_config(const nlohmann::json& j);

// Reads and parses a JSON config file.
RunConfig load_config_file(const std::string& path);

nlohmann::json to_json(const RunConfig& config);
nlohmann::json coupling_to_json(const CouplingSpec& spec);
CouplingSpec coupling_from_json(const nlohmann::json& j);

}  // namespace bicouple

#endif
