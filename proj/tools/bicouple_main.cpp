#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bicouple/config.hpp"
#include "bicouple/output.hpp"
#include "bicouple/presets.hpp"

namespace {

using namespace bicouple;

constexpr int kExitOk = 0;
constexpr int kExitToleranceFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitBlowUp = 3;

std::string default_out_dir() {
  if (const char* env = std::getenv("BICOUPLE_OUT"); env && *env) return env;
  return ".";
}

void print_outcome(const RunSetOutcome& outcome, bool verdicts_only) {
  if (!verdicts_only) {
    std::printf("%-28s %-22s %-22s %s\n", "coupling", "C0bar", "CTbar", "abs_drift");
    for (const auto& r : outcome.runs)
      std::printf("%-28s %-22s %-22s %s\n", r.label.c_str(), format_g17(r.c0bar).c_str(),
                  format_g17(r.ctbar).c_str(), format_g17(r.abs_drift).c_str());
  }
  for (const auto& cr : outcome.check_results)
    std::printf("[%s] %s\n", cr.passed ? "PASS" : "FAIL", cr.message.c_str());
}

// Flat-flag equivalent of the JSON config; assembled into the same object so
// both paths share validation and diagnostics.
struct FlatFlags {
  std::string kind, boundary, initial, summation, coupling_type, discretization;
  std::optional<double> D_minus, D_plus, dx, dt, cfl_fraction;
  std::optional<long> m, n_steps, audit_every;
  std::optional<double> H, theta, r, psi, alpha, beta, gamma, delta, P_l, P_p, K_d;
  bool allow_unstable = false;

  bool any() const {
    return !kind.empty() || !boundary.empty() || !initial.empty() || !summation.empty() ||
           !coupling_type.empty() || !discretization.empty() || D_minus || D_plus || dx || dt ||
           cfl_fraction || m || n_steps || audit_every || allow_unstable;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    if (!kind.empty()) j["kind"] = kind;
    if (D_minus) j["D_minus"] = *D_minus;
    if (D_plus) j["D_plus"] = *D_plus;
    if (m) j["m"] = *m;
    if (dx) j["dx"] = *dx;
    if (dt) j["dt"] = *dt;
    if (cfl_fraction) j["cfl_fraction"] = *cfl_fraction;
    if (n_steps) j["n_steps"] = *n_steps;
    if (!boundary.empty()) j["boundary"] = boundary;
    if (!initial.empty()) j["initial"] = initial;
    if (audit_every) j["audit_every"] = *audit_every;
    if (!summation.empty()) j["summation"] = summation;
    if (allow_unstable) j["allow_unstable"] = true;
    nlohmann::json c;
    c["type"] = coupling_type.empty() ? "dirichlet_neumann" : coupling_type;
    if (!discretization.empty()) c["discretization"] = discretization;
    auto put = [&](const char* key, const std::optional<double>& v) {
      if (v) c[key] = *v;
    };
    put("H", H);
    put("theta", theta);
    put("r", r);
    put("psi", psi);
    put("alpha", alpha);
    put("beta", beta);
    put("gamma", gamma);
    put("delta", delta);
    put("P_l", P_l);
    put("P_p", P_p);
    put("K_d", K_d);
    j["coupling"] = std::move(c);
    return j;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bicouple: bi-domain diffusion solver with coupling conditions and a mass audit"};
  app.require_subcommand(1);

  std::string preset_name, config_path, out_dir;
  bool plot = false, kahan = false, serial = false;
  FlatFlags flags;

  auto add_run_like = [&](CLI::App* cmd) {
    cmd->add_option("--preset", preset_name, "named preset from the catalogue");
    cmd->add_option("--config", config_path, "JSON run configuration file");
    cmd->add_flag("--kahan", kahan, "compensated summation for the mass audit");
    cmd->add_flag("--serial", serial, "run couplings sequentially");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "run simulations and write CSV artifacts");
  add_run_like(run_cmd);
  run_cmd->add_option("--out", out_dir, "output directory (default $BICOUPLE_OUT or .)");
  run_cmd->add_flag("--plot", plot, "also write a static SVG profile overlay");
  run_cmd->add_option("--kind", flags.kind, "nodal | fv");
  run_cmd->add_option("--D-minus", flags.D_minus, "left diffusivity");
  run_cmd->add_option("--D-plus", flags.D_plus, "right diffusivity");
  run_cmd->add_option("--m", flags.m, "cells/nodes per sub-domain");
  run_cmd->add_option("--dx", flags.dx, "mesh size 1/(2m)");
  run_cmd->add_option("--dt", flags.dt, "time step");
  run_cmd->add_option("--cfl-fraction", flags.cfl_fraction, "dt as fraction of dx^2/max(D)");
  run_cmd->add_option("--n-steps", flags.n_steps, "number of time steps");
  run_cmd->add_option("--boundary", flags.boundary, "central | one_sided");
  run_cmd->add_option("--initial", flags.initial, "cosine | piecewise | sqrt");
  run_cmd->add_option("--audit-every", flags.audit_every, "mass audit cadence (0 = endpoints)");
  run_cmd->add_option("--summation", flags.summation, "sequential | compensated");
  run_cmd->add_flag("--allow-unstable", flags.allow_unstable, "disable the CFL guard");
  run_cmd->add_option("--coupling", flags.coupling_type,
                      "dirichlet_neumann | giles | giles_correct | heat | general | channel | membrane");
  run_cmd->add_option("--discretization", flags.discretization, "central | one_sided");
  run_cmd->add_option("--H", flags.H, "heat/general transfer coefficient");
  run_cmd->add_option("--theta", flags.theta, "general partition coefficient");
  run_cmd->add_option("--r", flags.r, "Giles mesh ratio");
  run_cmd->add_option("--psi", flags.psi, "channel strength");
  run_cmd->add_option("--alpha", flags.alpha, "channel parameter");
  run_cmd->add_option("--beta", flags.beta, "channel parameter");
  run_cmd->add_option("--gamma", flags.gamma, "channel parameter");
  run_cmd->add_option("--delta", flags.delta, "channel parameter");
  run_cmd->add_option("--P-l", flags.P_l, "membrane leak coefficient");
  run_cmd->add_option("--P-p", flags.P_p, "membrane pump strength");
  run_cmd->add_option("--K-d", flags.K_d, "membrane dissociation constant");

  CLI::App* check_cmd = app.add_subcommand("check", "run a preset and print tolerance verdicts only");
  add_run_like(check_cmd);

  CLI::App* list_cmd = app.add_subcommand("list-presets", "list the preset catalogue");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list_cmd->parsed()) {
      for (const auto& p : presets()) std::printf("%-16s %s\n", p.name.c_str(), p.summary.c_str());
      return kExitOk;
    }

    const bool is_check = check_cmd->parsed();
    ResolvedInput input;
    if (!preset_name.empty()) {
      if (!config_path.empty() || flags.any())
        throw ConfigError("config error: --preset cannot be combined with --config or flat flags");
      const Preset* p = find_preset(preset_name);
      if (!p) throw ConfigError("config error: unknown preset \"" + preset_name + "\"");
      input = {p->name, p->configs, p->checks};
    } else if (!config_path.empty()) {
      if (flags.any())
        throw ConfigError("config error: --config cannot be combined with flat flags");
      std::ifstream in(config_path);
      if (!in) throw ConfigError("config error: cannot open config file \"" + config_path + "\"");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config error: invalid JSON in \"" + config_path + "\": " + e.what());
      }
      input = resolve_input(j);
    } else if (flags.any()) {
      input = resolve_input(flags.to_json());
    } else {
      throw ConfigError("config error: give --preset, --config, or flat run flags");
    }

    std::optional<SummationMode> mode_override;
    if (kahan) mode_override = SummationMode::Compensated;

    RunSetOutcome outcome = run_config_set(input.name, input.configs, input.checks, mode_override,
                                           !serial);
    print_outcome(outcome, is_check);

    if (!is_check) {
      std::string dir = !out_dir.empty() ? out_dir : default_out_dir();
      for (const auto& lc : input.configs)
        if (!lc.config.out_dir.empty()) dir = lc.config.out_dir;
      if (!out_dir.empty()) dir = out_dir;
      emit_outputs(outcome, dir, plot);
      std::printf("artifacts written to %s\n", dir.c_str());
    }
    return outcome.all_passed ? kExitOk : kExitToleranceFailure;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "runtime error: %s\n", e.what());
    return kExitBlowUp;
  }
}
