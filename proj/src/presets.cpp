#include "bicouple/presets.hpp"

#include <cmath>
#include <cstdio>
#include <future>

namespace bicouple {

namespace {

// Channel cluster and membrane pump parameters of the reference experiments
// (scaled for the one-dimensional model).
constexpr double kPsi = 9.3954e-7;
constexpr double kAlpha = 1.497;
constexpr double kBeta = 1.1949e-4;
constexpr double kGamma = 1.1556e-7;
constexpr double kDelta = 1.1444e-7;
constexpr double kPl = 0.02;
constexpr double kPp = 1.0;
constexpr double kKd = 0.2;

CouplingSpec channel_spec(FluxDiscretization d, double sign = 1.0) {
  return CouplingSpec::channel(sign * kPsi, kAlpha, kBeta, kGamma, kDelta, d);
}

CouplingSpec membrane_spec(FluxDiscretization d, double sign = 1.0) {
  return CouplingSpec::membrane(sign * kPl, kPp, kKd, d);
}

RunConfig base_config(GridKind kind, double Dm, double Dp, int m, long n_steps,
                      const std::string& initial, long audit_every,
                      std::vector<CouplingSpec> couplings) {
  RunConfig c;
  c.kind = kind;
  c.D_minus = Dm;
  c.D_plus = Dp;
  c.m = m;
  c.cfl_fraction = 0.4;
  c.n_steps = n_steps;
  c.initial = initial;
  c.audit_every = audit_every;
  c.couplings = std::move(couplings);
  return c;
}

Check drift_below(std::string label, double bound) {
  Check c;
  c.kind = Check::Kind::DriftBelow;
  c.a = std::move(label);
  c.bound = bound;
  return c;
}

Check drift_equals(std::string label, double expected, double tol) {
  Check c;
  c.kind = Check::Kind::DriftEquals;
  c.a = std::move(label);
  c.expected = expected;
  c.tol = tol;
  return c;
}

Check drift_in_range(std::string label, double lo, double hi) {
  Check c;
  c.kind = Check::Kind::DriftInRange;
  c.a = std::move(label);
  c.lo = lo;
  c.hi = hi;
  return c;
}

Check drift_ratio(std::string a, std::string b, double factor) {
  Check c;
  c.kind = Check::Kind::DriftRatioAtLeast;
  c.a = std::move(a);
  c.b = std::move(b);
  c.factor = factor;
  return c;
}

Check cbar_equals(std::string label, double expected, double tol) {
  Check c;
  c.kind = Check::Kind::FinalCbarEquals;
  c.a = std::move(label);
  c.expected = expected;
  c.tol = tol;
  return c;
}

Check interface_diff(std::string a, std::string b, double expected, double tol) {
  Check c;
  c.kind = Check::Kind::InterfaceDiffEquals;
  c.a = std::move(a);
  c.b = std::move(b);
  c.expected = expected;
  c.tol = tol;
  return c;
}

std::vector<Preset> build_catalogue() {
  using FD = FluxDiscretization;
  std::vector<Preset> cat;

  const std::vector<CouplingSpec> six_central = {
      CouplingSpec::dirichlet_neumann(),
      CouplingSpec::giles(),
      CouplingSpec::heat(1.0, FD::Central),
      CouplingSpec::heat(0.1, FD::Central),
      channel_spec(FD::Central),
      membrane_spec(FD::Central),
  };

  {
    Preset p;
    p.name = "fig2";
    p.summary = "six couplings on a coarse mesh (dx=0.01, 3000 steps, cosine data)";
    p.configs = {{"", base_config(GridKind::Nodal, 0.1, 1.0, 50, 3000, "cosine", 30, six_central)}};
    p.checks = {interface_diff("dn", "giles", 2.730344211099967e-3, 1e-6)};
    cat.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig3-negative";
    p.summary = "negative-coefficient flux couplings on the fine mesh (dx=1e-5, 1e6 steps)";
    p.configs = {{"", base_config(GridKind::Nodal, 0.1, 1.0, 50000, 1000000, "cosine", 10000,
                                  {CouplingSpec::heat(-1.0, FD::Central),
                                   CouplingSpec::heat(-0.1, FD::Central),
                                   channel_spec(FD::Central, -1.0),
                                   membrane_spec(FD::Central, -1.0)})}};
    p.checks = {drift_below("heat_central_H-1", 1e-10),
                drift_below("heat_central_H-0.1", 1e-10),
                drift_below("channel_central_neg", 1e-10),
                drift_below("membrane_central_neg", 1e-10)};
    cat.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig4-fine";
    p.summary = "conservation audit, cosine data (dx=1e-4, 1e5 steps, six couplings)";
    p.configs = {
        {"", base_config(GridKind::Nodal, 0.1, 1.0, 5000, 100000, "cosine", 1000, six_central)}};
    p.checks = {drift_equals("giles", 2.420965528937558e-6, 1e-8),
                drift_below("dn", 1e-11),
                drift_below("heat_central_H1", 1e-11),
                drift_below("heat_central_H0.1", 1e-11),
                drift_below("channel_central", 1e-11),
                drift_below("membrane_central", 1e-11)};
    cat.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig5-piecewise";
    p.summary = "discontinuous data, nodal layout (dx=1e-5, 1e6 steps, central + one-sided couplings)";
    std::vector<CouplingSpec> couplings = six_central;
    couplings.push_back(CouplingSpec::heat(1.0, FD::OneSided));
    couplings.push_back(CouplingSpec::heat(0.1, FD::OneSided));
    couplings.push_back(channel_spec(FD::OneSided));
    couplings.push_back(membrane_spec(FD::OneSided));
    p.configs = {
        {"", base_config(GridKind::Nodal, 0.1, 1.0, 50000, 1000000, "piecewise", 10000, couplings)}};
    p.checks = {drift_equals("dn", 9.399993379233251e-7, 1e-8),
                drift_equals("giles", 2.631702722744045e-6, 1e-7),
                drift_below("heat_central_H1", 1e-10),
                drift_below("heat_central_H0.1", 1e-10),
                drift_below("channel_central", 1e-10),
                drift_below("membrane_central", 1e-10),
                drift_in_range("heat_onesided_H1", 1e-9, 1e-7),
                drift_in_range("heat_onesided_H0.1", 1e-9, 1e-7),
                drift_in_range("channel_onesided", 1e-11, 1e-9),
                drift_in_range("membrane_onesided", 1e-10, 1e-8),
                drift_ratio("heat_onesided_H1", "heat_central_H1", 10.0),
                drift_ratio("heat_onesided_H0.1", "heat_central_H0.1", 10.0),
                drift_ratio("channel_onesided", "channel_central", 10.0),
                drift_ratio("membrane_onesided", "membrane_central", 10.0)};
    cat.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig5-small";
    p.summary = "CI-sized nodal-vs-FV contrast for discontinuous data (dx=1e-3, 1e4 steps)";
    p.configs = {{"nodal", base_config(GridKind::Nodal, 0.1, 1.0, 500, 10000, "piecewise", 1000,
                                       {CouplingSpec::dirichlet_neumann()})},
                 {"fv", base_config(GridKind::FiniteVolume, 0.1, 1.0, 500, 10000, "piecewise", 1000,
                                    {CouplingSpec::dirichlet_neumann()})}};
    p.checks = {drift_ratio("nodal_dn", "fv_dn", 1e3)};
    cat.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig6-fv";
    p.summary = "discontinuous data, finite-volume layout (dx=1e-5, 1e6 steps)";
    p.configs = {{"", base_config(GridKind::FiniteVolume, 0.1, 1.0, 50000, 1000000, "piecewise",
                                  10000,
                                  {CouplingSpec::dirichlet_neumann(),
                                   CouplingSpec::giles(),
                                   CouplingSpec::heat(1.0, FD::OneSided),
                                   CouplingSpec::heat(0.1, FD::OneSided),
                                   channel_spec(FD::OneSided),
                                   membrane_spec(FD::OneSided)})}};
    p.checks = {drift_below("dn", 1e-10),
                drift_equals("giles", 3.570428568577810e-6, 1e-7),
                drift_below("heat_onesided_H1", 1e-10),
                drift_below("heat_onesided_H0.1", 1e-10),
                drift_below("channel_onesided", 1e-10),
                drift_below("membrane_onesided", 1e-10)};
    cat.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig6-small";
    p.summary = "CI-sized finite-volume coupling family (dx=1e-3, 1e4 steps)";
    p.configs = {{"", base_config(GridKind::FiniteVolume, 0.1, 1.0, 500, 10000, "piecewise", 1000,
                                  {CouplingSpec::dirichlet_neumann(),
                                   CouplingSpec::giles(),
                                   CouplingSpec::heat(1.0, FD::OneSided),
                                   channel_spec(FD::OneSided),
                                   membrane_spec(FD::OneSided)})}};
    p.checks = {drift_below("dn", 1e-10),
                drift_below("heat_onesided_H1", 1e-10),
                drift_below("channel_onesided", 1e-10),
                drift_below("membrane_onesided", 1e-10),
                drift_ratio("giles", "dn", 10.0)};
    cat.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "sqrt-boundary";
    p.summary = "single-domain sqrt data under both outer-boundary treatments (dx=0.01, 500 steps)";
    RunConfig central = base_config(GridKind::Nodal, 0.001, 0.001, 50, 500, "sqrt", 50,
                                    {CouplingSpec::dirichlet_neumann()});
    RunConfig onesided = central;
    central.boundary = BoundaryKind::CentralGhost;
    onesided.boundary = BoundaryKind::OneSidedGhost;
    p.configs = {{"central", central}, {"onesided", onesided}};
    p.checks = {cbar_equals("central_dn", 39.22835638873113, 1e-10),
                drift_below("central_dn", 1e-12),
                cbar_equals("onesided_dn", 38.91134647144038, 1e-9),
                drift_equals("onesided_dn", 0.3170099172908607, 1e-6)};
    cat.push_back(std::move(p));
  }
  return cat;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> cat = build_catalogue();
  return cat;
}

const Preset* find_preset(std::string_view name) {
  for (const auto& p : presets())
    if (p.name == name) return &p;
  return nullptr;
}

double CouplingRun::interface_u() const {
  return grid.kind == GridKind::Nodal ? result.final_state.u[grid.m]
                                      : result.final_state.u[grid.m - 1];
}

const CouplingRun* RunSetOutcome::find(std::string_view label) const {
  for (const auto& r : runs)
    if (r.label == label) return &r;
  return nullptr;
}

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

CouplingRun execute_one(const std::string& tag, const RunConfig& config,
                        const CouplingSpec& coupling, SummationMode mode) {
  CouplingRun out;
  out.label = tag.empty() ? coupling.label() : tag + "_" + coupling.label();
  out.grid = build_grid(config.m, config.kind);
  out.coupling = coupling;
  out.boundary = config.resolved_boundary();
  const InitialData data = initial_library(config.initial);
  const BiDomainState init = discretize_initial(out.grid, data.f_left, data.f_right);
  out.result = run(init, config.scheme(coupling), config.n_steps, config.audit_every, mode);
  const auto& ledger = out.result.ledger;
  out.c0bar = ledger.cbar(0);
  out.ctbar = ledger.cbar(ledger.entries.size() - 1);
  out.abs_drift = std::fabs(out.ctbar - out.c0bar);
  return out;
}

}  // namespace

std::string Check::describe() const {
  switch (kind) {
    case Kind::DriftBelow:
      return a + ": |drift| <= " + fmt(bound);
    case Kind::DriftEquals:
      return a + ": |drift| = " + fmt(expected) + " +- " + fmt(tol);
    case Kind::DriftInRange:
      return a + ": |drift| in [" + fmt(lo) + ", " + fmt(hi) + "]";
    case Kind::DriftRatioAtLeast:
      return a + ": |drift| >= " + fmt(factor) + " x |drift(" + b + ")|";
    case Kind::FinalCbarEquals:
      return a + ": cbar(T) = " + fmt(expected) + " +- " + fmt(tol);
    case Kind::InterfaceDiffEquals:
      return "|u(1/2," + a + ") - u(1/2," + b + ")| = " + fmt(expected) + " +- " + fmt(tol);
  }
  return {};
}

RunSetOutcome run_config_set(const std::string& name, const std::vector<LabeledConfig>& configs,
                             const std::vector<Check>& checks,
                             std::optional<SummationMode> summation_override, bool parallel) {
  RunSetOutcome out;
  out.name = name;

  std::vector<std::future<CouplingRun>> futures;
  for (const auto& lc : configs) {
    const SummationMode mode = summation_override.value_or(lc.config.summation);
    for (const auto& coupling : lc.config.couplings) {
      auto job = [tag = lc.tag, config = lc.config, coupling, mode] {
        return execute_one(tag, config, coupling, mode);
      };
      futures.push_back(parallel ? std::async(std::launch::async, job)
                                 : std::async(std::launch::deferred, job));
    }
  }
  out.runs.reserve(futures.size());
  for (auto& f : futures) out.runs.push_back(f.get());

  for (const auto& check : checks) {
    CheckResult res;
    res.check = check;
    const CouplingRun* a = out.find(check.a);
    const CouplingRun* b = check.b.empty() ? nullptr : out.find(check.b);
    if (!a || (!check.b.empty() && !b)) {
      res.passed = false;
      res.message = check.describe() + "  [missing run]";
    } else {
      switch (check.kind) {
        case Check::Kind::DriftBelow:
          res.measured = a->abs_drift;
          res.passed = res.measured <= check.bound;
          break;
        case Check::Kind::DriftEquals:
          res.measured = a->abs_drift;
          res.passed = std::fabs(res.measured - check.expected) <= check.tol;
          break;
        case Check::Kind::DriftInRange:
          res.measured = a->abs_drift;
          res.passed = res.measured >= check.lo && res.measured <= check.hi;
          break;
        case Check::Kind::DriftRatioAtLeast:
          res.measured = a->abs_drift;
          res.passed = res.measured >= check.factor * b->abs_drift;
          break;
        case Check::Kind::FinalCbarEquals:
          res.measured = a->ctbar;
          res.passed = std::fabs(res.measured - check.expected) <= check.tol;
          break;
        case Check::Kind::InterfaceDiffEquals:
          res.measured = std::fabs(a->interface_u() - b->interface_u());
          res.passed = std::fabs(res.measured - check.expected) <= check.tol;
          break;
      }
      res.message = check.describe() + "  [measured " + fmt(res.measured) + "]";
    }
    out.all_passed = out.all_passed && res.passed;
    out.check_results.push_back(std::move(res));
  }
  return out;
}

RunSetOutcome run_preset(const Preset& preset, std::optional<SummationMode> summation_override,
                         bool parallel) {
  return run_config_set(preset.name, preset.configs, preset.checks, summation_override, parallel);
}

ResolvedInput resolve_input(const nlohmann::json& j) {
  if (j.is_object() && j.contains("preset")) {
    if (j.size() != 1)
      throw ConfigError("config error: \"preset\" cannot be combined with other keys");
    const auto& v = j.at("preset");
    if (!v.is_string()) throw ConfigError("config error: key \"preset\" must be a string");
    const Preset* p = find_preset(v.get<std::string>());
    if (!p) throw ConfigError("config error: unknown preset \"" + v.get<std::string>() + "\"");
    return ResolvedInput{p->name, p->configs, p->checks};
  }
  RunConfig c = parse_config(j);
  return ResolvedInput{"custom", {{"", std::move(c)}}, {}};
}

}  // namespace bicouple
