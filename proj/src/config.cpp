#include "bicouple/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace bicouple {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config error: " + msg); }

void require_keys(const json& j, const std::set<std::string>& known, const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) fail("unknown key \"" + it.key() + "\" in " + where);
}

double num(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) fail(std::string("key \"") + key + "\" must be a number");
  return v.get<double>();
}

long integer(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) fail(std::string("key \"") + key + "\" must be an integer");
  return v.get<long>();
}

std::string str(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_string()) fail(std::string("key \"") + key + "\" must be a string");
  return v.get<std::string>();
}

GridKind parse_kind(const std::string& s) {
  if (s == "nodal") return GridKind::Nodal;
  if (s == "fv" || s == "finite_volume") return GridKind::FiniteVolume;
  fail("key \"kind\" must be \"nodal\" or \"fv\", got \"" + s + "\"");
}

BoundaryKind parse_boundary(const std::string& s) {
  if (s == "central") return BoundaryKind::CentralGhost;
  if (s == "one_sided" || s == "onesided") return BoundaryKind::OneSidedGhost;
  fail("key \"boundary\" must be \"central\" or \"one_sided\", got \"" + s + "\"");
}

SummationMode parse_summation(const std::string& s) {
  if (s == "sequential") return SummationMode::Sequential;
  if (s == "compensated" || s == "kahan") return SummationMode::Compensated;
  fail("key \"summation\" must be \"sequential\" or \"compensated\", got \"" + s + "\"");
}

}  // namespace

CouplingSpec coupling_from_json(const json& j) {
  if (!j.is_object()) fail("\"coupling\" entries must be objects");
  require_keys(j,
               {"type", "discretization", "r", "H", "theta", "psi", "alpha", "beta", "gamma",
                "delta", "P_l", "P_p", "K_d", "eps_den"},
               "coupling");
  const std::string type = str(j, "type");
  FluxDiscretization d = FluxDiscretization::Central;
  if (j.contains("discretization")) {
    const std::string s = str(j, "discretization");
    if (s == "central")
      d = FluxDiscretization::Central;
    else if (s == "one_sided" || s == "onesided")
      d = FluxDiscretization::OneSided;
    else
      fail("coupling key \"discretization\" must be \"central\" or \"one_sided\"");
  }

  auto forbid = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys)
      if (j.contains(k)) fail("coupling key \"" + std::string(k) + "\" does not apply to type \"" + type + "\"");
  };

  if (type == "dirichlet_neumann" || type == "dn") {
    forbid({"discretization", "r", "H", "theta", "psi", "alpha", "beta", "gamma", "delta", "P_l", "P_p", "K_d", "eps_den"});
    return CouplingSpec::dirichlet_neumann();
  }
  if (type == "giles" || type == "giles_correct") {
    forbid({"discretization", "H", "theta", "psi", "alpha", "beta", "gamma", "delta", "P_l", "P_p", "K_d", "eps_den"});
    const double r = j.contains("r") ? num(j, "r") : 1.0;
    if (type == "giles_correct" && !(r > 0.0)) fail("coupling key \"r\" must be positive");
    return type == "giles" ? CouplingSpec::giles(r) : CouplingSpec::giles_correct(r);
  }
  if (type == "heat") {
    forbid({"r", "theta", "psi", "alpha", "beta", "gamma", "delta", "P_l", "P_p", "K_d", "eps_den"});
    return CouplingSpec::heat(num(j, "H"), d);
  }
  if (type == "general") {
    forbid({"r", "psi", "alpha", "beta", "gamma", "delta", "P_l", "P_p", "K_d", "eps_den"});
    return CouplingSpec::general(num(j, "H"), num(j, "theta"), d);
  }
  if (type == "channel") {
    forbid({"r", "H", "theta", "P_l", "P_p", "K_d"});
    CouplingSpec c = CouplingSpec::channel(num(j, "psi"), num(j, "alpha"), num(j, "beta"),
                                           num(j, "gamma"), num(j, "delta"), d);
    if (j.contains("eps_den")) c.eps_den = num(j, "eps_den");
    return c;
  }
  if (type == "membrane") {
    forbid({"r", "H", "theta", "psi", "alpha", "beta", "gamma", "delta", "eps_den"});
    CouplingSpec c = CouplingSpec::membrane(num(j, "P_l"), num(j, "P_p"), num(j, "K_d"), d);
    if (c.K_d == 0.0) fail("coupling key \"K_d\" must be nonzero");
    return c;
  }
  fail("unknown coupling type \"" + type + "\"");
}

json coupling_to_json(const CouplingSpec& c) {
  json j;
  const char* d = c.discretization == FluxDiscretization::Central ? "central" : "one_sided";
  switch (c.kind) {
    case CouplingKind::DirichletNeumann:
      j["type"] = "dirichlet_neumann";
      break;
    case CouplingKind::GilesInconsistent:
      j["type"] = "giles";
      if (c.r != 1.0) j["r"] = c.r;
      break;
    case CouplingKind::GilesCorrect:
      j["type"] = "giles_correct";
      if (c.r != 1.0) j["r"] = c.r;
      break;
    case CouplingKind::HeatFlux:
      j["type"] = "heat";
      j["H"] = c.H;
      j["discretization"] = d;
      break;
    case CouplingKind::GeneralFlux:
      j["type"] = "general";
      j["H"] = c.H;
      j["theta"] = c.theta;
      j["discretization"] = d;
      break;
    case CouplingKind::ChannelFlux:
      j["type"] = "channel";
      j["psi"] = c.psi;
      j["alpha"] = c.alpha;
      j["beta"] = c.beta;
      j["gamma"] = c.gamma;
      j["delta"] = c.delta;
      j["discretization"] = d;
      if (c.eps_den != kChannelDenominatorGuard) j["eps_den"] = c.eps_den;
      break;
    case CouplingKind::MembraneFlux:
      j["type"] = "membrane";
      j["P_l"] = c.P_l;
      j["P_p"] = c.P_p;
      j["K_d"] = c.K_d;
      j["discretization"] = d;
      break;
  }
  return j;
}

double RunConfig::resolved_dt() const {
  if (dt) return *dt;
  return cfl_safety_dt(D_minus, D_plus, dx(), cfl_fraction.value_or(0.4));
}

BoundaryKind RunConfig::resolved_boundary() const {
  return boundary ? *boundary : default_boundary(kind);
}

SchemeConfig RunConfig::scheme(const CouplingSpec& coupling) const {
  SchemeConfig s = make_config(build_grid(m, kind), D_minus, D_plus, resolved_dt(), coupling);
  s.boundary = resolved_boundary();
  s.allow_unstable = allow_unstable;
  return s;
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) fail("configuration must be a JSON object");
  require_keys(j,
               {"kind", "D_minus", "D_plus", "m", "dx", "dt", "cfl_fraction", "n_steps",
                "boundary", "coupling", "initial", "audit_every", "summation", "out_dir",
                "allow_unstable"},
               "configuration");
  RunConfig c;
  if (j.contains("kind")) c.kind = parse_kind(str(j, "kind"));
  if (!j.contains("D_minus") || !j.contains("D_plus")) fail("keys \"D_minus\" and \"D_plus\" are required");
  c.D_minus = num(j, "D_minus");
  c.D_plus = num(j, "D_plus");
  if (!(c.D_minus > 0.0)) fail("key \"D_minus\" must be positive");
  if (!(c.D_plus > 0.0)) fail("key \"D_plus\" must be positive");

  if (j.contains("m") == j.contains("dx")) fail("exactly one of \"m\" and \"dx\" must be given");
  if (j.contains("m")) {
    const long m = integer(j, "m");
    if (m < 2) fail("key \"m\" must be at least 2 (mesh too coarse for stencil)");
    c.m = static_cast<int>(m);
  } else {
    const double dxv = num(j, "dx");
    if (!(dxv > 0.0)) fail("key \"dx\" must be positive");
    const double n_real = 1.0 / dxv;
    const long n = std::lround(n_real);
    if (std::fabs(n_real - n) > 1e-9 * n_real || n % 2 != 0 || n < 4)
      fail("key \"dx\" must equal 1/N for an even N >= 4");
    c.m = static_cast<int>(n / 2);
  }

  if (j.contains("dt") && j.contains("cfl_fraction"))
    fail("keys \"dt\" and \"cfl_fraction\" are contradictory; give exactly one");
  if (j.contains("allow_unstable")) {
    if (!j.at("allow_unstable").is_boolean()) fail("key \"allow_unstable\" must be a boolean");
    c.allow_unstable = j.at("allow_unstable").get<bool>();
  }
  if (j.contains("dt")) {
    c.dt = num(j, "dt");
    if (!(*c.dt > 0.0)) fail("key \"dt\" must be positive");
  } else {
    c.cfl_fraction = j.contains("cfl_fraction") ? num(j, "cfl_fraction") : 0.4;
    if (!(*c.cfl_fraction > 0.0)) fail("key \"cfl_fraction\" must be positive");
    if (*c.cfl_fraction > 0.5 && !c.allow_unstable)
      fail("key \"cfl_fraction\" exceeds the stability bound 1/2 (set allow_unstable to override)");
  }

  if (!j.contains("n_steps")) fail("key \"n_steps\" is required");
  c.n_steps = integer(j, "n_steps");
  if (c.n_steps < 1) fail("key \"n_steps\" must be at least 1");

  if (j.contains("boundary")) c.boundary = parse_boundary(str(j, "boundary"));

  if (!j.contains("coupling")) fail("key \"coupling\" is required");
  const auto& cj = j.at("coupling");
  if (cj.is_array()) {
    if (cj.empty()) fail("key \"coupling\" must not be an empty array");
    for (const auto& e : cj) c.couplings.push_back(coupling_from_json(e));
  } else {
    c.couplings.push_back(coupling_from_json(cj));
  }

  if (j.contains("initial")) c.initial = str(j, "initial");
  initial_library(c.initial);  // validates the name

  if (j.contains("audit_every")) {
    c.audit_every = integer(j, "audit_every");
    if (c.audit_every < 0) fail("key \"audit_every\" must be nonnegative");
  }
  if (j.contains("summation")) c.summation = parse_summation(str(j, "summation"));
  if (j.contains("out_dir")) c.out_dir = str(j, "out_dir");

  // Surface an out-of-range time step now rather than at run time.
  const double nu = std::max(c.D_minus, c.D_plus) * c.resolved_dt() / (c.dx() * c.dx());
  if (nu > 0.5 && !c.allow_unstable)
    fail("time step violates the CFL bound (nu = " + std::to_string(nu) +
         " > 1/2; set allow_unstable to override)");
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file \"" + path + "\"");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    fail("invalid JSON in \"" + path + "\": " + e.what());
  }
  return parse_config(j);
}

json to_json(const RunConfig& c) {
  json j;
  j["kind"] = c.kind == GridKind::Nodal ? "nodal" : "fv";
  j["D_minus"] = c.D_minus;
  j["D_plus"] = c.D_plus;
  j["m"] = c.m;
  if (c.dt) j["dt"] = *c.dt;
  if (c.cfl_fraction) j["cfl_fraction"] = *c.cfl_fraction;
  j["n_steps"] = c.n_steps;
  if (c.boundary)
    j["boundary"] = *c.boundary == BoundaryKind::CentralGhost ? "central" : "one_sided";
  json cj = json::array();
  for (const auto& cp : c.couplings) cj.push_back(coupling_to_json(cp));
  j["coupling"] = std::move(cj);
  j["initial"] = c.initial;
  j["audit_every"] = c.audit_every;
  j["summation"] = c.summation == SummationMode::Sequential ? "sequential" : "compensated";
  if (!c.out_dir.empty()) j["out_dir"] = c.out_dir;
  if (c.allow_unstable) j["allow_unstable"] = true;
  return j;
}

}  // namespace bicouple
