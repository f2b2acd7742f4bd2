#include "bicouple/stepper.hpp"

#include <cmath>
#include <string>

namespace bicouple {

double cfl_max_dt(double D_minus, double D_plus, double dx) {
  if (!(D_minus > 0.0) || !(D_plus > 0.0) || !(dx > 0.0))
    throw std::invalid_argument("cfl_max_dt: invalid physical parameters");
  return dx * dx / (2.0 * std::max(D_minus, D_plus));
}

double cfl_safety_dt(double D_minus, double D_plus, double dx, double fraction) {
  if (!(D_minus > 0.0) || !(D_plus > 0.0) || !(dx > 0.0) || !(fraction > 0.0))
    throw std::invalid_argument("cfl_safety_dt: invalid physical parameters");
  return fraction * dx * dx / std::max(D_minus, D_plus);
}

SchemeConfig make_config(const Grid& grid, double D_minus, double D_plus, double dt,
                         const CouplingSpec& coupling) {
  SchemeConfig c;
  c.grid = grid;
  c.D_minus = D_minus;
  c.D_plus = D_plus;
  c.dt = dt;
  c.boundary = default_boundary(grid.kind);
  c.coupling = coupling;
  return c;
}

void validate(const SchemeConfig& config) {
  if (!(config.D_minus > 0.0) || !(config.D_plus > 0.0) || !(config.dt > 0.0))
    throw std::invalid_argument("scheme config: invalid physical parameters");
  if (config.grid.m < 2)
    throw std::invalid_argument("scheme config: mesh too coarse for stencil");
  if (config.kind() == GridKind::FiniteVolume) {
    if (config.coupling.is_flux_coupling() &&
        config.coupling.discretization == FluxDiscretization::Central)
      throw std::invalid_argument(
          "scheme config: incompatible configuration (central flux coupling on finite-volume layout)");
    if (config.coupling.kind == CouplingKind::GilesCorrect)
      throw std::invalid_argument(
          "scheme config: incompatible configuration (Giles-correct coupling is nodal-only)");
  }
  if (config.coupling.kind == CouplingKind::GilesCorrect && !(config.coupling.r > 0.0))
    throw std::invalid_argument("scheme config: invalid ratio");
  const double nu = std::max(config.nu_minus(), config.nu_plus());
  if (nu > 0.5 && !config.allow_unstable)
    throw std::invalid_argument("scheme config: CFL violated (nu = " + std::to_string(nu) +
                                " > 1/2)");
}

namespace {

void advance_nodal(const BiDomainState& in, const SchemeConfig& cfg, BiDomainState& out) {
  const int m = cfg.grid.m;
  const double num = cfg.nu_minus(), nup = cfg.nu_plus(), dtdx = cfg.dt_over_dx();
  const double* u = in.u.data();
  const double* v = in.v.data();
  double* un = out.u.data();
  double* vn = out.v.data();

  un[0] = cfg.boundary == BoundaryKind::CentralGhost
              ? boundary_step_central(u[0], u[1], num, Side::Left)
              : boundary_step_onesided(u[0], u[1], num, Side::Left);
  for (int j = 1; j < m; ++j) un[j] = interior_step(u[j - 1], u[j], u[j + 1], num);
  for (int j = 1; j < m; ++j) vn[j] = interior_step(v[j - 1], v[j], v[j + 1], nup);
  vn[m] = cfg.boundary == BoundaryKind::CentralGhost
              ? boundary_step_central(v[m], v[m - 1], nup, Side::Right)
              : boundary_step_onesided(v[m], v[m - 1], nup, Side::Right);

  // v[0] is v_m, v[1] is v_{m+1}.
  const CouplingSpec& cp = cfg.coupling;
  std::pair<double, double> iv;
  switch (cp.kind) {
    case CouplingKind::DirichletNeumann:
      iv = couple_dirichlet_neumann(u[m - 1], u[m], v[1], num, nup);
      break;
    case CouplingKind::GilesInconsistent:
      iv = couple_giles_inconsistent(u[m - 1], u[m], v[1], num, nup, cp.r);
      break;
    case CouplingKind::GilesCorrect:
      iv = couple_giles_correct(u[m - 1], u[m], v[1], num, nup, cp.r);
      break;
    default: {
      const double J = cp.eval(u[m], v[0]);
      iv = cp.discretization == FluxDiscretization::Central
               ? couple_flux_central(u[m - 1], u[m], v[0], v[1], num, nup, dtdx, J)
               : couple_flux_onesided(u[m - 1], u[m], v[0], v[1], num, nup, dtdx, J);
    }
  }
  un[m] = iv.first;
  vn[0] = iv.second;
}

void advance_fv(const BiDomainState& in, const SchemeConfig& cfg, BiDomainState& out) {
  const int m = cfg.grid.m;
  const double num = cfg.nu_minus(), nup = cfg.nu_plus(), dtdx = cfg.dt_over_dx();
  const double* u = in.u.data();  // u[0..m-1] = u_1..u_m
  const double* v = in.v.data();  // v[0..m-1] = v_{m+1}..v_N
  double* un = out.u.data();
  double* vn = out.v.data();

  un[0] = cfg.boundary == BoundaryKind::OneSidedGhost
              ? boundary_step_onesided(u[0], u[1], num, Side::Left)
              : boundary_step_central(u[0], u[1], num, Side::Left);
  for (int j = 1; j < m - 1; ++j) un[j] = interior_step(u[j - 1], u[j], u[j + 1], num);
  for (int j = 1; j < m - 1; ++j) vn[j] = interior_step(v[j - 1], v[j], v[j + 1], nup);
  vn[m - 1] = cfg.boundary == BoundaryKind::OneSidedGhost
                  ? boundary_step_onesided(v[m - 1], v[m - 2], nup, Side::Right)
                  : boundary_step_central(v[m - 1], v[m - 2], nup, Side::Right);

  // The interface pair is (u_m, v_{m+1}) = (u[m-1], v[0]); v[1] is v_{m+2}.
  const CouplingSpec& cp = cfg.coupling;
  std::pair<double, double> iv;
  switch (cp.kind) {
    case CouplingKind::DirichletNeumann:
      iv = couple_fv_dirichlet_neumann(u[m - 2], u[m - 1], v[0], v[1], num, nup);
      break;
    case CouplingKind::GilesInconsistent:
      // Giles's factor-2 update for the left interface cell; the right cell
      // keeps its conservative flux form.
      iv = {couple_giles_inconsistent(u[m - 2], u[m - 1], v[0], num, nup, cp.r).first,
            v[0] + nup * (v[1] - v[0]) - nup * (v[0] - u[m - 1])};
      break;
    default: {
      const double J = cp.eval(u[m - 1], v[0]);
      iv = couple_flux_onesided(u[m - 2], u[m - 1], v[0], v[1], num, nup, dtdx, J);
    }
  }
  un[m - 1] = iv.first;
  vn[0] = iv.second;
}

}  // namespace

void advance_into(const BiDomainState& in, const SchemeConfig& config, BiDomainState& out) {
  validate(config);
  if (!state_matches(config.grid, in) || !state_matches(config.grid, out))
    throw std::invalid_argument("advance: state layout does not match grid");
  if (&in == &out)
    throw std::invalid_argument("advance: in-place update would corrupt the stencil");
  if (config.kind() == GridKind::Nodal)
    advance_nodal(in, config, out);
  else
    advance_fv(in, config, out);
  out.t = in.t + config.dt;
}

BiDomainState advance(const BiDomainState& state, const SchemeConfig& config) {
  BiDomainState out = make_state(config.grid);
  advance_into(state, config, out);
  return out;
}

std::vector<StepReport> RunResult::step_reports() const {
  std::vector<StepReport> reports;
  reports.reserve(ledger.entries.size());
  for (std::size_t i = 0; i < ledger.entries.size(); ++i) {
    StepReport r{ledger.entries[i].step, ledger.entries[i].t, std::nullopt};
    if (i > 0) r.drift = ledger.entries[i].C - ledger.entries[i - 1].C;
    reports.push_back(r);
  }
  return reports;
}

RunResult run(const BiDomainState& initial, const SchemeConfig& config, long n_steps,
              long audit_every, SummationMode mode, long snapshot_every) {
  validate(config);
  if (n_steps < 1) throw std::invalid_argument("run: n_steps must be >= 1");
  if (!state_matches(config.grid, initial))
    throw std::invalid_argument("run: state layout does not match grid");

  RunResult res;
  res.ledger.mode = mode;
  res.ledger.dx = config.grid.dx();

  BiDomainState a = initial;
  BiDomainState b = make_state(config.grid);

  auto audit = [&](long step, const BiDomainState& s) {
    const double C = mass(config.grid, s, mode);
    if (!std::isfinite(C))
      throw std::runtime_error("run: solution blow-up at step " + std::to_string(step));
    res.ledger.entries.push_back({step, s.t, C});
  };

  audit(0, a);
  if (snapshot_every > 0) res.snapshots.push_back(a);
  for (long n = 1; n <= n_steps; ++n) {
    advance_into(a, config, b);
    std::swap(a, b);
    if ((audit_every > 0 && n % audit_every == 0) || n == n_steps) audit(n, a);
    if (snapshot_every > 0 && (n % snapshot_every == 0 || n == n_steps))
      res.snapshots.push_back(a);
  }
  res.final_state = std::move(a);
  return res;
}

}  // namespace bicouple
