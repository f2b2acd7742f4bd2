#ifndef BICOUPLE_STEPPER_HPP
#define BICOUPLE_STEPPER_HPP

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bicouple/conservation.hpp"
#include "bicouple/fluxes.hpp"
#include "bicouple/grid.hpp"

namespace bicouple {

// Largest stable time step of the explicit scheme, dx^2 / (2 max(D-, D+)).
double cfl_max_dt(double D_minus, double D_plus, double dx);

// Time step with a safety margin towards the stability bound,
// dt = fraction * dx^2 / max(D-, D+); fraction defaults to 0.4.
double cfl_safety_dt(double D_minus, double D_plus, double dx, double fraction = 0.4);

// One FTCS update of an interior node: c + nu*(r - c) - nu*(c - l).
// For nu <= 1/2 this is a convex combination of its inputs.
inline double interior_step(double left, double center, double right, double nu) {
  return center + nu * (right - center) - nu * (center - left);
}

enum class Side { Left, Right };

// Homogeneous Neumann boundary via a central-difference ghost value; the
// eliminated ghost doubles the one-sided increment.
inline double boundary_step_central(double boundary, double neighbor, double nu, Side side) {
  if (side == Side::Left) return boundary + 2.0 * nu * (neighbor - boundary);
  return boundary - 2.0 * nu * (boundary - neighbor);
}

// Homogeneous Neumann boundary via a one-sided ghost value.
inline double boundary_step_onesided(double boundary, double neighbor, double nu, Side side) {
  if (side == Side::Left) return boundary + nu * (neighbor - boundary);
  return boundary - nu * (boundary - neighbor);
}

// Dirichlet-Neumann interface update for the nodal double node. The Neumann
// relation determines u_m, the Dirichlet relation copies it into v_m; the
// stored v_m never enters (it is projected onto u_m from step 0 on).
inline std::pair<double, double> couple_dirichlet_neumann(double u_m1, double u_m,
                                                          double v_p1, double nu_minus,
                                                          double nu_plus) {
  const double un = u_m + nu_plus * (v_p1 - u_m) - nu_minus * (u_m - u_m1);
  return {un, un};
}

// Giles's interface update with the spurious factors of 2; loses conservation.
inline std::pair<double, double> couple_giles_inconsistent(double u_m1, double u_m,
                                                           double v_p1, double nu_minus,
                                                           double nu_plus, double r = 1.0) {
  const double un =
      u_m + 2.0 * r * nu_plus * (v_p1 - u_m) - 2.0 * nu_minus * (u_m - u_m1);
  return {un, un};
}

// Giles's corrected interface update; r = 1 reproduces couple_dirichlet_neumann
// exactly. r != 1 targets unequal mesh sizes and is exposed as experimental.
inline std::pair<double, double> couple_giles_correct(double u_m1, double u_m, double v_p1,
                                                      double nu_minus, double nu_plus,
                                                      double r = 1.0) {
  if (!(r > 0.0)) throw std::invalid_argument("couple_giles_correct: invalid ratio");
  const double cp = 2.0 * r * nu_plus / (1.0 + r);
  const double cm = 2.0 * nu_minus / (1.0 + r);
  const double un = u_m + cp * (v_p1 - u_m) - cm * (u_m - u_m1);
  return {un, un};
}

// Flux coupling from one-sided interface differences. Non-conservative on the
// nodal mesh; on the finite-volume mesh the same formulas are central with
// respect to the interface face and conservative (pass v_m := v_{m+1},
// v_p1 := v_{m+2} there).
inline std::pair<double, double> couple_flux_onesided(double u_m1, double u_m, double v_m,
                                                      double v_p1, double nu_minus,
                                                      double nu_plus, double dt_over_dx,
                                                      double J) {
  const double jterm = dt_over_dx * J;
  const double un = u_m - nu_minus * (u_m - u_m1) - jterm;
  const double vn = v_m + nu_plus * (v_p1 - v_m) + jterm;
  return {un, vn};
}

// Flux coupling from central interface differences; the eliminated ghosts
// introduce factors of 2. Conservative on the nodal mesh (half-cell weights).
inline std::pair<double, double> couple_flux_central(double u_m1, double u_m, double v_m,
                                                     double v_p1, double nu_minus,
                                                     double nu_plus, double dt_over_dx,
                                                     double J) {
  const double jterm = 2.0 * dt_over_dx * J;
  const double un = u_m - 2.0 * nu_minus * (u_m - u_m1) - jterm;
  const double vn = v_m + 2.0 * nu_plus * (v_p1 - v_m) + jterm;
  return {un, vn};
}

// Finite-volume Dirichlet-Neumann coupling of the last left cell u_m and first
// right cell v_{m+1}; both one-sided differences are central with respect to
// the interface face. The v-update's left flux carries nu_plus and u_m.
inline std::pair<double, double> couple_fv_dirichlet_neumann(double u_m1, double u_m,
                                                             double v_p1, double v_p2,
                                                             double nu_minus,
                                                             double nu_plus) {
  const double un = u_m + nu_plus * (v_p1 - u_m) - nu_minus * (u_m - u_m1);
  const double vn = v_p1 + nu_plus * (v_p2 - v_p1) - nu_plus * (v_p1 - u_m);
  return {un, vn};
}

enum class BoundaryKind { CentralGhost, OneSidedGhost };

// The conservative outer-boundary treatment for each layout.
inline BoundaryKind default_boundary(GridKind kind) {
  return kind == GridKind::Nodal ? BoundaryKind::CentralGhost : BoundaryKind::OneSidedGhost;
}

struct SchemeConfig {
  Grid grid;
  double D_minus = 1.0;
  double D_plus = 1.0;
  double dt = 0.0;
  BoundaryKind boundary = BoundaryKind::CentralGhost;
  CouplingSpec coupling;
  bool allow_unstable = false;  // reproduce instability phenomenology only

  GridKind kind() const { return grid.kind; }
  double nu_minus() const { return D_minus * dt / (grid.dx() * grid.dx()); }
  double nu_plus() const { return D_plus * dt / (grid.dx() * grid.dx()); }
  double dt_over_dx() const { return dt / grid.dx(); }
};

// Config with the layout-appropriate default boundary treatment.
SchemeConfig make_config(const Grid& grid, double D_minus, double D_plus, double dt,
                         const CouplingSpec& coupling);

// Throws std::invalid_argument on nonpositive physics, a CFL violation without
// the override, or a coupling/grid-kind mismatch (central flux coupling or
// Giles-correct on the finite-volume layout).
void validate(const SchemeConfig& config);

// One full time step of `in` into `out` (distinct, matching layouts): interior
// FTCS updates, the configured outer boundary, the configured coupling.
void advance_into(const BiDomainState& in, const SchemeConfig& config, BiDomainState& out);

// Allocating wrapper; the input state is never modified.
BiDomainState advance(const BiDomainState& state, const SchemeConfig& config);

struct StepReport {
  long step = 0;
  double t = 0.0;
  std::optional<double> drift;  // C_{n} - C_{previous entry}, unscaled
};

struct RunResult {
  BiDomainState final_state;
  MassLedger ledger;
  std::vector<BiDomainState> snapshots;  // recorded every snapshot_every steps

  std::vector<StepReport> step_reports() const;
};

// Repeated advance with a mass audit. Records C into the ledger at step 0, at
// every audit_every-th step (0 = endpoints only), and at n_steps. Throws
// std::runtime_error "solution blow-up" when an audited total turns NaN/Inf.
RunResult run(const BiDomainState& initial, const SchemeConfig& config, long n_steps,
              long audit_every, SummationMode mode = SummationMode::Sequential,
              long snapshot_every = 0);

}  // namespace bicouple

#endif
