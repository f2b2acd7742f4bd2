#include "bicouple/conservation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bicouple {

double sum_sequential(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s;
}

double sum_compensated(std::span<const double> xs) {
  double s = 0.0, comp = 0.0;
  for (double x : xs) {
    const double t = s + x;
    if (std::fabs(s) >= std::fabs(x))
      comp += (s - t) + x;
    else
      comp += (x - t) + s;
    s = t;
  }
  return s + comp;
}

namespace {

// Streaming accumulator so the mass sums need no scratch vector.
struct Accum {
  SummationMode mode;
  double s = 0.0, comp = 0.0;
  void add(double x) {
    if (mode == SummationMode::Sequential) {
      s += x;
      return;
    }
    const double t = s + x;
    if (std::fabs(s) >= std::fabs(x))
      comp += (s - t) + x;
    else
      comp += (x - t) + s;
    s = t;
  }
  double value() const { return mode == SummationMode::Sequential ? s : s + comp; }
};

}  // namespace

double mass_nodal(const BiDomainState& state, SummationMode mode) {
  if (state.u.size() != state.v.size() || state.u.size() < 2)
    throw std::invalid_argument("mass_nodal: state does not have a nodal layout");
  const std::size_t m = state.u.size() - 1;
  Accum a{mode};
  a.add(0.5 * state.u[0]);
  for (std::size_t j = 1; j < m; ++j) a.add(state.u[j]);
  a.add(0.5 * state.u[m]);
  a.add(0.5 * state.v[0]);
  for (std::size_t j = 1; j < m; ++j) a.add(state.v[j]);
  a.add(0.5 * state.v[m]);
  return a.value();
}

double mass_fv(const BiDomainState& state, SummationMode mode) {
  if (state.u.empty() || state.u.size() != state.v.size())
    throw std::invalid_argument("mass_fv: state does not have a finite-volume layout");
  Accum a{mode};
  for (double x : state.u) a.add(x);
  for (double x : state.v) a.add(x);
  return a.value();
}

double mass(const Grid& grid, const BiDomainState& state, SummationMode mode) {
  if (!state_matches(grid, state))
    throw std::invalid_argument("mass: state layout does not match grid");
  return grid.kind == GridKind::Nodal ? mass_nodal(state, mode) : mass_fv(state, mode);
}

DriftReport drift(const MassLedger& ledger) {
  if (ledger.entries.size() < 2)
    throw std::invalid_argument("drift: ledger needs at least two entries");
  DriftReport r;
  r.interval_drifts.reserve(ledger.entries.size() - 1);
  for (std::size_t i = 1; i < ledger.entries.size(); ++i)
    r.interval_drifts.push_back(ledger.cbar(i) - ledger.cbar(i - 1));
  r.final_abs_drift = std::fabs(ledger.cbar(ledger.entries.size() - 1) - ledger.cbar(0));
  return r;
}

double exact_eval(const ExactSolution& sol, double x, double t) {
  const double k = sol.n * std::numbers::pi;
  return std::exp(-sol.D * k * k * t) * std::cos(k * x) + 1.0;
}

InitialData initial_library(std::string_view name) {
  using std::numbers::pi;
  if (name == "cosine") {
    auto f = [](double x) { return std::cos(pi * x) + 1.0; };
    auto F = [](double x) { return std::sin(pi * x) / pi + x; };
    return InitialData{"cosine", f, f, F, F, 1.0};
  }
  if (name == "piecewise") {
    return InitialData{"piecewise",
                       [](double) { return 1.0; },
                       [](double) { return 0.06; },
                       [](double x) { return x; },
                       [](double x) { return 0.06 * x; },
                       0.53};
  }
  if (name == "sqrt") {
    auto f = [](double x) { return 100.0 * std::sqrt(x * (1.0 - x)); };
    auto F = [](double x) {
      return 100.0 * ((2.0 * x - 1.0) * std::sqrt(x * (1.0 - x)) / 4.0 +
                      std::asin(2.0 * x - 1.0) / 8.0);
    };
    return InitialData{"sqrt", f, f, F, F, 100.0 * pi / 8.0};
  }
  throw std::invalid_argument("initial_library: unknown initial data \"" + std::string(name) + "\"");
}

ErrorMetrics error_metrics(const Grid& grid, const BiDomainState& state,
                           const ExactSolution& sol) {
  if (!state_matches(grid, state))
    throw std::invalid_argument("error_metrics: state layout does not match grid");
  ErrorMetrics em;
  double sq = 0.0;
  auto visit = [&](double x, double value) {
    const double e = std::fabs(value - exact_eval(sol, x, state.t));
    if (e > em.max_err) em.max_err = e;
    sq += e * e;
  };
  const int m = grid.m;
  if (grid.kind == GridKind::Nodal) {
    for (int j = 0; j <= m; ++j) visit(grid.node_coord(j), state.u[j]);
    for (int j = 0; j <= m; ++j) visit(grid.node_coord(m + j), state.v[j]);
  } else {
    for (int j = 0; j < m; ++j) visit(grid.cell_center(j + 1), state.u[j]);
    for (int j = 0; j < m; ++j) visit(grid.cell_center(m + 1 + j), state.v[j]);
  }
  em.l2_err = std::sqrt(grid.dx() * sq);
  return em;
}

}  // namespace bicouple
