#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bicouple/conservation.hpp"
#include "bicouple/stepper.hpp"

using namespace bicouple;
using std::numbers::pi;

TEST_CASE("mass_nodal applies the half weights at boundaries and the double node") {
  BiDomainState s;
  s.u = {1.0, 2.0};
  s.v = {4.0, 3.0};
  CHECK(mass_nodal(s) == 5.0);  // 0.5*1 + 0.5*2 + 0.5*4 + 0.5*3
}

TEST_CASE("nodal weights sum to N (all-ones state)") {
  for (int m : {2, 3, 17}) {
    Grid g = build_grid(m, GridKind::Nodal);
    BiDomainState s = discretize_initial(g, [](double) { return 1.0; }, [](double) { return 1.0; });
    CHECK(mass(g, s) == static_cast<double>(g.n_total()));
    CHECK(g.dx() * mass(g, s) == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("mass_fv is the plain cell sum") {
  BiDomainState s;
  s.u = {1.5};
  s.v = {2.25};
  CHECK(mass_fv(s) == 3.75);
  Grid g = build_grid(4, GridKind::FiniteVolume);
  BiDomainState ones = discretize_initial(g, [](double) { return 1.0; }, [](double) { return 1.0; });
  CHECK(mass(g, ones) == 8.0);
}

TEST_CASE("mass dispatcher rejects a layout mismatch") {
  Grid nodal = build_grid(4, GridKind::Nodal);
  Grid fv = build_grid(4, GridKind::FiniteVolume);
  BiDomainState s = make_state(fv);
  CHECK_THROWS_AS(mass(nodal, s), std::invalid_argument);
  CHECK_NOTHROW(mass(fv, s));
}

TEST_CASE("cosine initial total concentration at dx=1e-4 matches the reference") {
  Grid g = build_grid(5000, GridKind::Nodal);
  InitialData data = initial_library("cosine");
  BiDomainState s = discretize_initial(g, data.f_left, data.f_right);
  const double cbar = g.dx() * mass(g, s);
  CHECK(std::fabs(cbar - 1.000000000000001) <= 1e-14);
}

TEST_CASE("piecewise initial total concentration on the fine FV mesh") {
  Grid g = build_grid(50000, GridKind::FiniteVolume);
  InitialData data = initial_library("piecewise");
  BiDomainState s = discretize_initial(g, data.f_left, data.f_right);
  // 0.5300000000000005 in the reference; summation order shifts the last digits
  CHECK(std::fabs(g.dx() * mass(g, s) - 0.53) <= 3e-12);
  CHECK(std::fabs(g.dx() * mass(g, s, SummationMode::Compensated) - 0.53) <= 1e-15);
}

TEST_CASE("compensated summation fixes catastrophic term ordering") {
  const double xs[] = {1.0, 1e100, 1.0, -1e100};
  CHECK(sum_sequential(xs) == 0.0);
  CHECK(sum_compensated(xs) == 2.0);
}

TEST_CASE("exact separation-of-variables solution") {
  ExactSolution sol{1, 0.7};
  CHECK(exact_eval(sol, 0.5, 13.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(exact_eval(sol, 0.0, 0.25) ==
        doctest::Approx(std::exp(-0.7 * pi * pi * 0.25) + 1.0).epsilon(1e-15));
  CHECK(exact_eval(sol, 0.33, 1e9) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("initial data library") {
  CHECK(initial_library("cosine").exact_mass == 1.0);
  CHECK(initial_library("piecewise").exact_mass == 0.53);
  CHECK(initial_library("sqrt").exact_mass == doctest::Approx(39.269908169872415).epsilon(1e-16));
  CHECK_THROWS_AS(initial_library("nope"), std::invalid_argument);

  // antiderivatives differentiate back to the data (central difference oracle)
  for (const char* name : {"cosine", "sqrt"}) {
    InitialData d = initial_library(name);
    for (double x : {0.21, 0.43, 0.77}) {
      const double h = 1e-6;
      const double fd = (d.F_left(x + h) - d.F_left(x - h)) / (2 * h);
      CHECK(fd == doctest::Approx(d.f_left(x)).epsilon(1e-7));
    }
    CHECK(d.F_right(1.0) - d.F_left(0.0) == doctest::Approx(d.exact_mass).epsilon(1e-14));
  }
}

TEST_CASE("error metrics against the exact solution") {
  const double D = 0.4;
  Grid g = build_grid(20, GridKind::Nodal);
  ExactSolution sol{1, D};
  const double t = 0.05;
  BiDomainState s = discretize_initial(
      g, [&](double x) { return exact_eval(sol, x, t); },
      [&](double x) { return exact_eval(sol, x, t); });
  s.t = t;
  ErrorMetrics em = error_metrics(g, s, sol);
  CHECK(em.max_err <= 1e-15);
  CHECK(em.l2_err <= 1e-15);

  // a constant-one state vs the n=1 solution is bounded by the decayed amplitude
  BiDomainState flat = discretize_initial(g, [](double) { return 1.0; }, [](double) { return 1.0; });
  flat.t = 2.0;
  CHECK(error_metrics(g, flat, sol).max_err <= std::exp(-D * pi * pi * 2.0) * (1 + 1e-12));
}

TEST_CASE("interior convergence is second order against the exact solution") {
  // Halving dx (with dt proportional to dx^2) divides the max error by ~4.
  const double D = 1.0, T = 0.08;
  auto max_err = [&](int m) {
    Grid g = build_grid(m, GridKind::Nodal);
    const double dt = cfl_safety_dt(D, D, g.dx());
    const long steps = std::lround(T / dt);
    SchemeConfig cfg = make_config(g, D, D, dt, CouplingSpec::dirichlet_neumann());
    InitialData data = initial_library("cosine");
    RunResult r = run(discretize_initial(g, data.f_left, data.f_right), cfg, steps, 0);
    return error_metrics(g, r.final_state, ExactSolution{1, D}).max_err;
  };
  const double e1 = max_err(10), e2 = max_err(20), e3 = max_err(40);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.075));
  CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.075));
}

TEST_CASE("drift reporting") {
  MassLedger ledger;
  ledger.dx = 0.1;
  ledger.entries = {{0, 0.0, 5.0}, {10, 0.1, 5.0}, {20, 0.2, 5.0}};
  DriftReport r = drift(ledger);
  CHECK(r.final_abs_drift == 0.0);
  REQUIRE(r.interval_drifts.size() == 2);
  CHECK(r.interval_drifts[0] == 0.0);
  CHECK(r.interval_drifts[1] == 0.0);

  ledger.entries.push_back({30, 0.3, 5.5});
  DriftReport r2 = drift(ledger);
  CHECK(r2.final_abs_drift == doctest::Approx(0.05).epsilon(1e-14));

  MassLedger tiny;
  tiny.entries = {{0, 0.0, 1.0}};
  CHECK_THROWS_AS(drift(tiny), std::invalid_argument);
}
