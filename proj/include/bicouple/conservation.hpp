#ifndef BICOUPLE_CONSERVATION_HPP
#define BICOUPLE_CONSERVATION_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bicouple/grid.hpp"

namespace bicouple {

enum class SummationMode { Sequential, Compensated };

double sum_sequential(std::span<const double> xs);
// Neumaier-compensated summation; separates audit rounding from scheme drift.
double sum_compensated(std::span<const double> xs);

// Discrete total concentration of a nodal state,
//   C = u_0/2 + u_1 + ... + u_{m-1} + u_m/2 + v_m/2 + v_{m+1} + ... + v_{N-1} + v_N/2.
// The weights sum to N, so the all-ones state gives C = N exactly.
double mass_nodal(const BiDomainState& state, SummationMode mode = SummationMode::Sequential);

// Plain cell sum C = u_1 + ... + u_m + v_{m+1} + ... + v_N of a finite-volume state.
double mass_fv(const BiDomainState& state, SummationMode mode = SummationMode::Sequential);

// Kind-checked dispatcher; throws std::invalid_argument on a layout mismatch.
double mass(const Grid& grid, const BiDomainState& state,
            SummationMode mode = SummationMode::Sequential);

// Time series of the discrete total concentration C_n. The scaled total
// concentration is cbar(i) = dx * C_i; drifts are reported in cbar units.
struct MassLedger {
  struct Entry {
    long step = 0;
    double t = 0.0;
    double C = 0.0;
  };
  std::vector<Entry> entries;
  SummationMode mode = SummationMode::Sequential;
  double dx = 0.0;

  double cbar(std::size_t i) const { return dx * entries[i].C; }
};

struct DriftReport {
  std::vector<double> interval_drifts;  // cbar(i+1) - cbar(i) between recorded entries
  double final_abs_drift = 0.0;         // |cbar(last) - cbar(0)|
};

// Throws std::invalid_argument with fewer than two entries.
DriftReport drift(const MassLedger& ledger);

// Separated-variables solution of w_t = D w_xx on [0,1] with homogeneous
// Neumann data: w_n(x,t) = exp(-D (n pi)^2 t) cos(n pi x) + 1.
struct ExactSolution {
  int n = 1;
  double D = 1.0;
};

double exact_eval(const ExactSolution& sol, double x, double t);

// Named initial data with closed-form antiderivatives and exact total mass.
struct InitialData {
  std::string name;
  ScalarFunc f_left, f_right;
  ScalarFunc F_left, F_right;  // antiderivatives (exact cell averages, oracles)
  double exact_mass = 0.0;
};

// Known names: "cosine" (cos(pi x)+1, mass 1), "piecewise" (1 | 0.06, mass
// 0.53), "sqrt" (100 sqrt(x(1-x)) on both halves, mass 100 pi/8).
// Throws std::invalid_argument for an unknown name.
InitialData initial_library(std::string_view name);

struct ErrorMetrics {
  double max_err = 0.0;
  double l2_err = 0.0;  // sqrt(dx * sum of squared nodal/cell errors)
};

// Pointwise comparison against exact_eval at the state's coordinates, at time
// state.t. Meaningful for single-domain-equivalent runs (D_- = D_+ = sol.D).
ErrorMetrics error_metrics(const Grid& grid, const BiDomainState& state,
                           const ExactSolution& sol);

}  // namespace bicouple

#endif
