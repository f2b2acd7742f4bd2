#ifndef BICOUPLE_FLUXES_HPP
#define BICOUPLE_FLUXES_HPP

#include <string>

namespace bicouple {

// Interface flux functions. Sign convention throughout: the coupling relations
// read D du/dx = D dv/dx = -J(u,v), so a positive J moves mass from the right
// sub-domain into the left one when inserted into the interface updates.

// Guard below which the channel flux denominator counts as degenerate.
inline constexpr double kChannelDenominatorGuard = 1e-30;

// J_heat(u,v) = H*(u - v). H may be negative (active transport along the gradient).
double heat_flux(double u, double v, double H);

// J_gen(u,v) = -H*(theta*v - u); theta = 1 reduces to heat_flux bit for bit.
double general_flux(double u, double v, double H, double theta);

// J_ch(u,v) = psi*(u - alpha*v)/(beta + gamma*u + delta*v).
// Throws std::domain_error when |denominator| < eps_den.
double channel_flux(double u, double v, double psi, double alpha, double beta,
                    double gamma, double delta, double eps_den = kChannelDenominatorGuard);

// J_pump(u,v) = P_l*(u - v) - P_p*v^2/(K_d^2 + v^2).
// Throws std::domain_error when K_d = 0 and v = 0 (singular pump term).
double membrane_flux(double u, double v, double P_l, double P_p, double K_d);

enum class CouplingKind {
  DirichletNeumann,
  GilesInconsistent,
  GilesCorrect,
  HeatFlux,
  GeneralFlux,
  ChannelFlux,
  MembraneFlux,
};

// Discretization of the interface Neumann relations for the flux couplings:
// central differences (conservative on the nodal mesh) or one-sided
// differences (conservative on the finite-volume mesh).
enum class FluxDiscretization { Central, OneSided };

// Tagged choice of coupling condition plus every parameter any tag can need.
struct CouplingSpec {
  CouplingKind kind = CouplingKind::DirichletNeumann;
  FluxDiscretization discretization = FluxDiscretization::Central;

  double r = 1.0;  // Giles mesh/capacity ratio; 1 on our uniform grids

  double H = 1.0;      // heat / general transfer coefficient
  double theta = 1.0;  // general partition coefficient

  double psi = 0.0, alpha = 0.0, beta = 0.0, gamma = 0.0, delta = 0.0;  // channel
  double P_l = 0.0, P_p = 0.0, K_d = 1.0;                               // membrane
  double eps_den = kChannelDenominatorGuard;

  static CouplingSpec dirichlet_neumann();
  static CouplingSpec giles(double r = 1.0);
  static CouplingSpec giles_correct(double r = 1.0);
  static CouplingSpec heat(double H, FluxDiscretization d = FluxDiscretization::Central);
  static CouplingSpec general(double H, double theta,
                              FluxDiscretization d = FluxDiscretization::Central);
  static CouplingSpec channel(double psi, double alpha, double beta, double gamma,
                              double delta, FluxDiscretization d = FluxDiscretization::Central);
  static CouplingSpec membrane(double P_l, double P_p, double K_d,
                               FluxDiscretization d = FluxDiscretization::Central);

  // True for the J-based couplings (heat/general/channel/membrane).
  bool is_flux_coupling() const;

  // Evaluates J at the interface pair; only valid for flux couplings.
  double eval(double u, double v) const;

  // Short identifier used in file names and check labels, e.g. "heat_central_H1".
  std::string label() const;

  friend bool operator==(const CouplingSpec&, const CouplingSpec&) = default;
};

}  // namespace bicouple

#endif
