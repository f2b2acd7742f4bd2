#include "bicouple/fluxes.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace bicouple {

double heat_flux(double u, double v, double H) { return H * (u - v); }

double general_flux(double u, double v, double H, double theta) {
  return -H * (theta * v - u);
}

double channel_flux(double u, double v, double psi, double alpha, double beta,
                    double gamma, double delta, double eps_den) {
  const double den = beta + gamma * u + delta * v;
  if (std::fabs(den) < eps_den)
    throw std::domain_error("channel_flux: channel flux denominator degenerate");
  return psi * (u - alpha * v) / den;
}

double membrane_flux(double u, double v, double P_l, double P_p, double K_d) {
  const double den = K_d * K_d + v * v;
  if (den <= 0.0) throw std::domain_error("membrane_flux: membrane flux singular");
  return P_l * (u - v) - P_p * v * v / den;
}

CouplingSpec CouplingSpec::dirichlet_neumann() {
  return CouplingSpec{.kind = CouplingKind::DirichletNeumann};
}

CouplingSpec CouplingSpec::giles(double r) {
  return CouplingSpec{.kind = CouplingKind::GilesInconsistent, .r = r};
}

CouplingSpec CouplingSpec::giles_correct(double r) {
  return CouplingSpec{.kind = CouplingKind::GilesCorrect, .r = r};
}

CouplingSpec CouplingSpec::heat(double H, FluxDiscretization d) {
  return CouplingSpec{.kind = CouplingKind::HeatFlux, .discretization = d, .H = H};
}

CouplingSpec CouplingSpec::general(double H, double theta, FluxDiscretization d) {
  return CouplingSpec{
      .kind = CouplingKind::GeneralFlux, .discretization = d, .H = H, .theta = theta};
}

CouplingSpec CouplingSpec::channel(double psi, double alpha, double beta, double gamma,
                                   double delta, FluxDiscretization d) {
  return CouplingSpec{.kind = CouplingKind::ChannelFlux,
                      .discretization = d,
                      .psi = psi,
                      .alpha = alpha,
                      .beta = beta,
                      .gamma = gamma,
                      .delta = delta};
}

CouplingSpec CouplingSpec::membrane(double P_l, double P_p, double K_d,
                                    FluxDiscretization d) {
  return CouplingSpec{.kind = CouplingKind::MembraneFlux,
                      .discretization = d,
                      .P_l = P_l,
                      .P_p = P_p,
                      .K_d = K_d};
}

bool CouplingSpec::is_flux_coupling() const {
  switch (kind) {
    case CouplingKind::HeatFlux:
    case CouplingKind::GeneralFlux:
    case CouplingKind::ChannelFlux:
    case CouplingKind::MembraneFlux:
      return true;
    default:
      return false;
  }
}

double CouplingSpec::eval(double u, double v) const {
  switch (kind) {
    case CouplingKind::HeatFlux:
      return heat_flux(u, v, H);
    case CouplingKind::GeneralFlux:
      return general_flux(u, v, H, theta);
    case CouplingKind::ChannelFlux:
      return channel_flux(u, v, psi, alpha, beta, gamma, delta, eps_den);
    case CouplingKind::MembraneFlux:
      return membrane_flux(u, v, P_l, P_p, K_d);
    default:
      throw std::logic_error("CouplingSpec::eval: not a flux coupling");
  }
}

namespace {

std::string num_tag(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

}  // namespace

std::string CouplingSpec::label() const {
  const char* side = discretization == FluxDiscretization::Central ? "central" : "onesided";
  switch (kind) {
    case CouplingKind::DirichletNeumann:
      return "dn";
    case CouplingKind::GilesInconsistent:
      return r == 1.0 ? "giles" : "giles_r" + num_tag(r);
    case CouplingKind::GilesCorrect:
      return r == 1.0 ? "giles_correct" : "giles_correct_r" + num_tag(r);
    case CouplingKind::HeatFlux:
      return std::string("heat_") + side + "_H" + num_tag(H);
    case CouplingKind::GeneralFlux:
      return std::string("general_") + side + "_H" + num_tag(H) + "_theta" + num_tag(theta);
    case CouplingKind::ChannelFlux:
      return std::string("channel_") + side + (psi < 0 ? "_neg" : "");
    case CouplingKind::MembraneFlux:
      return std::string("membrane_") + side + (P_l < 0 ? "_neg" : "");
  }
  return "unknown";
}

}  // namespace bicouple
