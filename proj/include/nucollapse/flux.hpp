#pragma once

#include "nucollapse/oscillation.hpp"

namespace nucollapse {

// Relative flavor fluxes; only ratios are observable, so unnormalized
// triples are admitted and normalized on comparison.
struct FlavorFlux {
  double phi_e = 0.0;
  double phi_mu = 0.0;
  double phi_tau = 0.0;

  void validate() const;  // components >= 0
  double total() const { return phi_e + phi_mu + phi_tau; }
  FlavorFlux normalized() const;  // throws on zero total
};

// pion decay chain source ratio 1/3 : 2/3 : 0
FlavorFlux pion_chain_source();

// phi_D[beta] = sum_alpha P[alpha][beta] * phi_S[alpha];
// rejects matrices whose rows do not sum to 1 within 1e-8
FlavorFlux detector_flux(const ProbabilityMatrix& p, const FlavorFlux& source);

// max componentwise |a_norm - b_norm| over normalized fluxes
double ratio_deviation(const FlavorFlux& a, const FlavorFlux& b);

}  // namespace nucollapse
