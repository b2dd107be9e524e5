#include "nucollapse/flux.hpp"

#include <cmath>

namespace nucollapse {

void FlavorFlux::validate() const {
  if (phi_e < 0.0 || phi_mu < 0.0 || phi_tau < 0.0) {
    throw std::invalid_argument("flux components must be non-negative");
  }
}

FlavorFlux FlavorFlux::normalized() const {
  validate();
  const double t = total();
  if (!(t > 0.0)) throw std::invalid_argument("cannot normalize zero-total flux");
  return {phi_e / t, phi_mu / t, phi_tau / t};
}

FlavorFlux pion_chain_source() { return {1.0 / 3.0, 2.0 / 3.0, 0.0}; }

FlavorFlux detector_flux(const ProbabilityMatrix& p, const FlavorFlux& source) {
  source.validate();
  for (int a = 0; a < 3; ++a) {
    const double row = p[a][0] + p[a][1] + p[a][2];
    if (std::abs(row - 1.0) > 1e-8) {
      throw std::invalid_argument("probability matrix is not row-stochastic");
    }
  }
  const double s[3] = {source.phi_e, source.phi_mu, source.phi_tau};
  double d[3] = {0.0, 0.0, 0.0};
  for (int b = 0; b < 3; ++b) {
    for (int a = 0; a < 3; ++a) d[b] += p[a][b] * s[a];
  }
  return {d[0], d[1], d[2]};
}

double ratio_deviation(const FlavorFlux& a, const FlavorFlux& b) {
  const FlavorFlux an = a.normalized();
  const FlavorFlux bn = b.normalized();
  return std::max({std::abs(an.phi_e - bn.phi_e), std::abs(an.phi_mu - bn.phi_mu),
                   std::abs(an.phi_tau - bn.phi_tau)});
}

}  // namespace nucollapse
