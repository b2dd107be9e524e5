#pragma once

#include <array>

#include "nucollapse/flavor.hpp"

namespace nucollapse {

using ProbabilityMatrix = std::array<std::array<double, 3>, 3>;

struct Beam {
  double energy = 0.0;    // eV, > 0
  double baseline = 0.0;  // eV^-1, >= 0
  Flavor source_flavor = Flavor::e;

  void validate() const;
  // model assumes ultra-relativistic propagation, max(m_j)/E < 1e-3
  bool relativistic(const MassSpectrum& spectrum) const;
};

// exact dispersion p = sqrt(E^2 - m^2); throws for m >= E
double momentum(double E, double m);
// second-order approximant E - m^2/(2E)
double momentum_approx(double E, double m);

// L_O = 4*pi*E / dm2
double oscillation_length(double E, double dm2);

// Phi = dm2 * L / (2E)
double quantum_phase(double E, double dm2, double L);

// P(alpha -> beta) at (E, L) via the amplitude form
// |sum_j U*_aj exp(-i m_j^2 L / 2E) U_bj|^2
double transition_probability(const MixingMatrix& u, const MassSpectrum& spectrum,
                              const Beam& beam, Flavor beta);

// all 9 channels; entries clamped to [0, 1]
ProbabilityMatrix probability_matrix(const MixingMatrix& u, const MassSpectrum& spectrum,
                                     double E, double L);
// unclamped variant, for conservation checks
ProbabilityMatrix probability_matrix_raw(const MixingMatrix& u, const MassSpectrum& spectrum,
                                         double E, double L);

// phase-averaged limit sum_j |U_aj|^2 |U_bj|^2
double averaged_probability(const MixingMatrix& u, Flavor alpha, Flavor beta);

// mean of transition_probability over a uniform energy grid in
// [E(1-w), E(1+w)]; w in [0, 1), n_samples >= 1
double band_averaged_probability(const MixingMatrix& u, const MassSpectrum& spectrum,
                                 double E_center, double relative_width, double L,
                                 Flavor alpha, Flavor beta, int n_samples);

ProbabilityMatrix clamp_probabilities(const ProbabilityMatrix& p);

}  // namespace nucollapse
