#pragma once

#include <array>
#include <cstdint>

#include "nucollapse/constants.hpp"
#include "nucollapse/flavor.hpp"
#include "nucollapse/oscillation.hpp"

namespace nucollapse {

struct CollapseParams {
  double xi = 0.0;  // dimensionless collapse strength, >= 0

  void validate() const;
  // effective smearing radius a_j = GF * m_j, in eV^-1
  double effective_radius(double m, const PhysicalConstants& consts) const;
};

struct SphericalMassDistribution {
  double mass = 0.0;    // eV
  double radius = 0.0;  // eV^-1, > 0 (uniform density implied)
  std::array<double, 3> center{0.0, 0.0, 0.0};  // eV^-1

  void validate() const;
};

struct OverlapError : std::domain_error {
  using std::domain_error::domain_error;
};

// symmetric per-pair damping state; onset = +inf marks "no damping ever"
struct PairDamping {
  int j = 0;
  int k = 0;
  double onset = 0.0;     // eV^-1
  double exponent = 0.0;  // dimensionless, >= 0
};

// Gravitational self-energy of the difference of two uniform-sphere mass
// distributions, by seeded Monte Carlo over the three pair terms:
//   4*pi*xi/mP^2 * [ I11 + I22 - 2*I12 ],  Iab = m_a m_b E[ 1/|r - r'| ].
// Identical distributions short-circuit to 0; overlapping distinct spheres
// throw OverlapError (the point-separation cross term does not apply there).
double delta_e_numeric(const SphericalMassDistribution& rho1,
                       const SphericalMassDistribution& rho2, double xi,
                       const PhysicalConstants& consts, std::size_t samples,
                       std::uint64_t seed);

// two-body closed form:
//   8*pi*xi/mP^2 * [ 3 m_j^2/(5 a_j) + 3 m_k^2/(5 a_k) - m_j m_k / d ]
double delta_e_pairwise(double m_j, double m_k, double a_j, double a_k, double d,
                        double xi, const PhysicalConstants& consts);

// displacement between mass eigenstates after baseline L: dm2 * L / (2 E^2)
double separation(double E, double dm2, double L);

// Delta E_G as a function of baseline with a_j = GF m_j and d = separation:
//   8*pi*xi/mP^2 * [ 3 (m_j + m_k)/(5 GF) - 2 m_j m_k E^2 / (dm2 * L) ]
double delta_e_of_baseline(double m_j, double m_k, double E, double dm2, double L,
                           const CollapseParams& params, const PhysicalConstants& consts);

// root D of delta_e_of_baseline(L) = 0:
//   D = 10 GF m_j m_k E^2 / (3 (m_j + m_k) dm2)
// Returns +inf when m_j*m_k = 0 or dm2 = 0 (no damping ever develops).
double decoherence_onset(double m_j, double m_k, double E, double dm2,
                         const PhysicalConstants& consts);

// integral of delta_e_of_baseline over [D, L]:
//   8*pi*xi/mP^2 * [ A (L - D) - B ln(L/D) ],  A = 3(m_j+m_k)/(5 GF),
//   B = 2 m_j m_k E^2 / dm2,  D = B/A;  0 for L <= D or degenerate pairs
double damping_exponent(double m_j, double m_k, double E, double dm2, double L,
                        const CollapseParams& params, const PhysicalConstants& consts);

std::array<PairDamping, 3> pair_dampings(const MassSpectrum& spectrum, double E, double L,
                                         const CollapseParams& params,
                                         const PhysicalConstants& consts);

// P(alpha -> beta) with coherence terms damped by exp(-Gamma_jk):
//   delta_ab - sum_{j!=k} U*_aj U_ak U_bj U*_bk [1 - exp(-i Phi_jk - Gamma_jk)]
double damped_transition_probability(const MixingMatrix& u, const MassSpectrum& spectrum,
                                     double E, double L, Flavor alpha, Flavor beta,
                                     const CollapseParams& params,
                                     const PhysicalConstants& consts);

ProbabilityMatrix damped_probability_matrix(const MixingMatrix& u, const MassSpectrum& spectrum,
                                            double E, double L, const CollapseParams& params,
                                            const PhysicalConstants& consts);
ProbabilityMatrix damped_probability_matrix_raw(const MixingMatrix& u,
                                                const MassSpectrum& spectrum, double E, double L,
                                                const CollapseParams& params,
                                                const PhysicalConstants& consts);

// pair-sum with caller-supplied exponents {Gamma_12, Gamma_13, Gamma_23};
// phases come from the spectrum
ProbabilityMatrix damped_probability_matrix_with_exponents(const MixingMatrix& u,
                                                           const MassSpectrum& spectrum,
                                                           double E, double L,
                                                           const std::array<double, 3>& gammas);

// order-of-magnitude mean life T = (dr/lP) / (m/mP)^2 in Planck times,
// returned in seconds
double mean_life_estimate(double mass_grams, double delta_r_meters,
                          const PhysicalConstants& consts);

}  // namespace nucollapse
