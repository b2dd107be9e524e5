#pragma once

#include <vector>

#include "nucollapse/collapse.hpp"
#include "nucollapse/constants.hpp"
#include "nucollapse/flavor.hpp"
#include "nucollapse/flux.hpp"
#include "nucollapse/oscillation.hpp"

namespace nucollapse {

struct NoFiniteLengthError : std::domain_error {
  using std::domain_error::domain_error;
};

struct UnboundedError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ObservabilityWindow {
  std::array<double, 2> energy_range_eV{0.0, 0.0};
  std::array<double, 2> baseline_range_ly{0.0, 0.0};
  double xi = 0.0;
  std::array<double, 2> masses_eV{0.0, 0.0};

  void validate() const;
};

// dm2 matching the oscillation-visibility condition: 4*pi*E/L
double matched_dm2(double E, double L);

// Baseline at which the damping exponent reaches 1 under the matched-dm2
// substitution:
//   L = mP^2/(8 pi xi) * [ A - b ln(e A / b) ]^{-1},
//   A = 3(m_j+m_k)/(5 GF),  b = m_j m_k E / (2 pi).
// Throws NoFiniteLengthError when the bracket is not positive (E >= E*).
double observability_length(double m_j, double m_k, double E, double xi,
                            const PhysicalConstants& consts);

// energy E* where the damping bracket closes (b(E*) = A); the observability
// length diverges as E -> E* from below
double max_observable_energy(double m_j, double m_k, const PhysicalConstants& consts);

// xi such that the matched-dm2 damping exponent equals `threshold`;
// linear in threshold. Throws UnboundedError when no damping accumulates.
double xi_upper_bound(double m_j, double m_k, double E, double L, double damping_threshold,
                      const PhysicalConstants& consts);

// window summary at given xi: E in [0, E*], L from the minimal observability
// length up to the supplied horizon
ObservabilityWindow compute_window(double m_j, double m_k, double xi,
                                   const PhysicalConstants& consts,
                                   double horizon_ly = 15e9);

struct ScanCell {
  double E = 0.0;            // eV
  double L = 0.0;            // eV^-1
  double dm2_matched = 0.0;  // eV^2
  double onset = 0.0;        // eV^-1, earliest finite onset across pairs (+inf if none)
  std::array<double, 3> gammas{0.0, 0.0, 0.0};  // pairs (1,2), (1,3), (2,3)
  ProbabilityMatrix p_undamped{};
  ProbabilityMatrix p_damped{};
  double deviation = 0.0;
};

// Per-cell damping uses the matched dm2 (the regime where oscillation is
// visible at all); oscillation phases use the actual spectrum. Cells are
// emitted in row-major (E outer, L inner) order.
std::vector<ScanCell> scan_window(const MixingMatrix& u, const MassSpectrum& spectrum,
                                  const CollapseParams& params,
                                  const std::vector<double>& E_grid,
                                  const std::vector<double>& L_grid,
                                  const FlavorFlux& source, const PhysicalConstants& consts);

}  // namespace nucollapse
