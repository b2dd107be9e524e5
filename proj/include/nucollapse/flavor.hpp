#pragma once

#include <array>
#include <complex>
#include <stdexcept>

namespace nucollapse {

enum class Flavor : int { e = 0, mu = 1, tau = 2 };

inline int flavor_index(Flavor f) { return static_cast<int>(f); }
const char* flavor_name(Flavor f);

using Complex = std::complex<double>;
using Complex3 = std::array<Complex, 3>;

// Standard three-rotation parameterization of the leptonic mixing matrix:
// U = R23(theta23) * Uδ * R13(theta13) * Uδ† * R12(theta12).
struct MixingAngles {
  double theta12 = 0.0;  // radians, [0, pi/2]
  double theta13 = 0.0;
  double theta23 = 0.0;
  double delta_cp = 0.0;  // radians, [0, 2*pi)

  void validate() const;

  // sin^2(theta12)=0.307, sin^2(theta23)=0.545, sin^2(theta13)=0.022, delta=0
  static MixingAngles defaults();
  // theta12 = asin(1/sqrt(3)), theta23 = pi/4, theta13 = 0
  static MixingAngles tri_bimaximal();
};

struct MixingMatrix {
  // rows indexed by flavor (e, mu, tau), columns by mass index (1, 2, 3)
  std::array<std::array<Complex, 3>, 3> u{};

  Complex operator()(int alpha, int j) const { return u[alpha][j]; }
};

MixingMatrix build_mixing_matrix(const MixingAngles& angles);

// max entrywise |U U† - I|
double check_unitarity(const MixingMatrix& u);

// (U*_a1, U*_a2, U*_a3), the amplitudes of |nu_alpha> in the mass basis
Complex3 flavor_amplitudes(const MixingMatrix& u, Flavor alpha);

struct MassSpectrum {
  double m1 = 0.0;  // eV
  double m2 = 0.0;
  double m3 = 0.0;

  void validate() const;

  double mass(int j) const;  // j in {0,1,2}
  // dm2(j,k) = m_k^2 - m_j^2, antisymmetric in (j,k)
  double dm2(int j, int k) const;
  double max_mass() const;

  // nearly degenerate around 2 eV with standard splittings so dm2 != 0
  static MassSpectrum defaults();
};

}  // namespace nucollapse
