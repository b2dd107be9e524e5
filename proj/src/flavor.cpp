#include "nucollapse/flavor.hpp"

#include <algorithm>
#include <cmath>

namespace nucollapse {

const char* flavor_name(Flavor f) {
  switch (f) {
    case Flavor::e: return "e";
    case Flavor::mu: return "mu";
    case Flavor::tau: return "tau";
  }
  return "?";
}

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = kPi / 2.0;
}  // namespace

void MixingAngles::validate() const {
  auto in_quadrant = [](double t) { return t >= 0.0 && t <= kHalfPi; };
  if (!in_quadrant(theta12) || !in_quadrant(theta13) || !in_quadrant(theta23)) {
    throw std::invalid_argument("mixing angle outside [0, pi/2]");
  }
  if (!(delta_cp >= 0.0 && delta_cp < 2.0 * kPi)) {
    throw std::invalid_argument("delta_cp outside [0, 2*pi)");
  }
}

MixingAngles MixingAngles::defaults() {
  MixingAngles a;
  a.theta12 = std::asin(std::sqrt(0.307));
  a.theta23 = std::asin(std::sqrt(0.545));
  a.theta13 = std::asin(std::sqrt(0.022));
  a.delta_cp = 0.0;
  return a;
}

MixingAngles MixingAngles::tri_bimaximal() {
  MixingAngles a;
  a.theta12 = std::asin(1.0 / std::sqrt(3.0));
  a.theta23 = kPi / 4.0;
  a.theta13 = 0.0;
  a.delta_cp = 0.0;
  return a;
}

MixingMatrix build_mixing_matrix(const MixingAngles& angles) {
  angles.validate();
  const double s12 = std::sin(angles.theta12), c12 = std::cos(angles.theta12);
  const double s13 = std::sin(angles.theta13), c13 = std::cos(angles.theta13);
  const double s23 = std::sin(angles.theta23), c23 = std::cos(angles.theta23);
  const Complex eid = std::polar(1.0, angles.delta_cp);
  const Complex emid = std::conj(eid);

  MixingMatrix m;
  m.u[0] = {c12 * c13, s12 * c13, s13 * emid};
  m.u[1] = {-s12 * c23 - c12 * s23 * s13 * eid, c12 * c23 - s12 * s23 * s13 * eid, s23 * c13};
  m.u[2] = {s12 * s23 - c12 * c23 * s13 * eid, -c12 * s23 - s12 * c23 * s13 * eid, c23 * c13};
  return m;
}

double check_unitarity(const MixingMatrix& u) {
  double worst = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      Complex s = 0.0;
      for (int j = 0; j < 3; ++j) s += u.u[a][j] * std::conj(u.u[b][j]);
      if (a == b) s -= 1.0;
      worst = std::max(worst, std::abs(s));
    }
  }
  return worst;
}

Complex3 flavor_amplitudes(const MixingMatrix& u, Flavor alpha) {
  const int a = flavor_index(alpha);
  if (a < 0 || a > 2) throw std::invalid_argument("invalid flavor index");
  return {std::conj(u.u[a][0]), std::conj(u.u[a][1]), std::conj(u.u[a][2])};
}

void MassSpectrum::validate() const {
  if (m1 < 0.0 || m2 < 0.0 || m3 < 0.0) {
    throw std::invalid_argument("neutrino mass must be non-negative");
  }
}

double MassSpectrum::mass(int j) const {
  switch (j) {
    case 0: return m1;
    case 1: return m2;
    case 2: return m3;
  }
  throw std::invalid_argument("mass index outside {0,1,2}");
}

double MassSpectrum::dm2(int j, int k) const {
  const double mj = mass(j), mk = mass(k);
  return mk * mk - mj * mj;
}

double MassSpectrum::max_mass() const { return std::max({m1, m2, m3}); }

MassSpectrum MassSpectrum::defaults() {
  MassSpectrum s;
  s.m1 = 2.0;
  s.m2 = std::sqrt(s.m1 * s.m1 + 7.5e-5);
  s.m3 = std::sqrt(s.m1 * s.m1 + 2.5e-3);
  return s;
}

}  // namespace nucollapse
