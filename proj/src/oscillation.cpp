#include "nucollapse/oscillation.hpp"

#include <algorithm>
#include <cmath>

namespace nucollapse {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void Beam::validate() const {
  if (!(energy > 0.0)) throw std::invalid_argument("beam energy must be positive");
  if (baseline < 0.0) throw std::invalid_argument("baseline must be non-negative");
}

bool Beam::relativistic(const MassSpectrum& spectrum) const {
  return spectrum.max_mass() / energy < 1e-3;
}

double momentum(double E, double m) {
  if (m < 0.0) throw std::invalid_argument("mass must be non-negative");
  if (!(m < E)) throw std::domain_error("m >= E: outside the relativistic model validity");
  return std::sqrt((E - m) * (E + m));
}

double momentum_approx(double E, double m) {
  if (m < 0.0) throw std::invalid_argument("mass must be non-negative");
  if (!(m < E)) throw std::domain_error("m >= E: outside the relativistic model validity");
  return E - m * m / (2.0 * E);
}

double oscillation_length(double E, double dm2) {
  if (!(E > 0.0)) throw std::invalid_argument("energy must be positive");
  if (!(dm2 > 0.0)) throw std::invalid_argument("dm2 must be positive");
  return 4.0 * kPi * E / dm2;
}

double quantum_phase(double E, double dm2, double L) {
  if (!(E > 0.0)) throw std::invalid_argument("energy must be positive");
  return dm2 * L / (2.0 * E);
}

double transition_probability(const MixingMatrix& u, const MassSpectrum& spectrum,
                              const Beam& beam, Flavor beta) {
  beam.validate();
  spectrum.validate();
  const int a = flavor_index(beam.source_flavor);
  const int b = flavor_index(beta);
  Complex amp = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double mj = spectrum.mass(j);
    // global e^{-iEL} factor dropped; only dm2 phases are physical
    const double phase = mj * mj * beam.baseline / (2.0 * beam.energy);
    amp += std::conj(u.u[a][j]) * std::polar(1.0, -phase) * u.u[b][j];
  }
  return std::norm(amp);
}

ProbabilityMatrix probability_matrix_raw(const MixingMatrix& u, const MassSpectrum& spectrum,
                                         double E, double L) {
  ProbabilityMatrix p{};
  for (int a = 0; a < 3; ++a) {
    Beam beam{E, L, static_cast<Flavor>(a)};
    for (int b = 0; b < 3; ++b) {
      p[a][b] = transition_probability(u, spectrum, beam, static_cast<Flavor>(b));
    }
  }
  return p;
}

ProbabilityMatrix clamp_probabilities(const ProbabilityMatrix& p) {
  ProbabilityMatrix q{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) q[a][b] = std::clamp(p[a][b], 0.0, 1.0);
  return q;
}

ProbabilityMatrix probability_matrix(const MixingMatrix& u, const MassSpectrum& spectrum,
                                     double E, double L) {
  return clamp_probabilities(probability_matrix_raw(u, spectrum, E, L));
}

double averaged_probability(const MixingMatrix& u, Flavor alpha, Flavor beta) {
  const int a = flavor_index(alpha);
  const int b = flavor_index(beta);
  double p = 0.0;
  for (int j = 0; j < 3; ++j) p += std::norm(u.u[a][j]) * std::norm(u.u[b][j]);
  return p;
}

double band_averaged_probability(const MixingMatrix& u, const MassSpectrum& spectrum,
                                 double E_center, double relative_width, double L,
                                 Flavor alpha, Flavor beta, int n_samples) {
  if (!(relative_width >= 0.0 && relative_width < 1.0)) {
    throw std::invalid_argument("relative width must lie in [0, 1)");
  }
  if (n_samples < 1) throw std::invalid_argument("need at least one sample");
  if (n_samples == 1 || relative_width == 0.0) {
    return transition_probability(u, spectrum, Beam{E_center, L, alpha}, beta);
  }
  const double lo = E_center * (1.0 - relative_width);
  const double hi = E_center * (1.0 + relative_width);
  double sum = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double E = lo + (hi - lo) * i / (n_samples - 1);
    sum += transition_probability(u, spectrum, Beam{E, L, alpha}, beta);
  }
  return sum / n_samples;
}

}  // namespace nucollapse
