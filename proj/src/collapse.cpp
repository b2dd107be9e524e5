#include "nucollapse/collapse.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace nucollapse {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

void CollapseParams::validate() const {
  if (xi < 0.0) throw std::invalid_argument("collapse strength xi must be non-negative");
}

double CollapseParams::effective_radius(double m, const PhysicalConstants& consts) const {
  if (m < 0.0) throw std::invalid_argument("mass must be non-negative");
  return consts.fermi_constant_GF * m;
}

void SphericalMassDistribution::validate() const {
  if (mass < 0.0) throw std::invalid_argument("mass must be non-negative");
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
}

namespace {

double distance(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

std::array<double, 3> sample_in_sphere(const SphericalMassDistribution& s,
                                       std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double x, y, z, n;
  do {
    x = gauss(rng);
    y = gauss(rng);
    z = gauss(rng);
    n = std::sqrt(x * x + y * y + z * z);
  } while (n == 0.0);
  const double r = s.radius * std::cbrt(unit(rng));
  return {s.center[0] + r * x / n, s.center[1] + r * y / n, s.center[2] + r * z / n};
}

// Monte Carlo estimate of E[ 1/|r - r'| ] with r in sa, r' in sb
double mean_inverse_distance(const SphericalMassDistribution& sa,
                             const SphericalMassDistribution& sb, std::size_t samples,
                             std::mt19937_64& rng) {
  double sum = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const auto r = sample_in_sphere(sa, rng);
    const auto rp = sample_in_sphere(sb, rng);
    const double d = distance(r, rp);
    if (d > 0.0) sum += 1.0 / d;
  }
  return sum / static_cast<double>(samples);
}

}  // namespace

double delta_e_numeric(const SphericalMassDistribution& rho1,
                       const SphericalMassDistribution& rho2, double xi,
                       const PhysicalConstants& consts, std::size_t samples,
                       std::uint64_t seed) {
  rho1.validate();
  rho2.validate();
  if (xi < 0.0) throw std::invalid_argument("xi must be non-negative");
  if (samples < 1000) throw std::invalid_argument("resolution too low: need >= 1000 samples");

  const bool identical = rho1.mass == rho2.mass && rho1.radius == rho2.radius &&
                         rho1.center == rho2.center;
  if (identical) return 0.0;  // difference density vanishes exactly

  const double d = distance(rho1.center, rho2.center);
  if (rho1.mass > 0.0 && rho2.mass > 0.0 && d < rho1.radius + rho2.radius) {
    throw OverlapError("overlapping mass distributions: cross term not supported");
  }

  std::mt19937_64 rng(seed);
  double integral = 0.0;
  if (rho1.mass > 0.0) {
    integral += rho1.mass * rho1.mass * mean_inverse_distance(rho1, rho1, samples, rng);
  }
  if (rho2.mass > 0.0) {
    integral += rho2.mass * rho2.mass * mean_inverse_distance(rho2, rho2, samples, rng);
  }
  if (rho1.mass > 0.0 && rho2.mass > 0.0) {
    integral -= 2.0 * rho1.mass * rho2.mass * mean_inverse_distance(rho1, rho2, samples, rng);
  }
  const double mP = consts.planck_mass_mP;
  return 4.0 * kPi * xi / (mP * mP) * integral;
}

double delta_e_pairwise(double m_j, double m_k, double a_j, double a_k, double d, double xi,
                        const PhysicalConstants& consts) {
  if (m_j < 0.0 || m_k < 0.0) throw std::invalid_argument("mass must be non-negative");
  if (xi < 0.0) throw std::invalid_argument("xi must be non-negative");
  if (!(d > 0.0)) throw std::invalid_argument("separation d must be positive");
  double self = 0.0;
  if (m_j > 0.0) {
    if (!(a_j > 0.0)) throw std::invalid_argument("effective radius a_j must be positive");
    self += 3.0 * m_j * m_j / (5.0 * a_j);
  }
  if (m_k > 0.0) {
    if (!(a_k > 0.0)) throw std::invalid_argument("effective radius a_k must be positive");
    self += 3.0 * m_k * m_k / (5.0 * a_k);
  }
  const double mP = consts.planck_mass_mP;
  return 8.0 * kPi * xi / (mP * mP) * (self - m_j * m_k / d);
}

double separation(double E, double dm2, double L) {
  if (!(E > 0.0)) throw std::invalid_argument("energy must be positive");
  return dm2 * L / (2.0 * E * E);
}

double delta_e_of_baseline(double m_j, double m_k, double E, double dm2, double L,
                           const CollapseParams& params, const PhysicalConstants& consts) {
  params.validate();
  if (!(m_j > 0.0 && m_k > 0.0)) throw std::invalid_argument("masses must be positive");
  if (!(E > 0.0)) throw std::invalid_argument("energy must be positive");
  if (!(dm2 > 0.0)) throw std::invalid_argument("dm2 must be positive");
  if (!(L > 0.0)) throw std::invalid_argument("baseline must be positive");
  const double mP = consts.planck_mass_mP;
  const double A = 3.0 * (m_j + m_k) / (5.0 * consts.fermi_constant_GF);
  const double B = 2.0 * m_j * m_k * E * E / dm2;
  return 8.0 * kPi * params.xi / (mP * mP) * (A - B / L);
}

double decoherence_onset(double m_j, double m_k, double E, double dm2,
                         const PhysicalConstants& consts) {
  if (m_j < 0.0 || m_k < 0.0) throw std::invalid_argument("mass must be non-negative");
  if (!(E > 0.0)) throw std::invalid_argument("energy must be positive");
  if (m_j * m_k == 0.0 || dm2 == 0.0) return kInf;  // no damping marker
  if (dm2 < 0.0) dm2 = -dm2;  // onset depends only on the magnitude of the splitting
  return 10.0 * consts.fermi_constant_GF * m_j * m_k * E * E / (3.0 * (m_j + m_k) * dm2);
}

double damping_exponent(double m_j, double m_k, double E, double dm2, double L,
                        const CollapseParams& params, const PhysicalConstants& consts) {
  params.validate();
  if (L < 0.0) throw std::invalid_argument("baseline must be non-negative");
  if (!(E > 0.0)) throw std::invalid_argument("energy must be positive");
  const double D = decoherence_onset(m_j, m_k, E, dm2, consts);
  if (!(L > D)) return 0.0;
  if (dm2 < 0.0) dm2 = -dm2;
  const double mP = consts.planck_mass_mP;
  const double A = 3.0 * (m_j + m_k) / (5.0 * consts.fermi_constant_GF);
  const double B = 2.0 * m_j * m_k * E * E / dm2;
  const double gamma = 8.0 * kPi * params.xi / (mP * mP) * (A * (L - D) - B * std::log(L / D));
  return std::max(gamma, 0.0);
}

std::array<PairDamping, 3> pair_dampings(const MassSpectrum& spectrum, double E, double L,
                                         const CollapseParams& params,
                                         const PhysicalConstants& consts) {
  std::array<PairDamping, 3> out{};
  int idx = 0;
  for (int j = 0; j < 3; ++j) {
    for (int k = j + 1; k < 3; ++k) {
      PairDamping pd;
      pd.j = j;
      pd.k = k;
      const double dm2 = std::abs(spectrum.dm2(j, k));
      pd.onset = decoherence_onset(spectrum.mass(j), spectrum.mass(k), E, dm2, consts);
      pd.exponent =
          damping_exponent(spectrum.mass(j), spectrum.mass(k), E, dm2, L, params, consts);
      out[idx++] = pd;
    }
  }
  return out;
}

namespace {

int pair_slot(int j, int k) {
  // (0,1)->0, (0,2)->1, (1,2)->2
  if (j > k) std::swap(j, k);
  return j + k - 1;
}

ProbabilityMatrix damped_pair_sum(const MixingMatrix& u, const MassSpectrum& spectrum,
                                  double E, double L, const std::array<double, 3>& gammas) {
  if (gammas[0] == 0.0 && gammas[1] == 0.0 && gammas[2] == 0.0) {
    return probability_matrix_raw(u, spectrum, E, L);
  }
  // Per-mass phase factors keep the gamma = 0 limit consistent with the
  // unitary amplitude form even when the absolute phases are astronomically
  // large (only their pairwise differences would otherwise be computed, with
  // a different rounding pattern).
  std::array<Complex, 3> phase{};
  for (int j = 0; j < 3; ++j) {
    const double mj = spectrum.mass(j);
    phase[j] = std::polar(1.0, -mj * mj * L / (2.0 * E));
  }
  ProbabilityMatrix p{};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      std::array<Complex, 3> c{};
      for (int j = 0; j < 3; ++j) c[j] = std::conj(u.u[a][j]) * phase[j] * u.u[b][j];
      double sum = 0.0;
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          const double gamma = (j == k) ? 0.0 : gammas[pair_slot(j, k)];
          sum += (c[j] * std::conj(c[k])).real() * std::exp(-gamma);
        }
      }
      p[a][b] = sum;
    }
  }
  return p;
}

}  // namespace

ProbabilityMatrix damped_probability_matrix_with_exponents(const MixingMatrix& u,
                                                           const MassSpectrum& spectrum,
                                                           double E, double L,
                                                           const std::array<double, 3>& gammas) {
  if (!(E > 0.0)) throw std::invalid_argument("energy must be positive");
  for (double g : gammas) {
    if (g < 0.0) throw std::invalid_argument("damping exponent must be non-negative");
  }
  return damped_pair_sum(u, spectrum, E, L, gammas);
}

ProbabilityMatrix damped_probability_matrix_raw(const MixingMatrix& u,
                                                const MassSpectrum& spectrum, double E, double L,
                                                const CollapseParams& params,
                                                const PhysicalConstants& consts) {
  spectrum.validate();
  if (!(E > 0.0)) throw std::invalid_argument("energy must be positive");
  if (L < 0.0) throw std::invalid_argument("baseline must be non-negative");
  const auto pd = pair_dampings(spectrum, E, L, params, consts);
  return damped_pair_sum(u, spectrum, E, L, {pd[0].exponent, pd[1].exponent, pd[2].exponent});
}

ProbabilityMatrix damped_probability_matrix(const MixingMatrix& u, const MassSpectrum& spectrum,
                                            double E, double L, const CollapseParams& params,
                                            const PhysicalConstants& consts) {
  return clamp_probabilities(damped_probability_matrix_raw(u, spectrum, E, L, params, consts));
}

double damped_transition_probability(const MixingMatrix& u, const MassSpectrum& spectrum,
                                     double E, double L, Flavor alpha, Flavor beta,
                                     const CollapseParams& params,
                                     const PhysicalConstants& consts) {
  const auto p = damped_probability_matrix_raw(u, spectrum, E, L, params, consts);
  return p[flavor_index(alpha)][flavor_index(beta)];
}

double mean_life_estimate(double mass_grams, double delta_r_meters,
                          const PhysicalConstants& consts) {
  if (!(mass_grams > 0.0)) throw std::invalid_argument("mass must be positive");
  if (!(delta_r_meters > 0.0)) throw std::invalid_argument("position spread must be positive");
  const double dr_planck = delta_r_meters / consts.planck_length_lP;
  const double m_planck = mass_grams / consts.planck_mass_grams;
  return dr_planck / (m_planck * m_planck) * consts.planck_time_seconds();
}

}  // namespace nucollapse
