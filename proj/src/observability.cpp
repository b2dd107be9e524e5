#include "nucollapse/observability.hpp"

#include <cmath>
#include <limits>

#include "nucollapse/rootfind.hpp"

namespace nucollapse {

namespace {
constexpr double kPi = 3.14159265358979323846;

double bracket_A(double m_j, double m_k, const PhysicalConstants& consts) {
  return 3.0 * (m_j + m_k) / (5.0 * consts.fermi_constant_GF);
}

double bracket_b(double m_j, double m_k, double E) { return m_j * m_k * E / (2.0 * kPi); }
}  // namespace

void ObservabilityWindow::validate() const {
  auto ok = [](const std::array<double, 2>& r) { return r[0] >= 0.0 && r[0] <= r[1]; };
  if (!ok(energy_range_eV) || !ok(baseline_range_ly)) {
    throw std::invalid_argument("observability window ranges must be non-empty");
  }
  if (xi < 0.0) throw std::invalid_argument("xi must be non-negative");
  if (!(masses_eV[0] > 0.0 && masses_eV[1] > 0.0)) {
    throw std::invalid_argument("window masses must be positive");
  }
}

double matched_dm2(double E, double L) {
  if (!(E > 0.0)) throw std::invalid_argument("energy must be positive");
  if (!(L > 0.0)) throw std::invalid_argument("baseline must be positive");
  return 4.0 * kPi * E / L;
}

double observability_length(double m_j, double m_k, double E, double xi,
                            const PhysicalConstants& consts) {
  if (!(m_j > 0.0 && m_k > 0.0)) throw std::invalid_argument("masses must be positive");
  if (!(E > 0.0)) throw std::invalid_argument("energy must be positive");
  if (!(xi > 0.0)) throw std::invalid_argument("xi must be positive");
  const double A = bracket_A(m_j, m_k, consts);
  const double b = bracket_b(m_j, m_k, E);
  // Beyond b = A the matched onset distance exceeds every baseline, so the
  // damping exponent vanishes identically and no finite length works.
  if (!(b < A)) {
    throw NoFiniteLengthError("no finite observability length at this energy");
  }
  const double bracket = A - b * (1.0 + std::log(A / b));
  if (!(bracket > 0.0)) {
    throw NoFiniteLengthError("no finite observability length at this energy");
  }
  const double mP = consts.planck_mass_mP;
  return mP * mP / (8.0 * kPi * xi) / bracket;
}

double max_observable_energy(double m_j, double m_k, const PhysicalConstants& consts) {
  if (!(m_j > 0.0 && m_k > 0.0)) throw std::invalid_argument("masses must be positive");
  const double A = bracket_A(m_j, m_k, consts);
  // The bracket A - b ln(eA/b) is non-negative and closes exactly where
  // b(E) = A; bisect on log(A/b), which changes sign there.
  auto f = [&](double E) { return std::log(A / bracket_b(m_j, m_k, E)); };
  const double guess = kPi * A / (m_j * m_k);  // b(guess) = A/2
  return bisect_from_guess(f, guess, 1e-10);
}

double xi_upper_bound(double m_j, double m_k, double E, double L, double damping_threshold,
                      const PhysicalConstants& consts) {
  if (!(damping_threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
  const double dm2 = matched_dm2(E, L);
  const double gamma_unit =
      damping_exponent(m_j, m_k, E, dm2, L, CollapseParams{1.0}, consts);
  if (!(gamma_unit > 0.0)) {
    throw UnboundedError("no damping accumulates at these parameters: xi unbounded");
  }
  return damping_threshold / gamma_unit;
}

ObservabilityWindow compute_window(double m_j, double m_k, double xi,
                                   const PhysicalConstants& consts, double horizon_ly) {
  ObservabilityWindow w;
  w.xi = xi;
  w.masses_eV = {m_j, m_k};
  const double e_star = max_observable_energy(m_j, m_k, consts);
  w.energy_range_eV = {0.0, e_star};
  // E -> 0 limit of the observability length: the log term vanishes
  const double A = bracket_A(m_j, m_k, consts);
  const double mP = consts.planck_mass_mP;
  const double L_min = mP * mP / (8.0 * kPi * xi * A);
  w.baseline_range_ly = {consts.natural_length_to_lightyears(L_min), horizon_ly};
  w.validate();
  return w;
}

std::vector<ScanCell> scan_window(const MixingMatrix& u, const MassSpectrum& spectrum,
                                  const CollapseParams& params,
                                  const std::vector<double>& E_grid,
                                  const std::vector<double>& L_grid,
                                  const FlavorFlux& source, const PhysicalConstants& consts) {
  params.validate();
  spectrum.validate();
  auto check_grid = [](const std::vector<double>& g, const char* name) {
    if (g.empty()) throw std::invalid_argument(std::string(name) + " grid is empty");
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!(g[i] > 0.0)) throw std::invalid_argument(std::string(name) + " grid must be positive");
      if (i > 0 && !(g[i] > g[i - 1])) {
        throw std::invalid_argument(std::string(name) + " grid must be strictly increasing");
      }
    }
  };
  check_grid(E_grid, "E");
  check_grid(L_grid, "L");

  std::vector<ScanCell> cells;
  cells.reserve(E_grid.size() * L_grid.size());
  for (double E : E_grid) {
    for (double L : L_grid) {
      ScanCell c;
      c.E = E;
      c.L = L;
      c.dm2_matched = matched_dm2(E, L);
      double onset_min = std::numeric_limits<double>::infinity();
      int slot = 0;
      for (int j = 0; j < 3; ++j) {
        for (int k = j + 1; k < 3; ++k, ++slot) {
          const double mj = spectrum.mass(j), mk = spectrum.mass(k);
          const double D = decoherence_onset(mj, mk, E, c.dm2_matched, consts);
          onset_min = std::min(onset_min, D);
          c.gammas[slot] = damping_exponent(mj, mk, E, c.dm2_matched, L, params, consts);
        }
      }
      c.onset = onset_min;
      c.p_undamped = probability_matrix(u, spectrum, E, L);
      c.p_damped = clamp_probabilities(
          damped_probability_matrix_with_exponents(u, spectrum, E, L, c.gammas));
      c.deviation =
          ratio_deviation(detector_flux(c.p_undamped, source), detector_flux(c.p_damped, source));
      cells.push_back(c);
    }
  }
  return cells;
}

}  // namespace nucollapse
