#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "nucollapse/oscillation.hpp"

#include <cmath>
#include <random>

using namespace nucollapse;

namespace {
constexpr double kPi = 3.14159265358979323846;

MixingAngles random_angles(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> quadrant(0.0, kPi / 2.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  MixingAngles a;
  a.theta12 = quadrant(rng);
  a.theta13 = quadrant(rng);
  a.theta23 = quadrant(rng);
  a.delta_cp = std::nextafter(phase(rng), 0.0);
  return a;
}
}  // namespace

TEST_CASE("momentum: exact and second-order forms") {
  CHECK(momentum(1e9, 0.0) == 1e9);
  // E = 1 GeV, m = 2 eV: E - p ~ m^2/2E = 2e-9 eV
  const double p = momentum(1e9, 2.0);
  CHECK(1e9 - p == doctest::Approx(2e-9).epsilon(1e-6));
  CHECK(momentum_approx(1e9, 2.0) == doctest::Approx(p).epsilon(1e-15));

  // marginally relativistic: the approximant visibly degrades
  const double exact = momentum(10.0, 2.0);
  const double approx = momentum_approx(10.0, 2.0);
  CHECK(std::abs(exact - approx) / exact > 1e-4);
  CHECK_FALSE((Beam{10.0, 0.0, Flavor::e}.relativistic(MassSpectrum{2.0, 2.0, 2.0})));
  CHECK((Beam{1e9, 0.0, Flavor::e}.relativistic(MassSpectrum{2.0, 2.0, 2.0})));

  CHECK_THROWS_AS(momentum(1.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(momentum(1.0, 1.0), std::domain_error);
}

TEST_CASE("oscillation_length") {
  CHECK(oscillation_length(1e9, 2.5e-3) == doctest::Approx(5.03e12).epsilon(1e-2));
  CHECK(oscillation_length(2e9, 2.5e-3) ==
        doctest::Approx(2.0 * oscillation_length(1e9, 2.5e-3)).epsilon(1e-15));
  CHECK(oscillation_length(1.0, 4.0 * kPi) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(oscillation_length(1e9, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(oscillation_length(1e9, -1.0), std::invalid_argument);
}

TEST_CASE("quantum_phase") {
  CHECK(quantum_phase(1e9, 2.5e-3, 0.0) == 0.0);
  const double losc = oscillation_length(1e9, 2.5e-3);
  CHECK(quantum_phase(1e9, 2.5e-3, losc) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  CHECK(quantum_phase(1e9, 2.5e-3, 0.5 * losc) == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("no propagation gives the identity") {
  const auto u = build_mixing_matrix(MixingAngles::defaults());
  const auto s = MassSpectrum::defaults();
  const auto p = probability_matrix(u, s, 1e9, 0.0);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(p[a][b] == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-14));
}

TEST_CASE("two-flavor reduction: maximal mixing at half period") {
  MixingAngles a;
  a.theta12 = kPi / 4.0;
  const auto u = build_mixing_matrix(a);
  // only dm2_12 nonzero
  const double m1 = 0.0, m2 = 0.1;
  const MassSpectrum s{m1, m2, m1};
  const double dm2 = m2 * m2 - m1 * m1;
  const double E = 1e9;
  // dm2 L / 4E = pi/2  ->  L = 2 pi E / dm2
  const double L = 2.0 * kPi * E / dm2;
  const double p = transition_probability(u, s, Beam{E, L, Flavor::e}, Flavor::mu);
  CHECK(p == doctest::Approx(1.0).epsilon(1e-12));

  // generic angle: P = sin^2(2 theta) sin^2(dm2 L / 4E)
  MixingAngles g;
  g.theta12 = 0.4;
  const auto ug = build_mixing_matrix(g);
  const double Lg = 0.37 * L;
  const double expected =
      std::pow(std::sin(2.0 * g.theta12) * std::sin(dm2 * Lg / (4.0 * E)), 2);
  CHECK((transition_probability(ug, s, Beam{E, Lg, Flavor::e}, Flavor::mu)) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("phase-averaged limit of P_ee for tri-bimaximal mixing") {
  const auto u = build_mixing_matrix(MixingAngles::tri_bimaximal());
  const auto s = MassSpectrum::defaults();
  const double E = 1e9;
  const double losc = oscillation_length(E, std::abs(s.dm2(0, 1)));
  // brute-force average over many baselines far beyond L_O
  double sum = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double L = losc * (100.0 + 37.0 * i / static_cast<double>(n));
    sum += transition_probability(u, s, Beam{E, L, Flavor::e}, Flavor::e);
  }
  CHECK(sum / n == doctest::Approx(5.0 / 9.0).epsilon(1e-3));
  CHECK(averaged_probability(u, Flavor::e, Flavor::e) ==
        doctest::Approx(5.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("probability conservation for randomized inputs") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> logE(9.0, 24.0), logL(10.0, 33.0), mass(0.0, 3.0);
  for (int i = 0; i < 300; ++i) {
    const auto u = build_mixing_matrix(random_angles(rng));
    const MassSpectrum s{mass(rng), mass(rng), mass(rng)};
    const double E = std::pow(10.0, logE(rng));
    const double L = std::pow(10.0, logL(rng));
    const auto p = probability_matrix_raw(u, s, E, L);
    for (int a = 0; a < 3; ++a) {
      CHECK(p[a][0] + p[a][1] + p[a][2] == doctest::Approx(1.0).epsilon(1e-10));
      for (int b = 0; b < 3; ++b) {
        CHECK(p[a][b] >= -1e-12);
        CHECK(p[a][b] <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("periodicity in the two-flavor limit") {
  MixingAngles a;
  a.theta12 = 0.55;
  const auto u = build_mixing_matrix(a);
  const MassSpectrum s{0.0, 0.2, 0.0};
  const double E = 1e10;
  const double losc = oscillation_length(E, s.dm2(0, 1));
  for (double L : {0.3 * losc, 1.7 * losc, 12.2 * losc}) {
    const double p1 = transition_probability(u, s, Beam{E, L, Flavor::e}, Flavor::mu);
    const double p2 = transition_probability(u, s, Beam{E, L + losc, Flavor::e}, Flavor::mu);
    CHECK(p1 == doctest::Approx(p2).epsilon(1e-10));
  }
}

TEST_CASE("delta = 0 gives a symmetric probability matrix") {
  auto angles = MixingAngles::defaults();
  angles.delta_cp = 0.0;
  const auto u = build_mixing_matrix(angles);
  const auto s = MassSpectrum::defaults();
  const auto p = probability_matrix(u, s, 1e9, 7.7e12);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(p[a][b] == doctest::Approx(p[b][a]).epsilon(1e-12));
}

TEST_CASE("CP conjugation: delta -> -delta transposes the matrix") {
  auto angles = MixingAngles::defaults();
  angles.delta_cp = 1.3;
  auto conj = angles;
  conj.delta_cp = 2.0 * kPi - angles.delta_cp;
  const auto u = build_mixing_matrix(angles);
  const auto ubar = build_mixing_matrix(conj);
  const auto s = MassSpectrum::defaults();
  const auto p = probability_matrix(u, s, 1e9, 3.3e12);
  const auto pbar = probability_matrix(ubar, s, 1e9, 3.3e12);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(p[a][b] == doctest::Approx(pbar[b][a]).epsilon(1e-12));
}

TEST_CASE("band averaging") {
  const auto u = build_mixing_matrix(MixingAngles::defaults());
  const auto s = MassSpectrum::defaults();
  const double E = 1e9, L = 4.4e12;

  // zero width equals the pointwise value
  CHECK(band_averaged_probability(u, s, E, 0.0, L, Flavor::e, Flavor::mu, 100) ==
        transition_probability(u, s, Beam{E, L, Flavor::e}, Flavor::mu));

  // wide band far beyond L_O approaches the phase-averaged value
  const double Lfar = 1e5 * oscillation_length(E, std::abs(s.dm2(0, 2)));
  const double avg =
      band_averaged_probability(u, s, E, 0.5, Lfar, Flavor::e, Flavor::mu, 200001);
  CHECK(avg == doctest::Approx(averaged_probability(u, Flavor::e, Flavor::mu)).epsilon(1e-2));

  // averaging preserves the row sum
  double row = 0.0;
  for (int b = 0; b < 3; ++b) {
    row += band_averaged_probability(u, s, E, 0.3, L, Flavor::mu, static_cast<Flavor>(b), 501);
  }
  CHECK(row == doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(band_averaged_probability(u, s, E, 1.0, L, Flavor::e, Flavor::e, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(band_averaged_probability(u, s, E, 0.1, L, Flavor::e, Flavor::e, 0),
                  std::invalid_argument);
}
