#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "nucollapse/collapse.hpp"
#include "nucollapse/flux.hpp"
#include "nucollapse/observability.hpp"

#include <cmath>

using namespace nucollapse;

namespace {
const PhysicalConstants kC;

ProbabilityMatrix identity_matrix() {
  ProbabilityMatrix p{};
  for (int i = 0; i < 3; ++i) p[i][i] = 1.0;
  return p;
}
}  // namespace

TEST_CASE("pion_chain_source") {
  const auto s = pion_chain_source();
  CHECK(s.phi_tau == 0.0);
  CHECK(s.phi_mu / s.phi_e == doctest::Approx(2.0).epsilon(1e-15));
  const auto n = s.normalized();
  CHECK(n.total() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("detector_flux basics") {
  const auto src = pion_chain_source();
  const auto same = detector_flux(identity_matrix(), src);
  CHECK(same.phi_e == src.phi_e);
  CHECK(same.phi_mu == src.phi_mu);
  CHECK(same.phi_tau == src.phi_tau);

  ProbabilityMatrix bad = identity_matrix();
  bad[1][1] = 0.9;
  CHECK_THROWS_AS(detector_flux(bad, src), std::invalid_argument);
}

TEST_CASE("flux conservation for row-stochastic matrices") {
  const auto u = build_mixing_matrix(MixingAngles::defaults());
  const auto s = MassSpectrum::defaults();
  const FlavorFlux src{0.4, 1.7, 0.2};
  for (double L : {0.0, 1e12, 7.7e30}) {
    const auto d = detector_flux(probability_matrix(u, s, 1e22, L), src);
    CHECK(d.total() == doctest::Approx(src.total()).epsilon(1e-10));
  }
}

TEST_CASE("tri-bimaximal fully averaged pion source gives 1:1:1") {
  const auto u = build_mixing_matrix(MixingAngles::tri_bimaximal());
  ProbabilityMatrix avg{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      avg[a][b] = averaged_probability(u, static_cast<Flavor>(a), static_cast<Flavor>(b));
  const auto d = detector_flux(avg, pion_chain_source()).normalized();
  CHECK(d.phi_e == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(d.phi_mu == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(d.phi_tau == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("ratio_deviation") {
  const FlavorFlux a{1.0, 0.0, 0.0};
  const FlavorFlux b{0.0, 1.0, 0.0};
  CHECK(ratio_deviation(a, a) == 0.0);
  CHECK(ratio_deviation(a, b) == 1.0);
  CHECK(ratio_deviation(a, b) == ratio_deviation(b, a));
  // proportional fluxes compare equal
  CHECK((ratio_deviation(FlavorFlux{1.0, 2.0, 3.0}, FlavorFlux{2.0, 4.0, 6.0}) <= 1e-15));
  CHECK_THROWS_AS((ratio_deviation(a, FlavorFlux{0.0, 0.0, 0.0})), std::invalid_argument);
  CHECK_THROWS_AS((FlavorFlux{-0.1, 0.0, 0.0}.validate()), std::invalid_argument);
}

TEST_CASE("weak damping near an oscillation extremum still moves the ratios") {
  // two-flavor-like point with the phase near pi: coherent term extremal
  MixingAngles ang;
  ang.theta12 = 0.6;
  const auto u = build_mixing_matrix(ang);
  const MassSpectrum s{0.0, 0.1, 0.0};
  const double E = 1e9;
  const double L = 2.0 * 3.14159265358979323846 * E / s.dm2(0, 1);  // phase pi
  const auto pu = probability_matrix(u, s, E, L);
  const auto pd = clamp_probabilities(
      damped_probability_matrix_with_exponents(u, s, E, L, {0.1, 0.1, 0.1}));
  const auto src = pion_chain_source();
  const double dev = ratio_deviation(detector_flux(pu, src), detector_flux(pd, src));
  CHECK(dev > 0.005);
}

TEST_CASE("damped and undamped fluxes coincide at xi = 0 and deviate monotonically") {
  const auto u = build_mixing_matrix(MixingAngles::defaults());
  const auto s = MassSpectrum::defaults();
  const double E = 1e22;
  const double L = kC.lightyears_to_natural(1e10);
  const double dm2 = matched_dm2(E, L);
  const auto src = pion_chain_source();
  const auto pu = probability_matrix(u, s, E, L);

  auto damped_flux_at = [&](double xi) {
    std::array<double, 3> g{};
    int slot = 0;
    for (int j = 0; j < 3; ++j)
      for (int k = j + 1; k < 3; ++k, ++slot)
        g[slot] = damping_exponent(s.mass(j), s.mass(k), E, dm2, L, CollapseParams{xi}, kC);
    const auto pd = clamp_probabilities(damped_probability_matrix_with_exponents(u, s, E, L, g));
    return detector_flux(pd, src);
  };

  CHECK(ratio_deviation(detector_flux(pu, src), damped_flux_at(0.0)) < 1e-12);

  double prev = 0.0;
  for (double xi : {1e-4, 1e-3, 1e-2, 1e-1, 1.0}) {
    const double dev = ratio_deviation(detector_flux(pu, src), damped_flux_at(xi));
    CHECK(dev >= prev - 1e-12);
    prev = dev;
  }
}
