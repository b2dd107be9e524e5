#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "nucollapse/oracle.hpp"
#include "nucollapse/observability.hpp"

#include <cmath>
#include <random>

using namespace nucollapse;

namespace {
const PhysicalConstants kC;
}

TEST_CASE("adaptive quadrature on known integrals") {
  const double i1 = adaptive_quadrature([](double x) { return x * x; }, 0.0, 3.0, 1e-12);
  CHECK(i1 == doctest::Approx(9.0).epsilon(1e-12));
  const double i2 = adaptive_quadrature([](double x) { return std::sin(x); }, 0.0,
                                        3.14159265358979323846, 1e-12);
  CHECK(i2 == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(adaptive_quadrature([](double x) { return x; }, 2.0, 2.0, 1e-12) == 0.0);
}

TEST_CASE("verify_probability") {
  SUBCASE("identity mixing gives exact agreement") {
    const auto id = build_mixing_matrix(MixingAngles{});
    const auto r = verify_probability(id, MassSpectrum::defaults(), 1e9, 1e12);
    CHECK(r.pass);
    CHECK(r.rel_error == 0.0);
  }

  SUBCASE("random unitaries pass at 1e-10") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> quadrant(0.0, 1.5707);
    std::uniform_real_distribution<double> phase(0.0, 6.28);
    // keep the absolute phases below ~1e4 rad: beyond that the two formulas
    // differ by double-precision phase-wrap noise rather than by structure
    std::uniform_real_distribution<double> logE(9.0, 23.0), logPhase(-2.0, 4.0);
    for (int i = 0; i < 100; ++i) {
      MixingAngles a{quadrant(rng), quadrant(rng), quadrant(rng), phase(rng)};
      const auto u = build_mixing_matrix(a);
      const double E = std::pow(10.0, logE(rng));
      const double L = std::pow(10.0, logPhase(rng)) * E / 2.0;
      const auto r = verify_probability(u, MassSpectrum::defaults(), E, L);
      CHECK(r.pass);
    }
  }

  SUBCASE("negative control: a corrupted oracle is detected") {
    // flip the phase sign in the pair sum by conjugating the baseline sign;
    // needs a nonzero CP phase, otherwise the probability is even in L
    MixingAngles cp = MixingAngles::defaults();
    cp.delta_cp = 1.2;
    const auto u = build_mixing_matrix(cp);
    const auto s = MassSpectrum::defaults();
    const double E = 1e9, L = 3.1e12;
    const double good = pair_sum_probability(u, s, E, L, Flavor::e, Flavor::mu);
    const double flipped = pair_sum_probability(u, s, E, -L, Flavor::e, Flavor::mu);
    const Beam beam{E, L, Flavor::e};
    const double primary = transition_probability(u, s, beam, Flavor::mu);
    CHECK(relative_error(primary, good) < 1e-10);
    CHECK(relative_error(primary, flipped) > 1e-3);
  }
}

TEST_CASE("verify_delta_e") {
  const double a = kC.fermi_constant_GF * 2.0;
  const auto r = verify_delta_e(2.0, 2.0, a, a, 20.0 * 2.0 * a, 1.0, kC, 200000, 42);
  CHECK(r.pass);
  CHECK(r.rel_error <= 1e-2);

  // deterministic given the seed
  const auto r2 = verify_delta_e(2.0, 2.0, a, a, 20.0 * 2.0 * a, 1.0, kC, 200000, 42);
  CHECK(r.oracle == r2.oracle);

  // the oracle moves with resolution, the closed form does not
  const auto coarse = verify_delta_e(2.0, 2.0, a, a, 20.0 * 2.0 * a, 1.0, kC, 2000, 42);
  CHECK(coarse.primary == r.primary);
  CHECK(coarse.oracle != r.oracle);

  CHECK_THROWS_AS(verify_delta_e(2.0, 2.0, a, a, 1.5 * a, 1.0, kC, 2000, 42), OverlapError);
}

TEST_CASE("verify_damping") {
  const double E = 1e22, dm2 = 1e-5, xi = 1e-2;
  const double D = decoherence_onset(2.0, 2.0, E, dm2, kC);

  SUBCASE("L = D: both vanish") {
    const auto r = verify_damping(2.0, 2.0, E, dm2, D, xi, kC);
    CHECK(r.pass);
    CHECK(r.primary == 0.0);
    CHECK(r.oracle == 0.0);
  }

  SUBCASE("generic points pass at 1e-9") {
    for (double f : {1.5, 2.0, 10.0, 1e4}) {
      const auto r = verify_damping(2.0, 2.0, E, dm2, f * D, xi, kC);
      CHECK(r.pass);
      CHECK(r.rel_error <= 1e-9);
    }
  }

  SUBCASE("asymmetric masses and other energies") {
    const auto r = verify_damping(1.3, 2.7, 3e21, 7e-6, 1e31, 0.3, kC);
    CHECK(r.pass);
  }
}

TEST_CASE("verify_observability") {
  const double e_star = max_observable_energy(2.0, 2.0, kC);

  SUBCASE("below E* the closed form matches bisection to 1e-6") {
    for (double f : {0.01, 0.3, 0.8}) {
      const auto r = verify_observability(2.0, 2.0, f * e_star, 1.0, kC);
      CHECK(r.pass);
      CHECK(r.rel_error <= 1e-6);
    }
  }

  SUBCASE("near E* the documented looser tolerance applies") {
    const auto r = verify_observability(2.0, 2.0, 0.995 * e_star, 1.0, kC);
    CHECK(r.tolerance == 1e-4);
    CHECK(r.pass);
  }

  SUBCASE("beyond E* both routes report no finite length") {
    const auto r = verify_observability(2.0, 2.0, 1.2 * e_star, 1.0, kC);
    CHECK(r.pass);
    CHECK(std::isnan(r.primary));
  }
}

TEST_CASE("run_all passes and honors the filter") {
  const auto all = run_all(kC, 50000, 1);
  CHECK(all.size() >= 10);
  for (const auto& r : all) {
    INFO(r.name, " rel_err=", r.rel_error, " tol=", r.tolerance);
    CHECK(r.pass);
  }
  const auto subset = run_all(kC, 50000, 1, "damping");
  CHECK(subset.size() == 3);
  for (const auto& r : subset) CHECK(r.name.find("damping") != std::string::npos);
}
