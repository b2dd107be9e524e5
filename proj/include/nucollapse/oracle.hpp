#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nucollapse/collapse.hpp"
#include "nucollapse/constants.hpp"
#include "nucollapse/flavor.hpp"

namespace nucollapse {

// Brute-force cross-checks for the closed forms, used by tests and the
// `verify` CLI command. Nothing in the primary computation path depends
// on this module.

struct OracleReport {
  std::string name;
  double primary = 0.0;
  double oracle = 0.0;
  double rel_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// relative error with absolute fallback for vanishing references
double relative_error(double primary, double reference);

// recursive adaptive Simpson quadrature
double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, int max_depth = 60);

// pair-sum transition probability,
//   delta_ab - sum_{j!=k} U*_aj U_ak U_bj U*_bk [1 - exp(-i dm2_jk L / 2E)],
// kept independent of the amplitude-form primary
double pair_sum_probability(const MixingMatrix& u, const MassSpectrum& spectrum, double E,
                            double L, Flavor alpha, Flavor beta);

// amplitude form vs pair sum, max deviation over all 9 channels; tol 1e-10
OracleReport verify_probability(const MixingMatrix& u, const MassSpectrum& spectrum, double E,
                                double L);

// Monte Carlo double integral vs the two-body closed form for a pair of
// non-overlapping uniform spheres separated by d along x; tol 1%
OracleReport verify_delta_e(double m_j, double m_k, double a_j, double a_k, double d, double xi,
                            const PhysicalConstants& consts, std::size_t samples,
                            std::uint64_t seed);

// adaptive quadrature of delta_e_of_baseline over [D, L] vs the closed-form
// damping exponent; tol 1e-9 relative
OracleReport verify_damping(double m_j, double m_k, double E, double dm2, double L, double xi,
                            const PhysicalConstants& consts);

// closed-form observability length vs bisection on (matched-dm2 damping
// exponent) = 1; tol 1e-6 relative (1e-4 within 1% of E*)
OracleReport verify_observability(double m_j, double m_k, double E, double xi,
                                  const PhysicalConstants& consts);

// full suite at representative parameter points; `only` filters by
// substring of the report name (empty = everything)
std::vector<OracleReport> run_all(const PhysicalConstants& consts, std::size_t samples,
                                  std::uint64_t seed, const std::string& only = "");

}  // namespace nucollapse
