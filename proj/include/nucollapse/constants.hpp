#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace nucollapse {

// All internal arithmetic is carried out in eV-based natural units
// (hbar = c = 1, G = 1/mP^2). Conversions happen only at boundaries.
struct PhysicalConstants {
  double fermi_constant_GF = 1.1664e-23;            // eV^-2
  double planck_mass_mP = 1.2209e28;                // eV
  double hbar_c = 1.9733e-7;                        // eV * m
  double planck_length_lP = 1.9733e-7 / 1.2209e28;  // m, hbar_c / mP
  double seconds_per_natural_eV_inverse = 6.582119569e-16;  // hbar in eV*s
  double meters_per_lightyear = 9.4607e15;          // m
  double planck_mass_grams = 2.1765e-5;             // g

  // Throws std::invalid_argument if any entry is non-positive or the
  // lP * mP = hbar_c consistency check fails at 1e-6 relative.
  void validate() const;

  double planck_time_seconds() const {
    return planck_length_lP / hbar_c * seconds_per_natural_eV_inverse;
  }

  // unit conversions; negative inputs rejected
  double lightyears_to_natural(double L_ly) const;     // -> eV^-1
  double natural_length_to_lightyears(double L) const; // eV^-1 -> ly
  double meters_to_natural(double L_m) const;          // -> eV^-1
  double natural_length_to_meters(double L) const;     // eV^-1 -> m
  double natural_time_to_seconds(double T) const;      // eV^-1 -> s
  double seconds_to_natural_time(double T_s) const;    // -> eV^-1
  double grams_to_natural(double m_g) const;           // -> eV
};

// Defaults overridden by a flat key-value config file. Documented keys:
//   gf_ev2, mp_ev, lp_m, hbarc_evm, hbar_evs, ly_m, mp_g
PhysicalConstants constants_from_config(const std::map<std::string, double>& kv);

// Parses "key = value" lines; '#' starts a comment; blank lines ignored.
std::map<std::string, double> parse_config_file(const std::string& path);

enum class Dimension {
  Energy,
  Length,
  Time,
  Mass,
  Dimensionless,
  EnergySquared,
  InverseEnergySquared,
};

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Minimal dimensional bookkeeping for the handful of combinations used
// in this code base. Anything outside the table throws DimensionError;
// there is never a silent coercion.
struct Quantity {
  double value = 0.0;
  Dimension dim = Dimension::Dimensionless;

  Quantity operator+(const Quantity& o) const;
  Quantity operator-(const Quantity& o) const;
  Quantity operator*(const Quantity& o) const;
  Quantity operator/(const Quantity& o) const;
};

const char* dimension_name(Dimension d);

}  // namespace nucollapse
