#include "nucollapse/constants.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace nucollapse {

void PhysicalConstants::validate() const {
  const double fields[] = {fermi_constant_GF,
                           planck_mass_mP,
                           hbar_c,
                           planck_length_lP,
                           seconds_per_natural_eV_inverse,
                           meters_per_lightyear,
                           planck_mass_grams};
  for (double f : fields) {
    if (!(f > 0.0)) throw std::invalid_argument("physical constant must be strictly positive");
  }
  const double residual = std::abs(planck_length_lP * planck_mass_mP - hbar_c) / hbar_c;
  if (residual > 1e-6) {
    throw std::invalid_argument("inconsistent constants: lP * mP != hbar_c (relative residual " +
                                std::to_string(residual) + ")");
  }
}

namespace {
void require_nonnegative(double x, const char* what) {
  if (x < 0.0) throw std::invalid_argument(std::string(what) + " must be non-negative");
}
}  // namespace

double PhysicalConstants::lightyears_to_natural(double L_ly) const {
  require_nonnegative(L_ly, "length");
  return L_ly * meters_per_lightyear / hbar_c;
}

double PhysicalConstants::natural_length_to_lightyears(double L) const {
  require_nonnegative(L, "length");
  return L * hbar_c / meters_per_lightyear;
}

double PhysicalConstants::meters_to_natural(double L_m) const {
  require_nonnegative(L_m, "length");
  return L_m / hbar_c;
}

double PhysicalConstants::natural_length_to_meters(double L) const {
  require_nonnegative(L, "length");
  return L * hbar_c;
}

double PhysicalConstants::natural_time_to_seconds(double T) const {
  require_nonnegative(T, "time");
  return T * seconds_per_natural_eV_inverse;
}

double PhysicalConstants::seconds_to_natural_time(double T_s) const {
  require_nonnegative(T_s, "time");
  return T_s / seconds_per_natural_eV_inverse;
}

double PhysicalConstants::grams_to_natural(double m_g) const {
  require_nonnegative(m_g, "mass");
  return m_g / planck_mass_grams * planck_mass_mP;
}

PhysicalConstants constants_from_config(const std::map<std::string, double>& kv) {
  PhysicalConstants c;
  auto get = [&kv](const char* key) -> std::optional<double> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };
  if (auto v = get("gf_ev2")) c.fermi_constant_GF = *v;
  if (auto v = get("mp_ev")) c.planck_mass_mP = *v;
  if (auto v = get("hbarc_evm")) c.hbar_c = *v;
  // lP defaults to hbar_c / mP so the constant set stays consistent
  // under overrides of either factor; an explicit lp_m wins.
  c.planck_length_lP = c.hbar_c / c.planck_mass_mP;
  if (auto v = get("lp_m")) c.planck_length_lP = *v;
  if (auto v = get("hbar_evs")) c.seconds_per_natural_eV_inverse = *v;
  if (auto v = get("ly_m")) c.meters_per_lightyear = *v;
  if (auto v = get("mp_g")) c.planck_mass_grams = *v;
  c.validate();
  return c;
}

std::map<std::string, double> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::map<std::string, double> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    std::string key, val;
    if (eq != std::string::npos) {
      key = line.substr(0, eq);
      val = line.substr(eq + 1);
    } else {
      std::istringstream ss(line);
      ss >> key >> val;
    }
    auto trim = [](std::string& s) {
      const char* ws = " \t\r\n";
      s.erase(0, s.find_first_not_of(ws));
      s.erase(s.find_last_not_of(ws) + 1);
    };
    trim(key);
    trim(val);
    if (key.empty() && val.empty()) continue;
    if (key.empty() || val.empty()) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed config line");
    }
    try {
      std::size_t pos = 0;
      double v = std::stod(val, &pos);
      if (pos != val.size()) throw std::invalid_argument(val);
      kv[key] = v;
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad numeric value '" +
                               val + "' for key '" + key + "'");
    }
  }
  return kv;
}

const char* dimension_name(Dimension d) {
  switch (d) {
    case Dimension::Energy: return "Energy";
    case Dimension::Length: return "Length";
    case Dimension::Time: return "Time";
    case Dimension::Mass: return "Mass";
    case Dimension::Dimensionless: return "Dimensionless";
    case Dimension::EnergySquared: return "EnergySquared";
    case Dimension::InverseEnergySquared: return "InverseEnergySquared";
  }
  return "?";
}

namespace {

[[noreturn]] void dim_fail(const char* op, Dimension a, Dimension b) {
  throw DimensionError(std::string("incompatible dimensions for ") + op + ": " +
                       dimension_name(a) + " vs " + dimension_name(b));
}

using D = Dimension;

// closed multiplication table for the dimensions this library uses;
// Length and Time are inverse-energy-like in natural units
std::optional<D> mul_dim(D a, D b) {
  if (a == D::Dimensionless) return b;
  if (b == D::Dimensionless) return a;
  auto massish = [](D d) { return d == D::Energy || d == D::Mass; };
  auto lengthish = [](D d) { return d == D::Length || d == D::Time; };
  if (massish(a) && massish(b)) return D::EnergySquared;
  if (massish(a) && lengthish(b)) return D::Dimensionless;
  if (lengthish(a) && massish(b)) return D::Dimensionless;
  if (lengthish(a) && lengthish(b)) return D::InverseEnergySquared;
  if ((a == D::EnergySquared && b == D::InverseEnergySquared) ||
      (a == D::InverseEnergySquared && b == D::EnergySquared))
    return D::Dimensionless;
  if (a == D::EnergySquared && lengthish(b)) return D::Energy;
  if (lengthish(a) && b == D::EnergySquared) return D::Energy;
  if (a == D::InverseEnergySquared && massish(b)) return D::Length;
  if (massish(a) && b == D::InverseEnergySquared) return D::Length;
  return std::nullopt;
}

std::optional<D> div_dim(D a, D b) {
  if (a == b) return D::Dimensionless;
  if (b == D::Dimensionless) return a;
  auto massish = [](D d) { return d == D::Energy || d == D::Mass; };
  auto lengthish = [](D d) { return d == D::Length || d == D::Time; };
  if (a == D::Dimensionless && massish(b)) return D::Length;
  if (a == D::Dimensionless && lengthish(b)) return D::Energy;
  if (a == D::Dimensionless && b == D::EnergySquared) return D::InverseEnergySquared;
  if (a == D::Dimensionless && b == D::InverseEnergySquared) return D::EnergySquared;
  if (a == D::EnergySquared && massish(b)) return D::Energy;
  if (massish(a) && b == D::EnergySquared) return D::Length;  // e.g. 4*pi*E / dm2
  if (massish(a) && lengthish(b)) return D::EnergySquared;
  if (lengthish(a) && massish(b)) return D::InverseEnergySquared;
  if (massish(a) && massish(b)) return D::Dimensionless;
  if (lengthish(a) && lengthish(b)) return D::Dimensionless;
  return std::nullopt;
}

}  // namespace

Quantity Quantity::operator+(const Quantity& o) const {
  if (dim != o.dim) dim_fail("+", dim, o.dim);
  return {value + o.value, dim};
}

Quantity Quantity::operator-(const Quantity& o) const {
  if (dim != o.dim) dim_fail("-", dim, o.dim);
  return {value - o.value, dim};
}

Quantity Quantity::operator*(const Quantity& o) const {
  auto d = mul_dim(dim, o.dim);
  if (!d) dim_fail("*", dim, o.dim);
  return {value * o.value, *d};
}

Quantity Quantity::operator/(const Quantity& o) const {
  auto d = div_dim(dim, o.dim);
  if (!d) dim_fail("/", dim, o.dim);
  return {value / o.value, *d};
}

}  // namespace nucollapse
