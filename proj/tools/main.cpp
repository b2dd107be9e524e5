#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nucollapse/collapse.hpp"
#include "nucollapse/constants.hpp"
#include "nucollapse/flavor.hpp"
#include "nucollapse/flux.hpp"
#include "nucollapse/observability.hpp"
#include "nucollapse/oracle.hpp"
#include "nucollapse/oscillation.hpp"

namespace nc = nucollapse;
using json = nlohmann::ordered_json;

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct RunConfig {
  nc::PhysicalConstants consts;
  nc::MixingAngles angles = nc::MixingAngles::defaults();
  nc::MassSpectrum spectrum = nc::MassSpectrum::defaults();
  double xi = 0.0;
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string out_path;

  // deterministic key order, echoed into every output header
  std::vector<std::pair<std::string, std::string>> echo() const {
    return {
        {"gf_ev2", fmt17(consts.fermi_constant_GF)},
        {"mp_ev", fmt17(consts.planck_mass_mP)},
        {"lp_m", fmt17(consts.planck_length_lP)},
        {"hbarc_evm", fmt17(consts.hbar_c)},
        {"hbar_evs", fmt17(consts.seconds_per_natural_eV_inverse)},
        {"ly_m", fmt17(consts.meters_per_lightyear)},
        {"mp_g", fmt17(consts.planck_mass_grams)},
        {"theta12_rad", fmt17(angles.theta12)},
        {"theta13_rad", fmt17(angles.theta13)},
        {"theta23_rad", fmt17(angles.theta23)},
        {"delta_cp_rad", fmt17(angles.delta_cp)},
        {"m1_ev", fmt17(spectrum.m1)},
        {"m2_ev", fmt17(spectrum.m2)},
        {"m3_ev", fmt17(spectrum.m3)},
        {"xi", fmt17(xi)},
        {"seed", std::to_string(seed)},
        {"format", format},
    };
  }
};

struct OutputSink {
  std::unique_ptr<std::ofstream> file;
  std::ostream* os = &std::cout;

  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file = std::make_unique<std::ofstream>(path);
      if (!*file) throw std::runtime_error("cannot open output file: " + path);
      os = file.get();
    }
  }
  std::ostream& stream() { return *os; }
};

void write_csv_header(std::ostream& os, const RunConfig& cfg,
                      const std::vector<std::pair<std::string, std::string>>& extra) {
  for (const auto& [k, v] : cfg.echo()) os << "# " << k << " = " << v << "\n";
  for (const auto& [k, v] : extra) os << "# " << k << " = " << v << "\n";
}

json config_json(const RunConfig& cfg,
                 const std::vector<std::pair<std::string, std::string>>& extra) {
  json j;
  for (const auto& [k, v] : cfg.echo()) j[k] = v;
  for (const auto& [k, v] : extra) j[k] = v;
  return j;
}

std::vector<double> parse_triplet(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    out.push_back(std::stod(item, &pos));
    if (pos != item.size()) throw CLI::ValidationError(std::string(what) + ": bad number " + item);
  }
  if (out.size() != 3) throw CLI::ValidationError(std::string(what) + ": expected 3 values");
  return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi >= lo) || n < 1) throw CLI::ValidationError("invalid grid");
  if (n == 1) return {lo};
  std::vector<double> g(n);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i) g[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

const std::array<const char*, 3> kFlavorNames = {"e", "mu", "tau"};

json matrix_json(const nc::ProbabilityMatrix& p) {
  json j = json::array();
  for (int a = 0; a < 3; ++a) {
    json row = json::array();
    for (int b = 0; b < 3; ++b) row.push_back(p[a][b]);
    j.push_back(row);
  }
  return j;
}

void print_matrix(std::ostream& os, const char* label, const nc::ProbabilityMatrix& p) {
  os << label << "\n";
  for (int a = 0; a < 3; ++a) {
    os << "  " << kFlavorNames[a];
    for (int b = 0; b < 3; ++b) os << " " << fmt17(p[a][b]);
    os << "\n";
  }
}

// Damping at the CLI layer uses the matched phase: the pair exponents
// are evaluated at the matched dm2 = 4*pi*E/L (the regime where oscillation
// is visible), while the oscillation phases use the actual spectrum.
struct MatchedDamping {
  double dm2 = 0.0;
  double onset_min = std::numeric_limits<double>::infinity();  // eV^-1
  std::array<double, 3> gammas{0.0, 0.0, 0.0};
};

MatchedDamping matched_damping(const RunConfig& cfg, double E, double L) {
  MatchedDamping md;
  if (L <= 0.0) return md;  // no propagation, no damping
  md.dm2 = nc::matched_dm2(E, L);
  int slot = 0;
  for (int j = 0; j < 3; ++j) {
    for (int k = j + 1; k < 3; ++k, ++slot) {
      const double mj = cfg.spectrum.mass(j), mk = cfg.spectrum.mass(k);
      md.onset_min =
          std::min(md.onset_min, nc::decoherence_onset(mj, mk, E, md.dm2, cfg.consts));
      md.gammas[slot] = nc::damping_exponent(mj, mk, E, md.dm2, L, nc::CollapseParams{cfg.xi},
                                             cfg.consts);
    }
  }
  return md;
}

void warn_if_nonrelativistic(const RunConfig& cfg, double E, double L) {
  if (!nc::Beam{E, L, nc::Flavor::e}.relativistic(cfg.spectrum)) {
    std::cerr << "warning: max(m)/E >= 1e-3, outside the relativistic regime; "
                 "results use the ultrarelativistic phase approximation\n";
  }
}

int cmd_probability(const RunConfig& cfg, double E, double L_ly) {
  const double L = cfg.consts.lightyears_to_natural(L_ly);
  warn_if_nonrelativistic(cfg, E, L);
  const auto mix = nc::build_mixing_matrix(cfg.angles);
  const auto pu = nc::probability_matrix(mix, cfg.spectrum, E, L);
  const auto md = matched_damping(cfg, E, L);
  const auto pd = nc::clamp_probabilities(
      nc::damped_probability_matrix_with_exponents(mix, cfg.spectrum, E, L, md.gammas));
  const double onset_ly = std::isfinite(md.onset_min)
                              ? cfg.consts.natural_length_to_lightyears(md.onset_min)
                              : md.onset_min;

  std::vector<std::pair<std::string, std::string>> extra = {{"E_ev", fmt17(E)},
                                                            {"L_ly", fmt17(L_ly)}};
  OutputSink sink(cfg.out_path);
  auto& os = sink.stream();
  if (cfg.format == "json") {
    json j;
    j["config"] = config_json(cfg, extra);
    j["dm2_matched_ev2"] = md.dm2;
    j["onset_D_ly"] = onset_ly;
    j["gamma"] = {{"12", md.gammas[0]}, {"13", md.gammas[1]}, {"23", md.gammas[2]}};
    j["P_undamped"] = matrix_json(pu);
    j["P_damped"] = matrix_json(pd);
    os << j.dump(2) << "\n";
  } else {
    write_csv_header(os, cfg, extra);
    os << "dm2_matched_eV2 " << fmt17(md.dm2) << "\n";
    os << "onset_D_ly " << fmt17(onset_ly) << "\n";
    os << "gamma_12 " << fmt17(md.gammas[0]) << "\ngamma_13 " << fmt17(md.gammas[1])
       << "\ngamma_23 " << fmt17(md.gammas[2]) << "\n";
    print_matrix(os, "P_undamped (rows source e,mu,tau; cols detected e,mu,tau)", pu);
    print_matrix(os, "P_damped", pd);
  }
  return 0;
}

int cmd_scan(const RunConfig& cfg, const std::vector<double>& E_grid,
             const std::vector<double>& L_grid_ly, const nc::FlavorFlux& source) {
  std::vector<double> L_grid(L_grid_ly.size());
  for (std::size_t i = 0; i < L_grid_ly.size(); ++i) {
    L_grid[i] = cfg.consts.lightyears_to_natural(L_grid_ly[i]);
  }
  const auto mix = nc::build_mixing_matrix(cfg.angles);
  const auto cells = nc::scan_window(mix, cfg.spectrum, nc::CollapseParams{cfg.xi}, E_grid,
                                     L_grid, source, cfg.consts);

  std::vector<std::pair<std::string, std::string>> extra = {
      {"source_flux", fmt17(source.phi_e) + "," + fmt17(source.phi_mu) + "," +
                          fmt17(source.phi_tau)},
      {"n_E", std::to_string(E_grid.size())},
      {"n_L", std::to_string(L_grid.size())},
  };

  static const char* kCols =
      "E_eV,L_ly,dm2_eV2,D_ly,gamma_12,gamma_13,gamma_23,"
      "P_ee_u,P_emu_u,P_etau_u,P_mue_u,P_mumu_u,P_mutau_u,P_taue_u,P_taumu_u,P_tautau_u,"
      "P_ee_d,P_emu_d,P_etau_d,P_mue_d,P_mumu_d,P_mutau_d,P_taue_d,P_taumu_d,P_tautau_d,"
      "deviation";

  OutputSink sink(cfg.out_path);
  auto& os = sink.stream();
  auto row_values = [&](const nc::ScanCell& c) {
    std::vector<double> v;
    v.reserve(26);
    v.push_back(c.E);
    v.push_back(cfg.consts.natural_length_to_lightyears(c.L));
    v.push_back(c.dm2_matched);
    v.push_back(std::isfinite(c.onset)
                    ? cfg.consts.natural_length_to_lightyears(c.onset)
                    : c.onset);
    for (double g : c.gammas) v.push_back(g);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) v.push_back(c.p_undamped[a][b]);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) v.push_back(c.p_damped[a][b]);
    v.push_back(c.deviation);
    return v;
  };

  if (cfg.format == "json") {
    json j;
    j["config"] = config_json(cfg, extra);
    j["columns"] = json::array();
    {
      std::stringstream ss(kCols);
      std::string col;
      while (std::getline(ss, col, ',')) j["columns"].push_back(col);
    }
    j["rows"] = json::array();
    for (const auto& c : cells) j["rows"].push_back(row_values(c));
    os << j.dump(2) << "\n";
  } else {
    write_csv_header(os, cfg, extra);
    os << kCols << "\n";
    for (const auto& c : cells) {
      const auto v = row_values(c);
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << fmt17(v[i]);
      }
      os << "\n";
    }
  }
  return 0;
}

int cmd_bound(const RunConfig& cfg, double E, double L_ly, double threshold) {
  const double L = cfg.consts.lightyears_to_natural(L_ly);
  const double mj = cfg.spectrum.m1, mk = cfg.spectrum.m2;
  std::vector<std::pair<std::string, std::string>> extra = {
      {"E_ev", fmt17(E)}, {"L_ly", fmt17(L_ly)}, {"threshold", fmt17(threshold)}};

  const double e_star = nc::max_observable_energy(mj, mk, cfg.consts);
  double xi_bound = 0.0;
  bool unbounded = false;
  try {
    xi_bound = nc::xi_upper_bound(mj, mk, E, L, threshold, cfg.consts);
  } catch (const nc::UnboundedError&) {
    unbounded = true;
  }
  const double xi_window = cfg.xi > 0.0 ? cfg.xi : 1.0;
  const auto window = nc::compute_window(mj, mk, xi_window, cfg.consts);

  OutputSink sink(cfg.out_path);
  auto& os = sink.stream();
  if (cfg.format == "json") {
    json j;
    j["config"] = config_json(cfg, extra);
    j["xi_upper_bound"] = unbounded ? json(nullptr) : json(xi_bound);
    j["unbounded"] = unbounded;
    j["E_star_eV"] = e_star;
    j["window_xi"] = xi_window;
    j["L_range_ly"] = {window.baseline_range_ly[0], window.baseline_range_ly[1]};
    os << j.dump(2) << "\n";
  } else {
    write_csv_header(os, cfg, extra);
    if (unbounded) {
      os << "xi_upper_bound unbounded\n";
    } else {
      os << "xi_upper_bound " << fmt17(xi_bound) << "\n";
    }
    os << "E_star_eV " << fmt17(e_star) << "\n";
    os << "L_range_ly " << fmt17(window.baseline_range_ly[0]) << " "
       << fmt17(window.baseline_range_ly[1]) << " (at xi = " << fmt17(xi_window) << ")\n";
  }
  return unbounded ? 1 : 0;
}

int cmd_flux(const RunConfig& cfg, double E, double L_ly, const nc::FlavorFlux& source) {
  const double L = cfg.consts.lightyears_to_natural(L_ly);
  warn_if_nonrelativistic(cfg, E, L);
  const auto mix = nc::build_mixing_matrix(cfg.angles);
  const auto pu = nc::probability_matrix(mix, cfg.spectrum, E, L);
  const auto md = matched_damping(cfg, E, L);
  const auto pd = nc::clamp_probabilities(
      nc::damped_probability_matrix_with_exponents(mix, cfg.spectrum, E, L, md.gammas));
  const auto fu = nc::detector_flux(pu, source).normalized();
  const auto fd = nc::detector_flux(pd, source).normalized();
  const auto sn = source.normalized();
  const double dev = nc::ratio_deviation(nc::detector_flux(pu, source),
                                         nc::detector_flux(pd, source));

  std::vector<std::pair<std::string, std::string>> extra = {{"E_ev", fmt17(E)},
                                                            {"L_ly", fmt17(L_ly)}};
  OutputSink sink(cfg.out_path);
  auto& os = sink.stream();
  auto flux_row = [](const nc::FlavorFlux& f) {
    return json::array({f.phi_e, f.phi_mu, f.phi_tau});
  };
  if (cfg.format == "json") {
    json j;
    j["config"] = config_json(cfg, extra);
    j["source"] = flux_row(sn);
    j["detector_undamped"] = flux_row(fu);
    j["detector_damped"] = flux_row(fd);
    j["deviation"] = dev;
    os << j.dump(2) << "\n";
  } else {
    write_csv_header(os, cfg, extra);
    os << "flux,e,mu,tau\n";
    os << "source," << fmt17(sn.phi_e) << "," << fmt17(sn.phi_mu) << "," << fmt17(sn.phi_tau)
       << "\n";
    os << "detector_undamped," << fmt17(fu.phi_e) << "," << fmt17(fu.phi_mu) << ","
       << fmt17(fu.phi_tau) << "\n";
    os << "detector_damped," << fmt17(fd.phi_e) << "," << fmt17(fd.phi_mu) << ","
       << fmt17(fd.phi_tau) << "\n";
    os << "deviation," << fmt17(dev) << "\n";
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& only, const std::string& resolution) {
  std::size_t samples = 200000;
  if (resolution == "low") samples = 20000;
  else if (resolution == "high") samples = 1000000;
  else if (resolution != "default") throw CLI::ValidationError("resolution must be low|default|high");

  const auto reports = nc::run_all(cfg.consts, samples, cfg.seed, only);
  std::vector<std::pair<std::string, std::string>> extra = {
      {"resolution", resolution}, {"samples", std::to_string(samples)}, {"only", only}};

  OutputSink sink(cfg.out_path);
  auto& os = sink.stream();
  bool all_pass = !reports.empty();
  if (cfg.format == "json") {
    json j;
    j["config"] = config_json(cfg, extra);
    j["reports"] = json::array();
    for (const auto& r : reports) {
      all_pass = all_pass && r.pass;
      j["reports"].push_back({{"name", r.name},
                              {"primary", r.primary},
                              {"oracle", r.oracle},
                              {"rel_error", r.rel_error},
                              {"tolerance", r.tolerance},
                              {"pass", r.pass}});
    }
    j["all_pass"] = all_pass;
    os << j.dump(2) << "\n";
  } else {
    write_csv_header(os, cfg, extra);
    for (const auto& r : reports) {
      all_pass = all_pass && r.pass;
      os << (r.pass ? "PASS" : "FAIL") << " " << r.name << " primary=" << fmt17(r.primary)
         << " oracle=" << fmt17(r.oracle) << " rel_err=" << fmt17(r.rel_error)
         << " tol=" << fmt17(r.tolerance) << "\n";
    }
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neutrino flavor oscillations with gravitationally damped coherence"};
  app.require_subcommand(1);
  app.fallthrough();  // let global flags appear after the subcommand name

  std::string config_path, format = "csv", out_path, masses_csv, source_csv;
  std::uint64_t seed = 0;
  double theta12 = -1.0, theta13 = -1.0, theta23 = -1.0, delta_cp = -1.0;
  double xi = 0.0, E = 1e22, L_ly = 1e10, threshold = 1.0;
  bool tbm = false;

  app.add_option("--config", config_path, "flat key-value config file");
  app.add_option("--format", format, "output format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "output path (default stdout)");
  app.add_option("--seed", seed, "seed for stochastic oracles");

  auto add_physics_flags = [&](CLI::App* sub) {
    sub->add_option("--m", masses_csv, "masses m1,m2,m3 in eV");
    sub->add_option("--theta12", theta12, "mixing angle, radians");
    sub->add_option("--theta13", theta13, "mixing angle, radians");
    sub->add_option("--theta23", theta23, "mixing angle, radians");
    sub->add_option("--delta", delta_cp, "CP phase, radians");
    sub->add_flag("--tbm", tbm, "use tri-bimaximal mixing");
    sub->add_option("--xi", xi, "collapse strength");
  };

  auto* p_prob = app.add_subcommand("probability", "damped and undamped probability matrices");
  p_prob->add_option("--E", E, "neutrino energy, eV");
  p_prob->add_option("--L-ly", L_ly, "baseline, light-years");
  add_physics_flags(p_prob);

  auto* p_scan = app.add_subcommand("scan", "grid scan over (E, L)");
  double E_min = 1e20, E_max = 1e24, L_min_ly = 1e8, L_max_ly = 15e9;
  int nE = 9, nL = 9;
  p_scan->add_option("--E-min", E_min, "grid lower edge, eV");
  p_scan->add_option("--E-max", E_max, "grid upper edge, eV");
  p_scan->add_option("--nE", nE, "energy grid points (log-spaced)");
  p_scan->add_option("--L-min-ly", L_min_ly, "grid lower edge, light-years");
  p_scan->add_option("--L-max-ly", L_max_ly, "grid upper edge, light-years");
  p_scan->add_option("--nL", nL, "baseline grid points (log-spaced)");
  p_scan->add_option("--source", source_csv, "source flux phi_e,phi_mu,phi_tau");
  add_physics_flags(p_scan);

  auto* p_bound = app.add_subcommand("bound", "xi upper bound and observability window");
  p_bound->add_option("--E", E, "neutrino energy, eV");
  p_bound->add_option("--L-ly", L_ly, "baseline, light-years");
  p_bound->add_option("--threshold", threshold, "damping exponent threshold");
  add_physics_flags(p_bound);

  auto* p_flux = app.add_subcommand("flux", "source vs detector flavor ratios");
  p_flux->add_option("--E", E, "neutrino energy, eV");
  p_flux->add_option("--L-ly", L_ly, "baseline, light-years");
  p_flux->add_option("--source", source_csv, "source flux phi_e,phi_mu,phi_tau");
  add_physics_flags(p_flux);

  auto* p_verify = app.add_subcommand("verify", "run the oracle cross-check suite");
  std::string only, resolution = "default";
  p_verify->add_option("--only", only, "filter checks by name substring");
  p_verify->add_option("--resolution", resolution, "low|default|high");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg;
    std::map<std::string, double> kv;
    if (config_path.empty()) {
      if (const char* env = std::getenv("NU_COLLAPSE_CONFIG")) config_path = env;
    }
    if (!config_path.empty()) kv = nc::parse_config_file(config_path);
    cfg.consts = nc::constants_from_config(kv);

    auto from_kv = [&kv](const char* key, double& target) {
      if (auto it = kv.find(key); it != kv.end()) target = it->second;
    };
    from_kv("theta12_rad", cfg.angles.theta12);
    from_kv("theta13_rad", cfg.angles.theta13);
    from_kv("theta23_rad", cfg.angles.theta23);
    from_kv("delta_cp_rad", cfg.angles.delta_cp);
    from_kv("m1_ev", cfg.spectrum.m1);
    from_kv("m2_ev", cfg.spectrum.m2);
    from_kv("m3_ev", cfg.spectrum.m3);
    from_kv("xi", cfg.xi);

    // flags win over config file
    if (tbm) cfg.angles = nc::MixingAngles::tri_bimaximal();
    if (theta12 >= 0.0) cfg.angles.theta12 = theta12;
    if (theta13 >= 0.0) cfg.angles.theta13 = theta13;
    if (theta23 >= 0.0) cfg.angles.theta23 = theta23;
    if (delta_cp >= 0.0) cfg.angles.delta_cp = delta_cp;
    if (!masses_csv.empty()) {
      const auto m = parse_triplet(masses_csv, "--m");
      cfg.spectrum = {m[0], m[1], m[2]};
    }
    for (CLI::App* sub : {p_prob, p_scan, p_bound, p_flux}) {
      if (sub->parsed() && sub->count("--xi") > 0) cfg.xi = xi;
    }
    cfg.angles.validate();
    cfg.spectrum.validate();
    cfg.seed = seed;
    cfg.format = format;
    cfg.out_path = out_path;

    nc::FlavorFlux source = nc::pion_chain_source();
    if (!source_csv.empty()) {
      const auto s = parse_triplet(source_csv, "--source");
      source = {s[0], s[1], s[2]};
      source.validate();
    }

    if (p_prob->parsed()) return cmd_probability(cfg, E, L_ly);
    if (p_scan->parsed()) {
      return cmd_scan(cfg, log_grid(E_min, E_max, nE), log_grid(L_min_ly, L_max_ly, nL), source);
    }
    if (p_bound->parsed()) return cmd_bound(cfg, E, L_ly, threshold);
    if (p_flux->parsed()) return cmd_flux(cfg, E, L_ly, source);
    if (p_verify->parsed()) return cmd_verify(cfg, only, resolution);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
