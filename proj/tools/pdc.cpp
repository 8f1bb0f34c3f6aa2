#include <cmath>
#include <complex>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pdc/config.hpp"
#include "pdc/fockstate.hpp"
#include "pdc/mapio.hpp"
#include "pdc/pmcurves.hpp"
#include "pdc/version.hpp"

namespace {

std::vector<double> parse_list(const std::string& csv, const char* what) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size())
      throw pdc::config_error(std::string("bad ") + what + " value '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::string out_path(const pdc::RunConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.output_dir) / name).string();
}

pdc::Metadata base_meta(const pdc::RunConfig& cfg, const pdc::DerivedScales& s) {
  pdc::Metadata m;
  m["sigma"] = pdc::format_value(cfg.crystal.sigma);
  m["cut_angle_deg"] = pdc::format_value(cfg.crystal.cut_angle * 180.0 / M_PI);
  m["length_mm"] = pdc::format_value(cfg.crystal.length * 1e3);
  m["pump_nm"] = pdc::format_value(cfg.crystal.pump_wavelength * 1e9);
  m["q0_per_m"] = pdc::format_value(s.q0);
  m["X0_m"] = pdc::format_value(s.X0);
  return m;
}

int run_pm_curves(const pdc::RunConfig& cfg, const std::string& wl_csv,
                  const std::string& branch, const std::string& mode,
                  int samples) {
  const std::vector<double> wl_nm = parse_list(wl_csv, "wavelength");
  if (wl_nm.empty()) {
    std::cerr << "pm-curves: no wavelengths given\n";
    return 2;
  }
  const pdc::DerivedScales s =
      pdc::derive_scales(cfg.crystal, cfg.detection.focal_length);

  std::vector<pdc::Branch> branches;
  if (branch == "signal" || branch == "both") branches.push_back(pdc::Branch::signal);
  if (branch == "idler" || branch == "both") branches.push_back(pdc::Branch::idler);
  if (branches.empty()) {
    std::cerr << "pm-curves: branch must be signal, idler or both\n";
    return 2;
  }
  std::vector<pdc::MismatchMode> modes;
  if (mode == "paraxial" || mode == "both")
    modes.push_back(pdc::MismatchMode::paraxial);
  if (mode == "exact" || mode == "both") modes.push_back(pdc::MismatchMode::exact);
  if (modes.empty()) {
    std::cerr << "pm-curves: mode must be paraxial, exact or both\n";
    return 2;
  }

  for (double nm : wl_nm)
    for (pdc::Branch b : branches)
      for (pdc::MismatchMode m : modes) {
        const pdc::PolarCurve curve =
            pdc::pm_locus(cfg.crystal, s, nm * 1e-9, b, m, samples);
        std::vector<std::pair<double, double>> rows;
        rows.reserve(curve.samples.size());
        for (const pdc::PolarSample& ps : curve.samples)
          rows.emplace_back(ps.phi, ps.theta_ext);
        std::ostringstream name;
        name << "pm_" << nm << '_'
             << (b == pdc::Branch::signal ? "signal" : "idler") << '_'
             << (m == pdc::MismatchMode::paraxial ? "paraxial" : "exact")
             << ".csv";
        pdc::Metadata meta = base_meta(cfg, s);
        meta["wavelength_nm"] = pdc::format_value(nm);
        meta["failed_azimuths"] = std::to_string(curve.failed_azimuths);
        pdc::write_rows_csv(out_path(cfg, name.str()), "phi_rad,theta_ext_rad",
                            rows, meta);
        if (curve.failed_azimuths > 0)
          std::cerr << name.str() << ": no phase-matched angle at "
                    << curve.failed_azimuths << " of " << samples
                    << " azimuths\n";
      }
  return 0;
}

int run_map(const pdc::RunConfig& cfg, const std::string& kind_name) {
  const pdc::MapKind kind = pdc::map_kind_from_string(kind_name);
  const pdc::DerivedScales s =
      pdc::derive_scales(cfg.crystal, cfg.detection.focal_length);
  const pdc::StokesEngine engine(cfg.crystal, s, cfg.filter,
                                 cfg.resolved_compensation());
  const pdc::FarFieldMap map = engine.noise_map(kind, cfg.nx, cfg.ny, cfg.extent);
  const pdc::Metadata meta = base_meta(cfg, s);
  if (cfg.write_csv)
    pdc::write_map_csv(out_path(cfg, "map_" + kind_name + ".csv"), map, meta);
  if (cfg.write_pgm)
    pdc::write_map_pgm(out_path(cfg, "map_" + kind_name + ".pgm"), map, meta);
  return 0;
}

int run_profile(const pdc::RunConfig& cfg, const std::string& kind_name,
                const std::string& path, const std::string& line, int samples) {
  const pdc::MapKind kind = pdc::map_kind_from_string(kind_name);
  const pdc::DerivedScales s =
      pdc::derive_scales(cfg.crystal, cfg.detection.focal_length);
  const pdc::StokesEngine engine(cfg.crystal, s, cfg.filter,
                                 cfg.resolved_compensation());
  std::vector<std::pair<double, double>> rows;
  if (path == "ring") {
    rows = engine.ring_profile(kind, samples);
  } else if (path == "line") {
    const std::vector<double> p = parse_list(line, "line coordinate");
    if (p.size() != 4)
      throw pdc::config_error("--line expects x0,y0,x1,y1 in units of X0");
    rows = engine.line_profile(kind, p[0], p[1], p[2], p[3], samples);
  } else {
    std::cerr << "profile: path must be ring or line\n";
    return 2;
  }
  pdc::Metadata meta = base_meta(cfg, s);
  meta["path"] = path;
  pdc::write_rows_csv(out_path(cfg, "profile_" + kind_name + "_" + path + ".csv"),
                      "coordinate,value", rows, meta);
  return 0;
}

int run_state_check(const pdc::RunConfig& cfg, const std::string& q_csv,
                    double omega, int nmax, bool strict, double tol,
                    double symmetry_tol) {
  const std::vector<double> q = parse_list(q_csv, "mode coordinate");
  if (q.size() != 2)
    throw pdc::config_error("--q expects qx,qy in units of q0");
  const pdc::DerivedScales s =
      pdc::derive_scales(cfg.crystal, cfg.detection.focal_length);
  const double qx = q[0] * s.q0;
  const double qy = q[1] * s.q0;
  const double Omega = omega / s.tau_coh;

  const pdc::GainSample fwd =
      pdc::gain_at(qx, qy, Omega, cfg.crystal.sigma, s);
  const pdc::GainSample rev =
      pdc::gain_at(-qx, -qy, -Omega, cfg.crystal.sigma, s);
  std::complex<double> V_fwd = fwd.V;
  const pdc::CompensationSpec comp = cfg.resolved_compensation();
  if (comp.enabled)
    V_fwd *= std::polar(1.0, pdc::compensation_phase(qx, qy, Omega, s, comp));
  const pdc::ModePairGains gains =
      pdc::ModePairGains::from_uv(fwd.U, V_fwd, rev.U, rev.V);

  const pdc::OracleComparison cmp = pdc::oracle_vs_analytic(gains, nmax);
  const pdc::TruncatedPairState state = pdc::build_pair_state(gains, nmax);
  const pdc::EigenstateResiduals res = pdc::eigenstate_residuals(state);

  std::ostringstream report;
  report << "mode (qx,qy) = (" << q[0] << ", " << q[1] << ") q0, Omega = "
         << omega << " / tau_coh, sigma = " << cfg.crystal.sigma << "\n";
  report << "truncation weight: " << cmp.truncation_weight << "\n";
  report << "symmetry residual (cond2): " << res.res_cond2 << "\n";
  report << "name,oracle,analytic,rel_diff\n";
  for (const auto& e : cmp.entries)
    report << e.name << ',' << pdc::format_value(e.oracle) << ','
           << pdc::format_value(e.analytic) << ',' << pdc::format_value(e.rel)
           << '\n';
  std::cout << report.str();
  pdc::Metadata meta;
  meta["sigma"] = pdc::format_value(cfg.crystal.sigma);
  meta["max_rel"] = pdc::format_value(cmp.max_rel);
  meta["res_cond2"] = pdc::format_value(res.res_cond2);
  pdc::atomic_write(out_path(cfg, "state_check.csv"), report.str());

  if (cmp.max_rel > tol) {
    std::cerr << "state-check: oracle/analytic residual " << cmp.max_rel
              << " exceeds " << tol << "\n";
    return 1;
  }
  if (strict && res.res_cond2 > symmetry_tol) {
    std::cerr << "state-check: symmetry residual " << res.res_cond2
              << " exceeds " << symmetry_tol << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Far-field polarization correlations of type-II parametric "
               "down-conversion (plane-wave pump model)"};
  app.set_version_flag("--version", pdc::version);
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "INI configuration file");
  app.add_option("--set", overrides,
                 "override a config entry, section.key=value (repeatable)");

  auto* pm = app.add_subcommand("pm-curves", "phase-matching loci per wavelength");
  std::string wavelengths, branch = "both", mode = "paraxial";
  int pm_samples = 360;
  pm->add_option("--wavelengths", wavelengths, "comma-separated list, nm")
      ->required();
  pm->add_option("--branch", branch, "signal|idler|both");
  pm->add_option("--mode", mode, "paraxial|exact|both");
  pm->add_option("--samples", pm_samples, "azimuth samples");

  auto* mp = app.add_subcommand("map", "far-field observable map");
  std::string map_kind = "s2diff";
  mp->add_option("--kind", map_kind,
                 "s2diff|s1sum|single_pixel_s2|dop|intensity");

  auto* pr = app.add_subcommand("profile", "observable along a ring or line");
  std::string prof_kind = "s2diff", prof_path = "ring", line_spec;
  int prof_samples = 360;
  pr->add_option("--kind", prof_kind, "observable kind");
  pr->add_option("--path", prof_path, "ring|line");
  pr->add_option("--line", line_spec, "x0,y0,x1,y1 in units of X0");
  pr->add_option("--samples", prof_samples, "sample count");

  auto* sc = app.add_subcommand("state-check",
                                "truncated Fock oracle vs closed forms");
  std::string q_spec = "";
  double omega = 0.0;
  int nmax = 60;
  bool strict = false;
  double tol = 1e-5, symmetry_tol = 1e-6;
  sc->add_option("--q", q_spec, "qx,qy in units of q0 (default: ring intersection)");
  sc->add_option("--omega", omega, "frequency offset in units of 1/tau_coh");
  sc->add_option("--nmax", nmax, "photon-number cutoff");
  sc->add_flag("--strict", strict, "fail on symmetry residuals too");
  sc->add_option("--tol", tol, "oracle/analytic tolerance");
  sc->add_option("--symmetry-tol", symmetry_tol, "strict symmetry tolerance");

  // let --config/--set appear after the subcommand as well
  for (CLI::App* sub : {pm, mp, pr, sc}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const pdc::RunConfig cfg = pdc::load_config(config_path, overrides);
    if (pm->parsed())
      return run_pm_curves(cfg, wavelengths, branch, mode, pm_samples);
    if (mp->parsed()) return run_map(cfg, map_kind);
    if (pr->parsed())
      return run_profile(cfg, prof_kind, prof_path, line_spec, prof_samples);
    if (sc->parsed()) {
      if (q_spec.empty()) {
        const pdc::DerivedScales s =
            pdc::derive_scales(cfg.crystal, cfg.detection.focal_length);
        q_spec = pdc::format_value(std::sqrt(std::max(0.0, s.delta0))) + ",0";
      }
      return run_state_check(cfg, q_spec, omega, nmax, strict, tol,
                             symmetry_tol);
    }
  } catch (const pdc::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const pdc::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const pdc::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
