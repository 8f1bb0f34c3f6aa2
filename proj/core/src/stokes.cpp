#include "pdc/stokes.hpp"

#include <cmath>

#include "pdc/parallel.hpp"
#include "pdc/quadrature.hpp"

namespace pdc {

double FilterSpec::transmission(double Omega, double lambda0) const {
  switch (kind) {
    case Kind::none:
      return 1.0;
    case Kind::step:
      return std::fabs(Omega) <= 0.5 * fwhm_omega(lambda0) ? 1.0 : 0.0;
    case Kind::gaussian: {
      const double w = fwhm_omega(lambda0);
      return std::exp(-4.0 * M_LN2 * Omega * Omega / (w * w));
    }
  }
  return 1.0;
}

void FilterSpec::validate() const {
  if (kind != Kind::none && !(fwhm_lambda > 0.0))
    throw config_error("filter bandwidth must be > 0");
}

MapKind map_kind_from_string(const std::string& name) {
  if (name == "s2diff") return MapKind::s2diff;
  if (name == "s1sum") return MapKind::s1sum;
  if (name == "single_pixel_s2") return MapKind::single_pixel_s2;
  if (name == "dop") return MapKind::dop;
  if (name == "intensity") return MapKind::intensity;
  throw config_error("unknown map kind '" + name + "'");
}

std::string to_string(MapKind k) {
  switch (k) {
    case MapKind::s2diff: return "s2diff";
    case MapKind::s1sum: return "s1sum";
    case MapKind::single_pixel_s2: return "single_pixel_s2";
    case MapKind::dop: return "dop";
    case MapKind::intensity: return "intensity";
  }
  return "?";
}

StokesEngine::StokesEngine(const CrystalConfig& cfg,
                           const DerivedScales& scales, FilterSpec filter,
                           CompensationSpec comp)
    : cfg_(cfg), scales_(scales), filter_(filter), comp_(comp) {
  filter_.validate();
}

SecondMoments StokesEngine::filtered_second_moments(double x, double y,
                                                    double Omega) const {
  const double lambda0 = cfg_.degenerate_wavelength();
  const double qx = x * scales_.q0;
  const double qy = y * scales_.q0;
  const GainSample fwd = gain_at(qx, qy, Omega, cfg_.sigma, scales_);
  const GainSample rev = gain_at(-qx, -qy, -Omega, cfg_.sigma, scales_);
  const double f = filter_.transmission(Omega, lambda0);
  const double fr = filter_.transmission(-Omega, lambda0);
  const double v_fwd = std::norm(fwd.V);
  const double v_rev = std::norm(rev.V);

  SecondMoments m;
  // The compensation crystal sits behind a 90 degree polarization rotation,
  // so it swaps which gain feeds which polarization and adds the residual
  // phase to the anomalous correlator.
  m.n_o = f * (comp_.enabled ? v_rev : v_fwd);
  m.n_e = f * (comp_.enabled ? v_fwd : v_rev);
  const double root = std::sqrt(f * fr);
  m.anomalous_oe = root * fwd.U * fwd.V;
  m.anomalous_eo = root * rev.U * rev.V;
  if (comp_.enabled) {
    const double pc =
        compensation_phase(qx, qy, Omega, scales_, comp_);
    m.anomalous_oe *= std::polar(1.0, pc);
  }
  return m;
}

std::array<double, 2> StokesEngine::integration_range() const {
  const double lambda0 = cfg_.degenerate_wavelength();
  const double tau = scales_.tau_coh;
  switch (filter_.kind) {
    case FilterSpec::Kind::step: {
      const double half = 0.5 * filter_.fwhm_omega(lambda0) * tau;
      return {-half, half};
    }
    case FilterSpec::Kind::gaussian: {
      const double half = 4.0 * filter_.fwhm_omega(lambda0) * tau;
      return {-half, half};
    }
    case FilterSpec::Kind::none:
      return {-200.0, 200.0};
  }
  return {-200.0, 200.0};
}

StokesPoint StokesEngine::point(double x, double y) const {
  const double tau = scales_.tau_coh;
  const double lambda0 = cfg_.degenerate_wavelength();
  const double qx = x * scales_.q0;
  const double qy = y * scales_.q0;

  const auto integrand = [&](double u) -> std::array<double, 7> {
    const double Omega = u / tau;
    const GainSample fwd = gain_at(qx, qy, Omega, cfg_.sigma, scales_);
    const GainSample rev = gain_at(-qx, -qy, -Omega, cfg_.sigma, scales_);
    const double f = filter_.transmission(Omega, lambda0);
    const double v = std::norm(fwd.V);
    const double vr = std::norm(rev.V);

    const double F1 = f * v * (f * v + 1.0) + f * vr * (f * vr + 1.0);
    const double F2 = f * f * (v * (v + 1.0) + vr * (vr + 1.0));
    const double H1 = f * v * (f * vr + 1.0) + f * vr * (f * v + 1.0);
    double pc = 0.0;
    if (comp_.enabled) pc = compensation_phase(qx, qy, Omega, scales_, comp_);
    const complexd corr =
        fwd.U * fwd.V * std::conj(rev.U * rev.V) * std::polar(1.0, pc);
    const double H2 = f * f * 2.0 * corr.real();
    const double shot = f * (v + vr);
    const double io = f * (comp_.enabled ? vr : v);
    const double ie = f * (comp_.enabled ? v : vr);
    return {F1, F2, H1, H2, shot, io, ie};
  };

  const std::array<double, 2> range = integration_range();
  const double width = range[1] - range[0];
  const int panels = std::max(8, static_cast<int>(std::ceil(width / 2.0)));
  const auto res =
      GaussKronrod<7>::integrate(integrand, range[0], range[1], 1e-9, 1e-7, panels);

  StokesPoint p;
  p.F1 = res.value[0];
  p.F2 = res.value[1];
  p.H1 = res.value[2];
  p.H2 = res.value[3];
  p.shot = res.value[4];
  p.int_o = res.value[5];
  p.int_e = res.value[6];
  p.evaluations = res.evaluations;
  return p;
}

std::array<double, 4> StokesEngine::mean_stokes(double x, double y) const {
  const StokesPoint p = point(x, y);
  const double norm = 1.0 / (2.0 * M_PI * scales_.tau_coh);
  return {p.shot * norm, (p.int_o - p.int_e) * norm, 0.0, 0.0};
}

std::pair<double, double> StokesEngine::f_functions(double x, double y) const {
  const StokesPoint p = point(x, y);
  const double norm = 1.0 / (2.0 * M_PI * scales_.tau_coh);
  return {p.F1 * norm, p.F2 * norm};
}

std::pair<double, double> StokesEngine::h_functions(double x, double y) const {
  const StokesPoint p = point(x, y);
  const double norm = 1.0 / (2.0 * M_PI * scales_.tau_coh);
  return {p.H1 * norm, p.H2 * norm};
}

double StokesEngine::observable(MapKind kind, const StokesPoint& at_x,
                                const StokesPoint& at_minus_x) const {
  const double both = at_x.shot + at_minus_x.shot;
  switch (kind) {
    case MapKind::s2diff:
      return 2.0 * (at_x.H1 - at_x.H2) / both;
    case MapKind::s1sum:
      return 2.0 * (at_x.F1 - at_x.F2) / both;
    case MapKind::single_pixel_s2:
      return at_x.H1 / at_x.shot;
    case MapKind::dop:
      return (at_x.int_o - at_x.int_e) / (at_x.int_o + at_x.int_e);
    case MapKind::intensity:
      return (at_x.int_o + at_x.int_e) / (2.0 * M_PI * scales_.tau_coh);
  }
  return 0.0;
}

FarFieldMap StokesEngine::noise_map(MapKind kind, int nx, int ny,
                                    double extent) const {
  FarFieldMap map;
  map.nx = nx;
  map.ny = ny;
  map.extent = extent;
  map.kind = kind;
  map.sigma = cfg_.sigma;
  map.filter = filter_;
  map.comp = comp_;
  map.values.assign(static_cast<std::size_t>(nx) * ny, 0.0);

  const bool symmetric = kind == MapKind::s2diff || kind == MapKind::s1sum ||
                         kind == MapKind::single_pixel_s2;

  // Each symmetric cell pair is evaluated once; the mirror cell reuses the
  // same quadrature result, so map(x) == map(-x) holds exactly.
  std::vector<std::pair<int, int>> cells;
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const long idx = static_cast<long>(iy) * nx + ix;
      const long mirror = static_cast<long>(ny - 1 - iy) * nx + (nx - 1 - ix);
      if (idx <= mirror) cells.emplace_back(ix, iy);
    }

  parallel_for(cells.size(), [&](std::size_t i) {
    const auto [ix, iy] = cells[i];
    const double x = map.x_of(ix);
    const double y = map.y_of(iy);
    const StokesPoint p1 = point(x, y);
    const StokesPoint p2 = point(-x, -y);
    map.at(ix, iy) = observable(kind, p1, p2);
    const int mx = nx - 1 - ix;
    const int my = ny - 1 - iy;
    if (mx != ix || my != iy)
      map.at(mx, my) =
          symmetric ? map.at(ix, iy) : observable(kind, p2, p1);
  });
  return map;
}

std::vector<std::pair<double, double>> StokesEngine::ring_profile(
    MapKind kind, int n_samples) const {
  const double C = scales_.qC / scales_.q0;
  const double R = std::sqrt(scales_.delta0 + C * C);
  std::vector<std::pair<double, double>> out(static_cast<std::size_t>(n_samples));
  parallel_for(out.size(), [&](std::size_t i) {
    const double a = 2.0 * M_PI * static_cast<double>(i) / n_samples;
    const double x = R * std::sin(a);
    const double y = C - R * std::cos(a);
    const StokesPoint p1 = point(x, y);
    const StokesPoint p2 = point(-x, -y);
    out[i] = {a, observable(kind, p1, p2)};
  });
  return out;
}

std::vector<std::pair<double, double>> StokesEngine::line_profile(
    MapKind kind, double x0, double y0, double x1, double y1,
    int n_samples) const {
  const double len = std::hypot(x1 - x0, y1 - y0);
  std::vector<std::pair<double, double>> out(static_cast<std::size_t>(n_samples));
  parallel_for(out.size(), [&](std::size_t i) {
    const double t =
        n_samples > 1 ? static_cast<double>(i) / (n_samples - 1) : 0.0;
    const double x = x0 + t * (x1 - x0);
    const double y = y0 + t * (y1 - y0);
    const StokesPoint p1 = point(x, y);
    const StokesPoint p2 = point(-x, -y);
    out[i] = {t * len, observable(kind, p1, p2)};
  });
  return out;
}

}
