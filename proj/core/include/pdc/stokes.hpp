#pragma once

#include <array>
#include <string>
#include <vector>

#include "pdc/gain.hpp"

namespace pdc {

struct FilterSpec {
  enum class Kind { none, step, gaussian };
  Kind kind = Kind::step;
  double fwhm_lambda = 8e-9;  // FWHM bandwidth, meters

  // Full width of the transmission band in angular frequency around the
  // degenerate frequency.
  double fwhm_omega(double lambda0) const {
    return 2.0 * M_PI * speed_of_light * fwhm_lambda / (lambda0 * lambda0);
  }
  // Transmission f(Omega) in [0, 1]; symmetric by construction.
  double transmission(double Omega, double lambda0) const;
  void validate() const;
};

struct DetectionParams {
  double focal_length = 0.1;       // m
  double detection_time = 1e-3;    // s (cancels in every reported ratio)
  double resolution_area = 1e-8;   // m^2 (cancels likewise)
};

// Frequency-resolved second moments at one far-field point, after the filter
// and (optionally) the compensation crystal. Positions are scaled by X0, so
// x corresponds to the transverse wavevector q = x * q0.
struct SecondMoments {
  double n_o = 0.0;        // f(w) <a_o^dag a_o>
  double n_e = 0.0;
  complexd anomalous_oe;   // sqrt(f(w) f(-w)) U_o(x,w) V_e(-x,-w)
  complexd anomalous_eo;   // sqrt(f(w) f(-w)) U_e(x,w) V_o(-x,-w)
};

// All frequency integrals needed by the observable maps at one scaled
// position (integrals are over the filter band, d(Omega*tau)).
struct StokesPoint {
  double F1 = 0.0, F2 = 0.0;   // same-polarization (number) correlations
  double H1 = 0.0, H2 = 0.0;   // crossed-polarization correlations
  double shot = 0.0;           // single-pixel shot level, integral of f(n_o+n_e)
  double int_o = 0.0;          // per-polarization filtered photon number
  double int_e = 0.0;
  int evaluations = 0;
};

enum class MapKind { s2diff, s1sum, single_pixel_s2, dop, intensity };

MapKind map_kind_from_string(const std::string& name);
std::string to_string(MapKind k);

struct FarFieldMap {
  int nx = 0, ny = 0;
  double extent = 4.0;              // |x|/X0 half-span
  std::vector<double> values;       // row-major, ny rows of nx
  MapKind kind = MapKind::s2diff;
  double sigma = 0.0;
  FilterSpec filter;
  CompensationSpec comp;

  double x_of(int ix) const { return -extent + (ix + 0.5) * 2.0 * extent / nx; }
  double y_of(int iy) const { return -extent + (iy + 0.5) * 2.0 * extent / ny; }
  double& at(int ix, int iy) { return values[static_cast<std::size_t>(iy) * nx + ix]; }
  double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * nx + ix]; }
};

// Evaluator for the far-field observables of one crystal configuration.
class StokesEngine {
public:
  StokesEngine(const CrystalConfig& cfg, const DerivedScales& scales,
               FilterSpec filter, CompensationSpec comp);

  // Raw filtered moments at scaled position x and frequency offset Omega.
  SecondMoments filtered_second_moments(double x, double y, double Omega) const;

  // (<S0>, <S1>, <S2>, <S3>) per unit detection time and resolution area.
  // <S2> and <S3> vanish identically in this model.
  std::array<double, 4> mean_stokes(double x, double y) const;

  // Frequency integrals at the zero-frequency point of the correlation
  // spectra.
  std::pair<double, double> f_functions(double x, double y) const;
  std::pair<double, double> h_functions(double x, double y) const;

  // Every integral at once (one adaptive quadrature pass).
  StokesPoint point(double x, double y) const;

  // The scalar observable of the given kind, built from one or two symmetric
  // points.
  double observable(MapKind kind, const StokesPoint& at_x,
                    const StokesPoint& at_minus_x) const;

  FarFieldMap noise_map(MapKind kind, int nx, int ny, double extent) const;

  // Profile along the maximum-gain ring (azimuth samples over [0, 2pi)) or
  // along a straight segment in scaled coordinates.
  std::vector<std::pair<double, double>> ring_profile(MapKind kind,
                                                      int n_samples) const;
  std::vector<std::pair<double, double>> line_profile(MapKind kind, double x0,
                                                      double y0, double x1,
                                                      double y1,
                                                      int n_samples) const;

  const DerivedScales& scales() const { return scales_; }
  const CrystalConfig& config() const { return cfg_; }
  const CompensationSpec& compensation() const { return comp_; }
  const FilterSpec& filter() const { return filter_; }

private:
  std::array<double, 2> integration_range() const;  // in u = Omega * tau

  CrystalConfig cfg_;
  DerivedScales scales_;
  FilterSpec filter_;
  CompensationSpec comp_;
};

}
