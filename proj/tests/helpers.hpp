#pragma once

#include <cmath>

#include "pdc/crystal.hpp"

namespace testutil {

inline pdc::CrystalConfig bbo_config(double sigma = 2.0) {
  pdc::CrystalConfig cfg;
  cfg.sigma = sigma;
  return cfg;
}

inline pdc::DerivedScales bbo_scales(double sigma = 2.0,
                                     double focal = 0.1) {
  return pdc::derive_scales(bbo_config(sigma), focal);
}

// Reference values for the shipped crystal defaults (lc = 2 mm,
// pump 351 nm, cut 49.6 deg, focal length 100 mm), frozen from independent
// high-precision evaluation of the same formulas.
namespace golden {
inline constexpr double n_o_702 = 1.6639708327512913;
inline constexpr double n_ebar_702 = 1.5471057301348199;
inline constexpr double n_e_702_cut = 1.5931198203293690;
inline constexpr double n_e_351_cut = 1.6280945995704569;
inline constexpr double delta0 = 16.136758260154417;
inline constexpr double tau_coh = 5.0051337743737756e-13;
inline constexpr double epsilon = 1.3035815094357860e-3;
inline constexpr double rho_e = 0.070814353013846216;
inline constexpr double vg_o = 177111623.81057608;
inline constexpr double vg_e = 185325891.59802787;
inline constexpr double gvd_o = 9.1208459801717695e-26;
inline constexpr double gvd_e = 7.2074015328739455e-26;
inline constexpr double q0 = 85350.000912498112;
inline constexpr double l_coh = 1.1716461503324557e-5;
inline constexpr double qC = 515855.84031789339;
inline constexpr double qR = 619400.87407314693;
inline constexpr double X0 = 9.5358799257615399e-4;
inline constexpr double theta_pm_deg = 49.222706276938204;
}  // namespace golden

// Scaled coordinates of the two intersections of the degenerate rings.
inline double intersection_x() { return std::sqrt(golden::delta0); }

}  // namespace testutil
