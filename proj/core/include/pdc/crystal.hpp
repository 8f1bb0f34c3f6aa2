#pragma once

#include <cmath>

#include "pdc/sellmeier.hpp"

namespace pdc {

inline constexpr double speed_of_light = 299792458.0;  // m/s

enum class Polarization { ordinary, extraordinary };

// Physical description of the crystal and pump.
struct CrystalConfig {
  SellmeierSet sellmeier = bbo_sellmeier();
  double cut_angle = 49.6 * M_PI / 180.0;  // pump direction to optic axis, rad
  double length = 2e-3;                    // crystal length l_c, meters
  double pump_wavelength = 351e-9;         // meters
  double sigma = 2.0;                      // dimensionless gain

  void validate() const;

  double pump_omega() const { return 2.0 * M_PI * speed_of_light / pump_wavelength; }
  double degenerate_omega() const { return 0.5 * pump_omega(); }
  double degenerate_wavelength() const { return 2.0 * pump_wavelength; }
};

// Scales of the quadratic mismatch expansion plus a few carrier quantities.
struct DerivedScales {
  double delta0 = 0.0;    // collinear mismatch, dimensionless
  double q0 = 0.0;        // transverse bandwidth, 1/m
  double l_coh = 0.0;     // 1/q0, m
  double tau_coh = 0.0;   // signal-idler group delay over the crystal, s
  double epsilon = 0.0;   // temporal-dispersion parameter, dimensionless
  double walkoff = 0.0;   // rho_e * lc, m (the walk-off angle times length)
  double rho_e = 0.0;     // walk-off angle, rad
  double qC = 0.0;        // ring-center offset on the walk-off axis, 1/m
  double X0 = 0.0;        // far-field scale for the given focal length, m
  double focal_length = 0.0;  // m

  double n_o = 0.0;       // carrier ordinary index at the degenerate wavelength
  double n_e = 0.0;       // carrier extraordinary index at the cut angle
  double k_o = 0.0;       // carrier wavevectors, 1/m
  double k_e = 0.0;
  double k_p = 0.0;       // pump wavevector, 1/m
  double lc = 0.0;        // crystal length copy, m
  double vg_o = 0.0;      // group velocities, m/s
  double vg_e = 0.0;
  double gvd_o = 0.0;     // d2k/dOmega2, s^2/m
  double gvd_e = 0.0;
};

// Index of refraction for a propagation direction at `angle_to_axis` to the
// optic axis. The angle is ignored for the ordinary polarization.
double refractive_index(const CrystalConfig& cfg, Polarization pol,
                        double lambda_m, double angle_to_axis);

// Longitudinal wavevector at frequency omega_p/2 + Omega without paraxial
// expansion. The transverse wavevector is (qx, qy); the optic axis lies in the
// z-y plane, tilted so that the extraordinary kz decreases along +qy.
// The extraordinary index is iterated to self-consistency in the propagation
// angle (tolerance 1e-12, max 50 iterations).
double kz_exact(const CrystalConfig& cfg, Polarization pol, double qx,
                double qy, double Omega);

// Longitudinal wavevector in the quadratic expansion that defines the
// paraxial mismatch.
double kz_paraxial(const DerivedScales& s, Polarization pol, double qx,
                   double qy, double Omega);

// Populate every derived scale from the crystal description. Group velocities
// and GVD come from dual-number differentiation of the Sellmeier forms; the
// walk-off angle from the standard uniaxial formula at the cut angle.
DerivedScales derive_scales(const CrystalConfig& cfg, double focal_length);

}
