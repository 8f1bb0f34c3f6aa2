#pragma once

#include <optional>
#include <vector>

#include "pdc/gain.hpp"

namespace pdc {

struct RingGeometry {
  double qC = 0.0;  // center (0, qC), 1/m
  double qR = 0.0;  // radius, 1/m
};

// Center and radius of the circle of perfect phase matching at frequency
// offset Omega, or nothing when the radicand goes negative (no real ring).
std::optional<RingGeometry> ring_center_radius(double Omega,
                                               const DerivedScales& s);

enum class Branch { signal, idler };

struct PolarSample {
  double phi = 0.0;        // azimuth, rad
  double theta_ext = 0.0;  // external polar angle, rad
  double q = 0.0;          // internal transverse wavevector modulus, 1/m
};

struct PolarCurve {
  double wavelength = 0.0;
  Branch branch = Branch::signal;
  MismatchMode mode = MismatchMode::paraxial;
  std::vector<PolarSample> samples;  // sorted by phi (then theta)
  int failed_azimuths = 0;           // azimuths with no bracketed root
};

// Conjugate wavelength from energy conservation 1/lambda_p = 1/l_s + 1/l_i.
double conjugate_wavelength(double lambda_signal, double lambda_pump);

// Trace the phase-matching locus theta(phi) for the given wavelength.
// The signal branch solves Delta(q, Omega) = 0 for the ordinary wave at
// lambda; the idler branch solves Delta(-q, -Omega) = 0. External angles come
// from transverse-wavevector conservation at the exit face,
// theta_ext = asin(q lambda / 2 pi). Rings that do not enclose the origin
// produce up to two samples per azimuth.
PolarCurve pm_locus(const CrystalConfig& cfg, const DerivedScales& s,
                    double lambda, Branch branch, MismatchMode mode,
                    int n_samples);

struct EllipsePoint {
  double Omega = 0.0;
  double qx = 0.0, qy = 0.0;  // 1/m; the mirror point (-qx,-qy) also solves
};

struct EllipseLocus {
  std::vector<EllipsePoint> points;
  double semi_axis_x = 0.0;  // 1/m, at Omega = 0
  double semi_axis_y = 0.0;  // 1/m, extreme |qy| over the band
  double eccentricity = 0.0;
};

// Modes perfectly matched simultaneously with their conjugates:
// Delta(q, Omega) = Delta(-q, -Omega) = 0. Subtracting the two conditions
// pins qy; the remaining circle equation gives qx.
EllipseLocus correlated_ellipse(const DerivedScales& s, double Omega_band,
                                int n_samples);

}
