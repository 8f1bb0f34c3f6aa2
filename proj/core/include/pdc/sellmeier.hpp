#pragma once

#include <cmath>

#include "pdc/dual.hpp"
#include "pdc/errors.hpp"

namespace pdc {

// One squared-index dispersion formula
//   n^2(lambda) = A + B / (lambda^2 - C) - D * lambda^2,   lambda in micrometers.
struct SellmeierBranch {
  double A = 0.0;  // constant term
  double B = 0.0;  // resonance numerator
  double C = 0.0;  // resonance wavelength^2 offset
  double D = 0.0;  // infrared quadratic term
};

// Dispersion data for a uniaxial crystal: ordinary branch and principal
// extraordinary branch. Wavelength convention is micrometers inside the
// formulas; the public API takes meters.
struct SellmeierSet {
  SellmeierBranch ordinary;
  SellmeierBranch extraordinary;  // principal value, theta = pi/2
  double band_min = 0.2e-6;       // supported wavelength band, meters
  double band_max = 3.0e-6;

  // n^2 as a function of wavelength in micrometers; generic so it can be
  // evaluated on Dual2 for derivatives.
  template <class T>
  T n2(const SellmeierBranch& b, const T& lam_um) const {
    return b.A + b.B / (lam_um * lam_um - b.C) - b.D * (lam_um * lam_um);
  }

  void check_wavelength(double lambda_m) const {
    if (!(lambda_m >= band_min && lambda_m <= band_max))
      throw domain_error("wavelength " + std::to_string(lambda_m * 1e9) +
                         " nm outside supported band [" +
                         std::to_string(band_min * 1e9) + ", " +
                         std::to_string(band_max * 1e9) + "] nm");
  }

  double n_ordinary(double lambda_m) const {
    check_wavelength(lambda_m);
    return std::sqrt(n2(ordinary, lambda_m * 1e6));
  }

  // Principal extraordinary index (propagation perpendicular to the axis).
  double n_extraordinary_principal(double lambda_m) const {
    check_wavelength(lambda_m);
    return std::sqrt(n2(extraordinary, lambda_m * 1e6));
  }
};

// Beta barium borate, Kato (1986) coefficients. Negative uniaxial.
inline SellmeierSet bbo_sellmeier() {
  SellmeierSet s;
  s.ordinary = {2.7359, 0.01878, 0.01822, 0.01354};
  s.extraordinary = {2.3753, 0.01224, 0.01667, 0.01516};
  return s;
}

}
