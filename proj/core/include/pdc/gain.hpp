#pragma once

#include <complex>

#include "pdc/crystal.hpp"

namespace pdc {

using complexd = std::complex<double>;

enum class MismatchMode { paraxial, exact };

// Gain coefficients of the two-mode squeezing transformation at one (q, Omega),
// together with the decomposition into squeeze parameter and phases.
struct GainSample {
  complexd U;        // includes the global exp(i k_p lc / 2) factor
  complexd V;
  double phi = 0.0;      // propagation phase (lc/2)[k_oz(q,W) - k_ez(-q,-W)]
  double Delta = 0.0;    // dimensionless mismatch
  complexd Gamma;        // sqrt(sigma^2 - Delta^2/4), analytically continued
  double r = 0.0;        // squeeze parameter, asinh|V|
  double psi = 0.0;      // phase of the squeeze direction, (arg U + arg V)/2
  double theta_ph = 0.0; // residual phase, (arg U - arg V)/2
};

struct CompensationSpec {
  bool enabled = false;
  double length_ratio = 0.5;  // l'_c / l_c in [0, 1]
};

// Dimensionless phase mismatch of the ordinary wave at (q, Omega) paired with
// the extraordinary wave at (-q, -Omega). Paraxial mode uses the quadratic
// expansion; exact mode uses the full longitudinal wavevectors (and needs cfg).
double mismatch(double qx, double qy, double Omega, const DerivedScales& s,
                MismatchMode mode = MismatchMode::paraxial,
                const CrystalConfig* cfg = nullptr);

// sinh(z)/z with a series fallback near z = 0; continues to sin through
// imaginary argument automatically.
complexd sinhc(const complexd& z);

GainSample gain_at(double qx, double qy, double Omega, double sigma,
                   const DerivedScales& s,
                   MismatchMode mode = MismatchMode::paraxial,
                   const CrystalConfig* cfg = nullptr);

// Phase picked up in the compensation crystal,
//   phi_c(q, Omega) = [Delta(-q,-Omega) - Delta(q,Omega)] * l'_c / l_c.
double compensation_phase(double qx, double qy, double Omega,
                          const DerivedScales& s, const CompensationSpec& comp,
                          MismatchMode mode = MismatchMode::paraxial,
                          const CrystalConfig* cfg = nullptr);

// Compensation length that minimizes the residual phase: lc * tanh(sigma)/(2 sigma),
// with the small-sigma limit lc/2 handled by series.
double optimal_compensation_length(double sigma, double lc);

// Phase 2*psi of the squeeze direction: exact atan form and the small-gain
// approximation Delta * tanh(sigma) / (2 sigma).
double two_psi_exact(double Delta, double sigma);
double two_psi_approx(double Delta, double sigma);

struct UnitarityResiduals {
  double max_norm = 0.0;   // max | |U|^2 - |V|^2 - 1 |
  double max_cross = 0.0;  // max | U_o(x) V_e(-x) - V_o(x) U_e(-x) | composed pairwise
};

// Scan a centered grid of nq x nq transverse points (|q| <= q_span) and
// nw frequency points (|Omega| <= w_span) and report the worst residuals of
// the two unitarity identities.
UnitarityResiduals unitarity_residuals(int nq, int nw, double q_span,
                                       double w_span, double sigma,
                                       const DerivedScales& s);

}
