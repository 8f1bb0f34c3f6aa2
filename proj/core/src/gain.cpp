#include "pdc/gain.hpp"

#include <cmath>

namespace pdc {

double mismatch(double qx, double qy, double Omega, const DerivedScales& s,
                MismatchMode mode, const CrystalConfig* cfg) {
  if (mode == MismatchMode::paraxial) {
    const double q2 = qx * qx + qy * qy;
    const double wt = Omega * s.tau_coh;
    return s.delta0 + s.walkoff * qy - q2 / (s.q0 * s.q0) + wt +
           0.5 * s.epsilon * wt * wt;
  }
  if (cfg == nullptr)
    throw domain_error("exact mismatch requires the crystal configuration");
  const double kzo = kz_exact(*cfg, Polarization::ordinary, qx, qy, Omega);
  const double kze = kz_exact(*cfg, Polarization::extraordinary, -qx, -qy, -Omega);
  return s.lc * (kzo + kze - s.k_p);
}

complexd sinhc(const complexd& z) {
  if (std::abs(z) < 1e-4) {
    const complexd z2 = z * z;
    return 1.0 + z2 / 6.0 * (1.0 + z2 / 20.0);
  }
  return std::sinh(z) / z;
}

GainSample gain_at(double qx, double qy, double Omega, double sigma,
                   const DerivedScales& s, MismatchMode mode,
                   const CrystalConfig* cfg) {
  GainSample g;
  g.Delta = mismatch(qx, qy, Omega, s, mode, cfg);
  g.Gamma = std::sqrt(complexd(sigma * sigma - 0.25 * g.Delta * g.Delta, 0.0));
  const complexd sc = sinhc(g.Gamma);
  const complexd global = std::polar(1.0, 0.5 * s.k_p * s.lc);
  g.U = global * (std::cosh(g.Gamma) + complexd(0.0, 0.5 * g.Delta) * sc);
  g.V = global * (sigma * sc);

  double kzo, kze;
  if (mode == MismatchMode::paraxial) {
    kzo = kz_paraxial(s, Polarization::ordinary, qx, qy, Omega);
    kze = kz_paraxial(s, Polarization::extraordinary, -qx, -qy, -Omega);
  } else {
    kzo = kz_exact(*cfg, Polarization::ordinary, qx, qy, Omega);
    kze = kz_exact(*cfg, Polarization::extraordinary, -qx, -qy, -Omega);
  }
  g.phi = 0.5 * s.lc * (kzo - kze);

  const complexd Ub = g.U / global;
  const complexd Vb = g.V / global;
  g.r = std::asinh(std::abs(Vb));
  if (std::abs(Vb) > 0.0) {
    g.psi = 0.5 * std::arg(Ub * Vb);
    g.theta_ph = 0.5 * (std::arg(Ub) - std::arg(Vb));
  }
  return g;
}

double compensation_phase(double qx, double qy, double Omega,
                          const DerivedScales& s, const CompensationSpec& comp,
                          MismatchMode mode, const CrystalConfig* cfg) {
  if (!comp.enabled) return 0.0;
  const double d_fwd = mismatch(qx, qy, Omega, s, mode, cfg);
  const double d_rev = mismatch(-qx, -qy, -Omega, s, mode, cfg);
  return (d_rev - d_fwd) * comp.length_ratio;
}

double optimal_compensation_length(double sigma, double lc) {
  if (sigma < 1e-4)
    return lc * (0.5 - sigma * sigma / 6.0);
  return lc * std::tanh(sigma) / (2.0 * sigma);
}

static double tanhc_real(double sigma, double Delta) {
  // tanh(Gamma)/Gamma, real for both real and imaginary Gamma.
  const complexd G = std::sqrt(complexd(sigma * sigma - 0.25 * Delta * Delta, 0.0));
  if (std::abs(G) < 1e-4) {
    const complexd G2 = G * G;
    return (1.0 - G2 / 3.0 * (1.0 - 2.0 * G2 / 5.0)).real();
  }
  return (std::tanh(G) / G).real();
}

double two_psi_exact(double Delta, double sigma) {
  return std::atan(0.5 * Delta * tanhc_real(sigma, Delta));
}

double two_psi_approx(double Delta, double sigma) {
  if (sigma < 1e-4) return 0.5 * Delta * (1.0 - sigma * sigma / 3.0);
  return Delta * std::tanh(sigma) / (2.0 * sigma);
}

UnitarityResiduals unitarity_residuals(int nq, int nw, double q_span,
                                       double w_span, double sigma,
                                       const DerivedScales& s) {
  UnitarityResiduals res;
  for (int iy = 0; iy < nq; ++iy) {
    const double qy = nq > 1 ? -q_span + 2.0 * q_span * iy / (nq - 1) : 0.0;
    for (int ix = 0; ix < nq; ++ix) {
      const double qx = nq > 1 ? -q_span + 2.0 * q_span * ix / (nq - 1) : 0.0;
      for (int iw = 0; iw < nw; ++iw) {
        const double W = nw > 1 ? -w_span + 2.0 * w_span * iw / (nw - 1) : 0.0;
        const GainSample g = gain_at(qx, qy, W, sigma, s);
        const double norm = std::norm(g.U) - std::norm(g.V) - 1.0;
        if (std::fabs(norm) > res.max_norm) res.max_norm = std::fabs(norm);
        // Composed coefficients of the two polarizations at (q,W), (-q,-W):
        //   U_o(x) = U(x) e^{i phi(x)},   V_e(-x) = V(x) e^{-i phi(x)}, etc.
        const complexd ph = std::polar(1.0, g.phi);
        const complexd cross =
            (g.U * ph) * (g.V / ph) - (g.V * ph) * (g.U / ph);
        if (std::abs(cross) > res.max_cross) res.max_cross = std::abs(cross);
      }
    }
  }
  return res;
}

}
