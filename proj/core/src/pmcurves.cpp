#include "pdc/pmcurves.hpp"

#include <algorithm>
#include <cmath>

namespace pdc {

std::optional<RingGeometry> ring_center_radius(double Omega,
                                               const DerivedScales& s) {
  const double c = s.qC / s.q0;
  const double wt = Omega * s.tau_coh;
  const double radicand = s.delta0 + c * c + wt + 0.5 * s.epsilon * wt * wt;
  if (radicand < 0.0) return std::nullopt;
  return RingGeometry{s.qC, s.q0 * std::sqrt(radicand)};
}

double conjugate_wavelength(double lambda_signal, double lambda_pump) {
  return 1.0 / (1.0 / lambda_pump - 1.0 / lambda_signal);
}

PolarCurve pm_locus(const CrystalConfig& cfg, const DerivedScales& s,
                    double lambda, Branch branch, MismatchMode mode,
                    int n_samples) {
  PolarCurve curve;
  curve.wavelength = lambda;
  curve.branch = branch;
  curve.mode = mode;

  const double Omega = 2.0 * M_PI * speed_of_light / lambda - cfg.degenerate_omega();
  const double sign = branch == Branch::signal ? 1.0 : -1.0;

  const auto D = [&](double qx, double qy) {
    return mismatch(sign * qx, sign * qy, sign * Omega, s, mode, &cfg);
  };

  const double r_max = 0.15 * s.k_o;
  const int scan = 512;

  for (int i = 0; i < n_samples; ++i) {
    const double phi = 2.0 * M_PI * i / n_samples;
    const double cx = std::cos(phi);
    const double cy = std::sin(phi);
    int found = 0;

    double r_prev = r_max * 1e-9;
    double d_prev;
    bool have_prev = true;
    try {
      d_prev = D(r_prev * cx, r_prev * cy);
    } catch (const domain_error&) {
      have_prev = false;
      d_prev = 0.0;
    }
    for (int j = 1; j <= scan; ++j) {
      const double r = r_max * j / scan;
      double d;
      try {
        d = D(r * cx, r * cy);
      } catch (const domain_error&) {
        break;  // evanescent beyond here
      }
      if (have_prev && d_prev * d <= 0.0 && (d_prev != 0.0 || d != 0.0)) {
        double lo = r_prev, hi = r, dlo = d_prev;
        while (hi - lo > 1e-6) {
          const double midr = 0.5 * (lo + hi);
          const double dm = D(midr * cx, midr * cy);
          if (dlo * dm <= 0.0) {
            hi = midr;
          } else {
            lo = midr;
            dlo = dm;
          }
        }
        const double root = 0.5 * (lo + hi);
        const double st = root * lambda / (2.0 * M_PI);
        if (st <= 1.0) {
          curve.samples.push_back({phi, std::asin(st), root});
          ++found;
        }
      }
      r_prev = r;
      d_prev = d;
      have_prev = true;
    }
    if (found == 0) ++curve.failed_azimuths;
  }

  std::sort(curve.samples.begin(), curve.samples.end(),
            [](const PolarSample& a, const PolarSample& b) {
              if (a.phi != b.phi) return a.phi < b.phi;
              return a.theta_ext < b.theta_ext;
            });
  return curve;
}

EllipseLocus correlated_ellipse(const DerivedScales& s, double Omega_band,
                                int n_samples) {
  EllipseLocus locus;
  locus.semi_axis_x = s.q0 * std::sqrt(std::max(0.0, s.delta0));
  double max_qy = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double Omega =
        n_samples > 1 ? -Omega_band + 2.0 * Omega_band * i / (n_samples - 1)
                      : 0.0;
    const double wt = Omega * s.tau_coh;
    // antisymmetric part: 2 walkoff qy + 2 Omega tau = 0
    const double qy = -wt / s.walkoff;
    // symmetric part: delta0 - q^2/q0^2 + eps (Omega tau)^2 / 2 = 0
    const double q2 = s.q0 * s.q0 * (s.delta0 + 0.5 * s.epsilon * wt * wt);
    const double qx2 = q2 - qy * qy;
    if (qx2 < 0.0) continue;
    const double qx = std::sqrt(qx2);
    locus.points.push_back({Omega, qx, qy});
    if (qx > 0.0) locus.points.push_back({Omega, -qx, qy});
    max_qy = std::max(max_qy, std::fabs(qy));
  }
  locus.semi_axis_y = max_qy;
  if (locus.semi_axis_x > 0.0 && locus.semi_axis_y > 0.0) {
    const double a = std::max(locus.semi_axis_x, locus.semi_axis_y);
    const double b = std::min(locus.semi_axis_x, locus.semi_axis_y);
    locus.eccentricity = std::sqrt(1.0 - (b * b) / (a * a));
  }
  return locus;
}

}
