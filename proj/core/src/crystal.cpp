#include "pdc/crystal.hpp"

#include <cmath>
#include <string>

namespace pdc {

void CrystalConfig::validate() const {
  if (!(length > 0.0)) throw config_error("crystal length must be > 0");
  if (!(pump_wavelength > 0.0)) throw config_error("pump wavelength must be > 0");
  if (!(sigma >= 0.0)) throw config_error("gain sigma must be >= 0");
  if (!(cut_angle > 0.0 && cut_angle < M_PI / 2.0))
    throw config_error("cut angle must be in (0, pi/2)");
  sellmeier.check_wavelength(pump_wavelength);
  sellmeier.check_wavelength(degenerate_wavelength());
}

double refractive_index(const CrystalConfig& cfg, Polarization pol,
                        double lambda_m, double angle_to_axis) {
  const SellmeierSet& s = cfg.sellmeier;
  if (pol == Polarization::ordinary) return s.n_ordinary(lambda_m);
  s.check_wavelength(lambda_m);
  const double lam_um = lambda_m * 1e6;
  const double n2o = s.n2(s.ordinary, lam_um);
  const double n2e = s.n2(s.extraordinary, lam_um);
  const double c = std::cos(angle_to_axis);
  const double sn = std::sin(angle_to_axis);
  return 1.0 / std::sqrt(c * c / n2o + sn * sn / n2e);
}

double kz_exact(const CrystalConfig& cfg, Polarization pol, double qx,
                double qy, double Omega) {
  const double omega = cfg.degenerate_omega() + Omega;
  const double lambda = 2.0 * M_PI * speed_of_light / omega;
  const double q2 = qx * qx + qy * qy;

  if (pol == Polarization::ordinary) {
    const double k = cfg.sellmeier.n_ordinary(lambda) * omega / speed_of_light;
    if (k * k < q2)
      throw domain_error("evanescent ordinary wave: |q| exceeds k");
    return std::sqrt(k * k - q2);
  }

  // The extraordinary index depends on the angle between the propagation
  // direction and the optic axis, which itself depends on kz. The axis is
  // taken as (0, -sin(theta_c), cos(theta_c)) in the (x, y, z) frame of the
  // pump, so kz decreases along +qy (walk-off convention of the mismatch).
  const double st = std::sin(cfg.cut_angle);
  const double ct = std::cos(cfg.cut_angle);
  double chi = cfg.cut_angle;
  double kz = 0.0;
  const int max_iter = 50;
  for (int it = 0; it < max_iter; ++it) {
    const double n = refractive_index(cfg, Polarization::extraordinary, lambda, chi);
    const double k = n * omega / speed_of_light;
    if (k * k < q2)
      throw domain_error("evanescent extraordinary wave: |q| exceeds k");
    kz = std::sqrt(k * k - q2);
    const double cos_chi = (-qy * st + kz * ct) / k;
    const double chi_new = std::acos(std::fmin(1.0, std::fmax(-1.0, cos_chi)));
    if (std::fabs(chi_new - chi) < 1e-12) return kz;
    chi = chi_new;
  }
  throw numeric_error("extraordinary-angle iteration did not converge in " +
                      std::to_string(max_iter) + " iterations");
}

double kz_paraxial(const DerivedScales& s, Polarization pol, double qx,
                   double qy, double Omega) {
  const double q2 = qx * qx + qy * qy;
  if (pol == Polarization::ordinary)
    return s.k_o + Omega / s.vg_o + 0.5 * s.gvd_o * Omega * Omega -
           q2 / (2.0 * s.k_o);
  return s.k_e + Omega / s.vg_e + 0.5 * s.gvd_e * Omega * Omega -
         s.rho_e * qy - q2 / (2.0 * s.k_e);
}

DerivedScales derive_scales(const CrystalConfig& cfg, double focal_length) {
  cfg.validate();
  DerivedScales s;
  s.lc = cfg.length;
  s.focal_length = focal_length;

  const double w0 = cfg.degenerate_omega();
  const double lambda = cfg.degenerate_wavelength();
  const double theta = cfg.cut_angle;

  s.n_o = refractive_index(cfg, Polarization::ordinary, lambda, 0.0);
  s.n_e = refractive_index(cfg, Polarization::extraordinary, lambda, theta);
  const double n_p =
      refractive_index(cfg, Polarization::extraordinary, cfg.pump_wavelength, theta);

  s.k_o = s.n_o * w0 / speed_of_light;
  s.k_e = s.n_e * w0 / speed_of_light;
  s.k_p = n_p * cfg.pump_omega() / speed_of_light;
  s.delta0 = (s.k_o + s.k_e - s.k_p) * s.lc;

  // k_i(Omega) on dual numbers: lambda(omega) feeds the Sellmeier chain.
  const SellmeierSet& sm = cfg.sellmeier;
  const Dual2 w = Dual2::variable(w0);  // differentiates with respect to Omega
  const Dual2 lam_um = (2.0 * M_PI * speed_of_light * 1e6) / w;
  const Dual2 n2o = sm.n2(sm.ordinary, lam_um);
  const Dual2 n2e = sm.n2(sm.extraordinary, lam_um);
  const Dual2 ko = sqrt(n2o) * w / speed_of_light;
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  const Dual2 ne = 1.0 / sqrt(Dual2::constant(c2) / n2o + Dual2::constant(s2) / n2e);
  const Dual2 ke = ne * w / speed_of_light;

  s.vg_o = 1.0 / ko.d1;
  s.vg_e = 1.0 / ke.d1;
  s.gvd_o = ko.d2;
  s.gvd_e = ke.d2;
  s.tau_coh = s.lc * (ko.d1 - ke.d1);
  s.epsilon = s.lc * (s.gvd_o + s.gvd_e) / (s.tau_coh * s.tau_coh);

  const double n_ebar = sm.n_extraordinary_principal(lambda);
  s.rho_e = std::atan(0.5 * s.n_e * s.n_e * std::sin(2.0 * theta) *
                      (1.0 / (n_ebar * n_ebar) - 1.0 / (s.n_o * s.n_o)));
  s.walkoff = s.rho_e * s.lc;

  s.q0 = std::sqrt(2.0 * s.k_o * s.k_e / (s.lc * (s.k_o + s.k_e)));
  s.l_coh = 1.0 / s.q0;
  s.qC = 0.5 * s.q0 * s.q0 * s.walkoff;
  s.X0 = lambda * focal_length * s.q0 / (2.0 * M_PI);
  return s;
}

}
