#include <doctest.h>

#include <cmath>
#include <random>

#include "pdc/gain.hpp"
#include "helpers.hpp"

using namespace pdc;
using namespace testutil;

TEST_CASE("mismatch at the origin equals the collinear value") {
  const DerivedScales s = bbo_scales();
  CHECK(mismatch(0.0, 0.0, 0.0, s) ==
        doctest::Approx(golden::delta0).epsilon(1e-12));
}

TEST_CASE("mismatch vanishes on the maximum-gain ring") {
  const DerivedScales s = bbo_scales();
  const double R = golden::qR;
  for (int i = 0; i < 24; ++i) {
    const double a = 2.0 * M_PI * i / 24;
    const double qx = R * std::sin(a);
    const double qy = golden::qC - R * std::cos(a);
    CHECK(std::fabs(mismatch(qx, qy, 0.0, s)) < 1e-9);
  }
}

TEST_CASE("paraxial and exact mismatches agree over the filter band") {
  CrystalConfig cfg = bbo_config();
  const DerivedScales s = bbo_scales();
  double worst = 0.0;
  for (int i = -6; i <= 6; ++i) {
    for (int j = -6; j <= 6; ++j) {
      for (int k = -5; k <= 5; ++k) {
        const double qx = 1.2 * golden::q0 * i;
        const double qy = 1.2 * golden::q0 * j;
        const double W = k / golden::tau_coh;
        const double dp = mismatch(qx, qy, W, s);
        const double de = mismatch(qx, qy, W, s, MismatchMode::exact, &cfg);
        worst = std::max(worst, std::fabs(dp - de));
      }
    }
  }
  CHECK(worst < 2.0);  // measured 1.64 at the grid corners
}

TEST_CASE("zero gain passes vacuum through") {
  const DerivedScales s = bbo_scales();
  const GainSample g = gain_at(2.0 * golden::q0, golden::q0, 0.1 / s.tau_coh,
                               0.0, s);
  CHECK(std::abs(g.V) == 0.0);
  CHECK(std::abs(g.U) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("peak gain on the ring equals sinh^2 sigma") {
  const DerivedScales s = bbo_scales();
  for (double sigma : {0.01, 0.5, 2.0}) {
    // top of the ring: Delta is zero there up to roundoff and |V|^2 is
    // stationary in Delta, so the comparison holds to full precision
    const GainSample g =
        gain_at(0.0, golden::qC - golden::qR, 0.0, sigma, s);
    CHECK(std::norm(g.V) ==
          doctest::Approx(std::sinh(sigma) * std::sinh(sigma)).epsilon(1e-12));
  }
  CHECK(std::sinh(2.0) * std::sinh(2.0) ==
        doctest::Approx(13.1544).epsilon(1e-4));
  CHECK(std::sinh(0.01) * std::sinh(0.01) ==
        doctest::Approx(1e-4).epsilon(1e-3));
}

TEST_CASE("unitarity at random points") {
  const DerivedScales s = bbo_scales();
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uq(-8.0, 8.0), uw(-3.0, 3.0),
      us(0.0, 2.5);
  for (int i = 0; i < 200; ++i) {
    const double sigma = us(rng);
    const GainSample g = gain_at(uq(rng) * golden::q0, uq(rng) * golden::q0,
                                 uw(rng) / s.tau_coh, sigma, s);
    CHECK(std::fabs(std::norm(g.U) - std::norm(g.V) - 1.0) < 1e-12);
    CHECK(g.r == doctest::Approx(std::asinh(std::abs(g.V))).epsilon(1e-12));
  }
}

TEST_CASE("analytic continuation is smooth across the branch point") {
  // Delta = 2 sigma is where Gamma changes from real to imaginary
  const DerivedScales s = bbo_scales();
  const double sigma = 1.3;
  // find a point with Delta near 2 sigma by scanning qx on the y=0 axis
  auto delta_of = [&](double x) { return mismatch(x * golden::q0, 0.0, 0.0, s); };
  double lo = 0.0, hi = std::sqrt(golden::delta0);
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (delta_of(mid) - 2.0 * sigma > 0.0 ? lo : hi) = mid;
  }
  const double xb = 0.5 * (lo + hi);
  const GainSample below = gain_at((xb - 1e-9) * golden::q0, 0.0, 0.0, sigma, s);
  const GainSample above = gain_at((xb + 1e-9) * golden::q0, 0.0, 0.0, sigma, s);
  CHECK(std::abs(below.U - above.U) < 1e-6);
  CHECK(std::abs(below.V - above.V) < 1e-6);
}

TEST_CASE("squeeze decomposition reproduces the gains") {
  const DerivedScales s = bbo_scales();
  const GainSample g = gain_at(3.0 * golden::q0, -1.0 * golden::q0,
                               0.7 / s.tau_coh, 1.1, s);
  const double gp = std::arg(complexd(std::cos(s.k_p * s.lc / 2.0),
                                      std::sin(s.k_p * s.lc / 2.0)));
  const complexd U0 = g.U * std::polar(1.0, -gp);
  const complexd V0 = g.V * std::polar(1.0, -gp);
  CHECK(std::abs(U0 - std::polar(std::cosh(g.r), g.psi + g.theta_ph)) < 1e-12);
  CHECK(std::abs(V0 - std::polar(std::sinh(g.r), g.psi - g.theta_ph)) < 1e-12);
}

TEST_CASE("squeeze direction phase, exact and small-gain forms") {
  for (double sigma : {0.3, 1.0, 2.0}) {
    for (double Delta : {-1.5, -0.2, 0.0, 0.4, 1.9}) {
      const double exact = two_psi_exact(Delta, sigma);
      const double approx = two_psi_approx(Delta, sigma);
      CHECK(approx ==
            doctest::Approx(Delta * std::tanh(sigma) / (2.0 * sigma))
                .epsilon(1e-14));
      if (std::fabs(Delta) < 0.5)
        CHECK(std::fabs(exact - approx) < 0.02 * std::fabs(Delta) + 1e-12);
    }
  }
  CHECK(two_psi_exact(0.0, 1.0) == 0.0);
  CHECK(two_psi_approx(0.7, 1e-8) ==
        doctest::Approx(0.35).epsilon(1e-10));  // small-sigma limit tanh s/s -> 1
}

TEST_CASE("compensation phase properties") {
  const DerivedScales s = bbo_scales();
  CompensationSpec comp;
  comp.enabled = true;
  comp.length_ratio = 0.37;
  // symmetric points: the swap leaves Delta unchanged on the qx axis at W=0
  CHECK(std::fabs(compensation_phase(2.0 * golden::q0, 0.0, 0.0, s, comp)) <
        1e-12);
  // on the walk-off axis the difference is the linear walk-off term only
  const double qy = 1.7 * golden::q0;
  const double expect = -2.0 * s.rho_e * s.lc * qy * comp.length_ratio;
  CHECK(compensation_phase(0.4 * golden::q0, qy, 0.0, s, comp) ==
        doctest::Approx(expect).epsilon(1e-10));
  comp.length_ratio = 0.0;
  CHECK(compensation_phase(0.4 * golden::q0, qy, 0.0, s, comp) == 0.0);
}

TEST_CASE("optimal compensation length") {
  const double lc = 2e-3;
  CHECK(optimal_compensation_length(2.0, lc) ==
        doctest::Approx(lc * std::tanh(2.0) / 4.0).epsilon(1e-14));
  CHECK(optimal_compensation_length(1.0, lc) ==
        doctest::Approx(lc * std::tanh(1.0) / 2.0).epsilon(1e-14));
  CHECK(optimal_compensation_length(1e-9, lc) ==
        doctest::Approx(0.5 * lc).epsilon(1e-12));
  double prev = optimal_compensation_length(1e-6, lc);
  for (double sigma = 0.25; sigma <= 3.0; sigma += 0.25) {
    const double cur = optimal_compensation_length(sigma, lc);
    CHECK(cur < prev);
    CHECK(cur > 0.0);
    CHECK(cur <= 0.5 * lc);
    prev = cur;
  }
}

TEST_CASE("sinhc series joins the closed form") {
  CHECK(std::abs(sinhc(complexd(1e-4, 0.0)) -
                 std::sinh(complexd(1e-4, 0.0)) / complexd(1e-4, 0.0)) <
        1e-15);
  CHECK(std::abs(sinhc(complexd(0.0, 0.0)) - complexd(1.0, 0.0)) == 0.0);
  CHECK(std::abs(sinhc(complexd(0.0, 2.0)) -
                 complexd(std::sin(2.0) / 2.0, 0.0)) < 1e-14);
}

TEST_CASE("unitarity residual scan") {
  const DerivedScales s = bbo_scales();
  for (double sigma : {0.0, 0.7}) {
    const UnitarityResiduals r = unitarity_residuals(
        16, 9, 8.0 * golden::q0, 2.0 / s.tau_coh, sigma, s);
    CHECK(r.max_norm < 1e-10);
    CHECK(r.max_cross < 1e-10);
  }
}
