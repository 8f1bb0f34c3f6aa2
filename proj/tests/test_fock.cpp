#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "pdc/errors.hpp"
#include "pdc/fockstate.hpp"
#include "helpers.hpp"

using namespace pdc;
using namespace testutil;

namespace {

ModePairGains gains_from_deltas(double sigma, double d_fwd, double d_rev,
                                double common_phase = 0.0) {
  auto uv = [&](double d) {
    const complexd G = std::sqrt(complexd(sigma * sigma - 0.25 * d * d, 0.0));
    const complexd sc = std::abs(G) < 1e-8
                            ? complexd(1.0, 0.0)
                            : std::sinh(G) / G;
    const complexd U = std::cosh(G) + complexd(0.0, 0.5 * d) * sc;
    const complexd V = sigma * sc;
    return std::pair<complexd, complexd>(U, V);
  };
  const auto [Uf, Vf] = uv(d_fwd);
  const auto [Ur, Vr] = uv(d_rev);
  const complexd ph = std::polar(1.0, common_phase);
  return ModePairGains::from_uv(Uf * ph, Vf * ph, Ur * ph, Vr * ph);
}

}  // namespace

TEST_CASE("vacuum state at zero gain") {
  const ModePairGains g = gains_from_deltas(0.0, 0.3, -0.2);
  const TruncatedPairState st = build_pair_state(g, 10);
  CHECK(std::abs(st.gamma[0][0]) == doctest::Approx(1.0).epsilon(1e-15));
  for (int N = 1; N <= 10; ++N)
    for (int m = 0; m <= N; ++m) CHECK(std::abs(st.gamma[N][m]) == 0.0);
  CHECK(st.truncation_weight < 1e-15);
  CHECK(!st.truncation_warning);
}

TEST_CASE("amplitudes factorize over the two squeezers") {
  const ModePairGains g = gains_from_deltas(0.9, 0.8, -0.4, 0.3);
  const TruncatedPairState st = build_pair_state(g, 24);
  auto coeff = [](double r, double psi, int n) {
    return std::pow(std::tanh(r), n) * std::polar(1.0, 2.0 * psi * n) /
           std::cosh(r);
  };
  for (int N = 0; N <= 24; ++N)
    for (int m = 0; m <= N; ++m) {
      const complexd expect = coeff(g.r_fwd, g.psi_fwd, m) *
                              coeff(g.r_rev, g.psi_rev, N - m);
      CHECK(std::abs(st.gamma[N][m] - expect) < 1e-13);
    }
}

TEST_CASE("equal gains make every amplitude in a shell equal") {
  const ModePairGains g = gains_from_deltas(1.0, 0.5, 0.5);
  const TruncatedPairState st = build_pair_state(g, 30);
  for (int N = 0; N <= 30; ++N)
    for (int m = 1; m <= N; ++m)
      CHECK(std::abs(st.gamma[N][m] - st.gamma[N][m - 1]) < 1e-14);
}

TEST_CASE("unequal gains order the shell amplitudes") {
  const ModePairGains g = gains_from_deltas(1.0, 0.2, 1.8);
  REQUIRE(g.r_fwd > g.r_rev);
  const TruncatedPairState st = build_pair_state(g, 20);
  for (int m = 1; m <= 12; ++m)
    CHECK(std::abs(st.gamma[12][m]) > std::abs(st.gamma[12][m - 1]));
}

TEST_CASE("truncation weight accounting") {
  const ModePairGains g = gains_from_deltas(1.2, 0.0, 0.0);
  const TruncatedPairState small = build_pair_state(g, 6);
  CHECK(small.truncation_weight > 1e-6);
  CHECK(small.truncation_warning);
  const TruncatedPairState big = build_pair_state_auto(g, 1e-10, 20);
  CHECK(big.truncation_weight < 1e-10);
  CHECK(!big.truncation_warning);
  CHECK(big.N_max > 20);
  double norm = 0.0;
  for (const auto& shell : big.gamma)
    for (const complexd& c : shell) norm += std::norm(c);
  CHECK(norm == doctest::Approx(1.0 - big.truncation_weight).epsilon(1e-12));
}

TEST_CASE("gain consistency check rejects broken inputs") {
  ModePairGains g = gains_from_deltas(0.8, 0.4, -0.1);
  CHECK_NOTHROW(g.check());
  g.V_fwd *= 1.001;
  CHECK_THROWS_AS(g.check(), domain_error);
}

TEST_CASE("balanced difference observables are exactly noiseless") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> us(0.1, 1.2), ud(-2.0, 2.0),
      up(-M_PI, M_PI);
  for (int t = 0; t < 5; ++t) {
    const ModePairGains g =
        gains_from_deltas(us(rng), ud(rng), ud(rng), up(rng));
    const StokesMoments m = stokes_moments(build_pair_state(g, 40));
    // S1(x) + S1(-x) and S0(x) - S0(-x) commute with the interaction
    CHECK(m.var_sum(1) == 0.0);
    CHECK(m.var_diff(0) == 0.0);
  }
}

TEST_CASE("equatorial difference variances coincide") {
  const ModePairGains g = gains_from_deltas(1.1, 0.6, -1.0, 0.2);
  const StokesMoments m = stokes_moments(build_pair_state(g, 50));
  CHECK(m.var_diff(2) == doctest::Approx(m.var_diff(3)).epsilon(1e-10));
  CHECK(m.var_sum(2) == doctest::Approx(m.var_sum(3)).epsilon(1e-10));
}

TEST_CASE("mean photon numbers match the gains") {
  const ModePairGains g = gains_from_deltas(1.0, 0.7, -0.3);
  const StokesMoments m = stokes_moments(build_pair_state(g, 50));
  const double nf = std::norm(g.V_fwd);
  const double nr = std::norm(g.V_rev);
  // each squeezer populates one polarization at x and the other at -x
  CHECK(m.mean_fwd[0] == doctest::Approx(nf + nr).epsilon(1e-9));
  CHECK(m.mean_rev[0] == doctest::Approx(nf + nr).epsilon(1e-9));
  CHECK(m.mean_fwd[1] == doctest::Approx(nf - nr).epsilon(1e-8));
  CHECK(m.mean_rev[1] == doctest::Approx(nr - nf).epsilon(1e-8));
  CHECK(std::fabs(m.mean_fwd[2]) < 1e-10);
  CHECK(std::fabs(m.mean_fwd[3]) < 1e-10);
}

TEST_CASE("covariance matrix is symmetric positive semidefinite") {
  const ModePairGains g = gains_from_deltas(1.2, 1.4, -0.9, -0.5);
  const StokesMoments m = stokes_moments(build_pair_state(g, 50));
  Eigen::MatrixXd C(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) C(i, j) = m.cov[i][j];
  CHECK((C - C.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
  CHECK(es.eigenvalues().minCoeff() > -1e-8 * es.eigenvalues().maxCoeff());
}

TEST_CASE("uncertainty relation on the equatorial pair") {
  const ModePairGains g = gains_from_deltas(1.0, 0.8, 0.8);
  const StokesMoments m = stokes_moments(build_pair_state(g, 50));
  const double lhs = m.var_fwd(2) * m.var_fwd(3);
  const double rhs = m.mean_fwd[1] * m.mean_fwd[1];
  CHECK(lhs * (1.0 + 1e-9) + 1e-12 >= rhs);
}

TEST_CASE("moments ignore a common phase on the gains") {
  const ModePairGains a = gains_from_deltas(1.0, 0.5, -0.7, 0.0);
  const ModePairGains b = gains_from_deltas(1.0, 0.5, -0.7, 1.234);
  const StokesMoments ma = stokes_moments(build_pair_state(a, 40));
  const StokesMoments mb = stokes_moments(build_pair_state(b, 40));
  for (int i = 0; i < 4; ++i) {
    CHECK(ma.mean_fwd[i] == doctest::Approx(mb.mean_fwd[i]).epsilon(1e-10));
    CHECK(ma.var_fwd(i) == doctest::Approx(mb.var_fwd(i)).epsilon(1e-10));
    CHECK(ma.var_diff(i) ==
          doctest::Approx(mb.var_diff(i)).epsilon(1e-10));
  }
}

TEST_CASE("eigenstate residuals flag asymmetric pairs") {
  const TruncatedPairState sym =
      build_pair_state(gains_from_deltas(1.0, 0.4, 0.4), 40);
  const EigenstateResiduals rs = eigenstate_residuals(sym);
  CHECK(rs.res_cond1 < 1e-13);
  CHECK(rs.res_cond2 < 1e-13);
  const TruncatedPairState asym =
      build_pair_state(gains_from_deltas(1.0, 0.2, 1.6), 40);
  const EigenstateResiduals ra = eigenstate_residuals(asym);
  CHECK(ra.res_cond1 > 1e-3);
  CHECK(ra.res_cond2 > 1e-3);
}

TEST_CASE("brute-force moments match the closed forms") {
  for (const auto& [sigma, df, dr] :
       {std::tuple{0.6, 0.0, 0.0}, std::tuple{1.0, 1.2, 1.2},
        std::tuple{1.2, 0.5, -0.5}, std::tuple{0.9, 1.9, -0.3}}) {
    const ModePairGains g = gains_from_deltas(sigma, df, dr, 0.7);
    const OracleComparison cmp = oracle_vs_analytic(g, 60);
    CHECK(cmp.max_rel < 1e-6);
    CHECK(cmp.truncation_weight < 1e-8);
    CHECK(!cmp.entries.empty());
  }
}

TEST_CASE("oracle refuses when the cutoff is too small") {
  const ModePairGains g = gains_from_deltas(1.2, 0.0, 0.0);
  CHECK_THROWS_AS(oracle_vs_analytic(g, 8), numeric_error);
}
