#pragma once

#include <array>
#include <string>
#include <vector>

#include "pdc/gain.hpp"

namespace pdc {

// Gains of one conjugate mode pair: the squeezer coupling o(x) with e(-x)
// ("fwd") and the one coupling o(-x) with e(x) ("rev").
struct ModePairGains {
  complexd U_fwd, V_fwd;
  complexd U_rev, V_rev;
  double r_fwd = 0.0, psi_fwd = 0.0;
  double r_rev = 0.0, psi_rev = 0.0;

  static ModePairGains from_uv(const complexd& U1, const complexd& V1,
                               const complexd& U2, const complexd& V2);
  // Gains of a mode and its conjugate as produced by gain_at.
  static ModePairGains from_samples(const GainSample& fwd,
                                    const GainSample& rev);
  void check() const;  // unitarity and tanh r = |V/U| consistency
};

// Output state of the pair truncated at total pair number N_max:
// gamma[N][m] multiplies |m, N-m, N-m, m> in the mode order
// (o(x), e(x), o(-x), e(-x)).
struct TruncatedPairState {
  int N_max = 0;
  std::vector<std::vector<complexd>> gamma;  // gamma[N][m], 0 <= m <= N
  double truncation_weight = 0.0;            // 1 - sum |gamma|^2
  bool truncation_warning = false;           // weight above 1e-6
  ModePairGains gains;
};

TruncatedPairState build_pair_state(const ModePairGains& gains, int N_max);

// Raise the cutoff from `start` until the truncation weight drops below
// `target` (hard cap 200).
TruncatedPairState build_pair_state_auto(const ModePairGains& gains,
                                         double target = 1e-10,
                                         int start = 60, int cap = 200);

// Exact ladder-operator moments on the truncated state. Operator order in
// the covariance matrix: S0..S3 at x, then S0..S3 at -x. The covariance is
// the symmetrized one, cov(A,B) = Re<psi|AB|psi> - <A><B>.
struct StokesMoments {
  std::array<double, 4> mean_fwd{};
  std::array<double, 4> mean_rev{};
  std::array<std::array<double, 8>, 8> cov{};
  // Sum/difference variances computed by applying the combined operator
  // directly, so identically-vanishing combinations come out exactly 0.
  std::array<double, 4> sum_var{};
  std::array<double, 4> diff_var{};

  double var_fwd(int i) const { return cov[i][i]; }
  double var_rev(int i) const { return cov[i + 4][i + 4]; }
  double var_sum(int i) const { return sum_var[i]; }
  double var_diff(int i) const { return diff_var[i]; }
};

StokesMoments stokes_moments(const TruncatedPairState& state);

struct EigenstateResiduals {
  double res_cond1 = 0.0;  // max |gamma_{N,m} - gamma_{N,m+1}|
  double res_cond2 = 0.0;  // |tanh r e^{2i psi} mismatch between the pair|
};

EigenstateResiduals eigenstate_residuals(const TruncatedPairState& state);

// Brute-force moments versus the closed-form per-mode combinations.
struct OracleComparison {
  struct Entry {
    std::string name;
    double oracle = 0.0;
    double analytic = 0.0;
    double rel = 0.0;
  };
  std::vector<Entry> entries;
  double max_rel = 0.0;
  double truncation_weight = 0.0;
};

OracleComparison oracle_vs_analytic(const ModePairGains& gains, int N_max);

}
