#include "pdc/fockstate.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace pdc {

namespace {

using SparseVec = std::unordered_map<std::uint64_t, complexd>;

std::uint64_t pack(int a, int b, int c, int d) {
  return static_cast<std::uint64_t>(a) | (static_cast<std::uint64_t>(b) << 16) |
         (static_cast<std::uint64_t>(c) << 32) |
         (static_cast<std::uint64_t>(d) << 48);
}

std::array<int, 4> unpack(std::uint64_t k) {
  return {static_cast<int>(k & 0xffff), static_cast<int>((k >> 16) & 0xffff),
          static_cast<int>((k >> 32) & 0xffff),
          static_cast<int>((k >> 48) & 0xffff)};
}

// One term of a quadratic mode operator: coef * a_create^dag a_annihilate,
// or a number operator when create == annihilate.
struct Term {
  complexd coef;
  int create;
  int annihilate;
};

SparseVec apply_op(const std::vector<Term>& op, const SparseVec& state) {
  SparseVec out;
  out.reserve(state.size() * (op.size() + 1));
  for (const auto& [key, amp] : state) {
    const std::array<int, 4> occ = unpack(key);
    // Number-operator terms are summed coefficient-first; occupation sums of
    // small integers are exact in doubles, so cancelling diagonals (e.g. the
    // operator S1(x) + S1(-x) on this state) vanish exactly.
    complexd diag = 0.0;
    for (const Term& t : op) {
      if (t.create == t.annihilate) {
        diag += t.coef * static_cast<double>(occ[t.annihilate]);
        continue;
      }
      if (occ[t.annihilate] == 0) continue;
      std::array<int, 4> o = occ;
      double f = std::sqrt(static_cast<double>(o[t.annihilate]));
      o[t.annihilate] -= 1;
      f *= std::sqrt(static_cast<double>(o[t.create] + 1));
      o[t.create] += 1;
      out[pack(o[0], o[1], o[2], o[3])] += amp * t.coef * f;
    }
    if (diag != 0.0) out[key] += amp * diag;
  }
  return out;
}

double variance_of(const std::vector<Term>& op, const SparseVec& psi) {
  const SparseVec applied = apply_op(op, psi);
  double mean = 0.0, second = 0.0;
  for (const auto& [key, amp] : applied) {
    const auto it = psi.find(key);
    if (it != psi.end()) mean += (std::conj(it->second) * amp).real();
    second += std::norm(amp);
  }
  return second - mean * mean;
}

std::vector<Term> concat(std::vector<Term> a, const std::vector<Term>& b,
                         double sign) {
  for (Term t : b) {
    t.coef *= sign;
    a.push_back(t);
  }
  return a;
}

complexd dot(const SparseVec& a, const SparseVec& b) {
  const SparseVec& small = a.size() <= b.size() ? a : b;
  const SparseVec& big = a.size() <= b.size() ? b : a;
  complexd s = 0.0;
  for (const auto& [key, amp] : small) {
    const auto it = big.find(key);
    if (it == big.end()) continue;
    if (&small == &a)
      s += std::conj(amp) * it->second;
    else
      s += std::conj(it->second) * amp;
  }
  return s;
}

// Mode indices: 0 = o(x), 1 = e(x), 2 = o(-x), 3 = e(-x).
std::vector<Term> stokes_op(int i, bool fwd) {
  const int o = fwd ? 0 : 2;
  const int e = fwd ? 1 : 3;
  switch (i) {
    case 0: return {{1.0, o, o}, {1.0, e, e}};
    case 1: return {{1.0, o, o}, {-1.0, e, e}};
    case 2: return {{1.0, o, e}, {1.0, e, o}};
    default:
      return {{complexd(0.0, -1.0), o, e}, {complexd(0.0, 1.0), e, o}};
  }
}

complexd coefficient(double r, double psi, int n) {
  return std::pow(std::tanh(r), n) * std::polar(1.0, 2.0 * psi * n) /
         std::cosh(r);
}

SparseVec to_sparse(const TruncatedPairState& st) {
  SparseVec v;
  for (int N = 0; N <= st.N_max; ++N)
    for (int m = 0; m <= N; ++m) {
      const complexd g = st.gamma[N][m];
      if (g != 0.0) v[pack(m, N - m, N - m, m)] = g;
    }
  return v;
}

}  // namespace

ModePairGains ModePairGains::from_uv(const complexd& U1, const complexd& V1,
                                     const complexd& U2, const complexd& V2) {
  ModePairGains g;
  g.U_fwd = U1;
  g.V_fwd = V1;
  g.U_rev = U2;
  g.V_rev = V2;
  g.r_fwd = std::asinh(std::abs(V1));
  g.r_rev = std::asinh(std::abs(V2));
  g.psi_fwd = std::abs(V1) > 0.0 ? 0.5 * std::arg(U1 * V1) : 0.0;
  g.psi_rev = std::abs(V2) > 0.0 ? 0.5 * std::arg(U2 * V2) : 0.0;
  g.check();
  return g;
}

ModePairGains ModePairGains::from_samples(const GainSample& fwd,
                                          const GainSample& rev) {
  return from_uv(fwd.U, fwd.V, rev.U, rev.V);
}

void ModePairGains::check() const {
  const double u1 = std::norm(U_fwd) - std::norm(V_fwd) - 1.0;
  const double u2 = std::norm(U_rev) - std::norm(V_rev) - 1.0;
  if (std::fabs(u1) > 1e-10 || std::fabs(u2) > 1e-10)
    throw domain_error("mode-pair gains violate |U|^2 - |V|^2 = 1");
  const double t1 = std::abs(V_fwd) / std::abs(U_fwd);
  const double t2 = std::abs(V_rev) / std::abs(U_rev);
  if (std::fabs(std::tanh(r_fwd) - t1) > 1e-10 ||
      std::fabs(std::tanh(r_rev) - t2) > 1e-10)
    throw domain_error("inconsistent squeeze parameters");
}

TruncatedPairState build_pair_state(const ModePairGains& gains, int N_max) {
  if (N_max < 1) throw domain_error("N_max must be >= 1");
  TruncatedPairState st;
  st.N_max = N_max;
  st.gains = gains;
  st.gamma.resize(static_cast<std::size_t>(N_max) + 1);
  double total = 0.0;
  for (int N = 0; N <= N_max; ++N) {
    st.gamma[N].resize(static_cast<std::size_t>(N) + 1);
    for (int m = 0; m <= N; ++m) {
      const complexd g = coefficient(gains.r_fwd, gains.psi_fwd, m) *
                         coefficient(gains.r_rev, gains.psi_rev, N - m);
      st.gamma[N][m] = g;
      total += std::norm(g);
    }
  }
  st.truncation_weight = 1.0 - total;
  st.truncation_warning = st.truncation_weight > 1e-6;
  return st;
}

TruncatedPairState build_pair_state_auto(const ModePairGains& gains,
                                         double target, int start, int cap) {
  TruncatedPairState st = build_pair_state(gains, start);
  int n = start;
  while (st.truncation_weight > target && n < cap) {
    n = std::min(cap, n + n / 2);
    st = build_pair_state(gains, n);
  }
  return st;
}

StokesMoments stokes_moments(const TruncatedPairState& state) {
  const SparseVec psi = to_sparse(state);
  std::array<SparseVec, 8> applied;
  std::array<double, 8> mean{};
  for (int k = 0; k < 8; ++k) {
    applied[k] = apply_op(stokes_op(k % 4, k < 4), psi);
    mean[k] = dot(psi, applied[k]).real();
  }
  StokesMoments m;
  for (int i = 0; i < 4; ++i) {
    m.mean_fwd[i] = mean[i];
    m.mean_rev[i] = mean[i + 4];
  }
  for (int a = 0; a < 8; ++a)
    for (int b = a; b < 8; ++b) {
      const double c = dot(applied[a], applied[b]).real() - mean[a] * mean[b];
      m.cov[a][b] = c;
      m.cov[b][a] = c;
    }
  for (int i = 0; i < 4; ++i) {
    m.sum_var[i] = variance_of(
        concat(stokes_op(i, true), stokes_op(i, false), 1.0), psi);
    m.diff_var[i] = variance_of(
        concat(stokes_op(i, true), stokes_op(i, false), -1.0), psi);
  }
  return m;
}

EigenstateResiduals eigenstate_residuals(const TruncatedPairState& state) {
  EigenstateResiduals r;
  for (int N = 0; N <= state.N_max; ++N)
    for (int m = 0; m + 1 <= N; ++m)
      r.res_cond1 = std::max(
          r.res_cond1, std::abs(state.gamma[N][m] - state.gamma[N][m + 1]));
  const ModePairGains& g = state.gains;
  r.res_cond2 = std::abs(std::tanh(g.r_fwd) * std::polar(1.0, 2.0 * g.psi_fwd) -
                         std::tanh(g.r_rev) * std::polar(1.0, 2.0 * g.psi_rev));
  return r;
}

OracleComparison oracle_vs_analytic(const ModePairGains& gains, int N_max) {
  TruncatedPairState st = build_pair_state(gains, N_max);
  if (st.truncation_weight > 1e-8) {
    const double t = std::max(std::tanh(gains.r_fwd), std::tanh(gains.r_rev));
    const int needed =
        t > 0.0 ? static_cast<int>(std::ceil(std::log(1e-9) / (2.0 * std::log(t))))
                : N_max;
    throw numeric_error("truncation weight " +
                        std::to_string(st.truncation_weight) +
                        " too large; need N_max of roughly " +
                        std::to_string(needed));
  }
  const StokesMoments m = stokes_moments(st);

  const double h1 = std::norm(gains.V_fwd * gains.U_rev) +
                    std::norm(gains.V_rev * gains.U_fwd);
  const double h2 = 2.0 * (std::conj(gains.U_fwd) * gains.U_rev *
                           std::conj(gains.V_fwd) * gains.V_rev)
                              .real();
  const double f1 = std::norm(gains.V_fwd * gains.U_fwd) +
                    std::norm(gains.V_rev * gains.U_rev);
  const double n_fwd = std::norm(gains.V_fwd);
  const double n_rev = std::norm(gains.V_rev);

  OracleComparison cmp;
  cmp.truncation_weight = st.truncation_weight;
  const double scale = 1.0 + h1 + f1;
  const auto add = [&](const std::string& name, double oracle, double analytic) {
    const double rel =
        std::fabs(oracle - analytic) / std::max(std::fabs(analytic), 1e-3 * scale);
    cmp.entries.push_back({name, oracle, analytic, rel});
    cmp.max_rel = std::max(cmp.max_rel, rel);
  };
  add("mean S0(x)", m.mean_fwd[0], n_fwd + n_rev);
  add("mean S1(x)", m.mean_fwd[1], n_fwd - n_rev);
  add("mean S2(x)", m.mean_fwd[2], 0.0);
  add("mean S3(x)", m.mean_fwd[3], 0.0);
  add("var S0(x)", m.var_fwd(0), f1);
  add("var S1(x)", m.var_fwd(1), f1);
  add("var S2(x)", m.var_fwd(2), h1);
  add("var S3(x)", m.var_fwd(3), h1);
  add("var S0 diff", m.var_diff(0), 0.0);
  add("var S1 sum", m.var_sum(1), 0.0);
  add("var S2 diff", m.var_diff(2), 2.0 * (h1 - h2));
  add("var S3 diff", m.var_diff(3), 2.0 * (h1 - h2));
  return cmp;
}

}
