#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "pdc/errors.hpp"

namespace pdc {

// Adaptive Gauss-Kronrod 15(7) quadrature for vector-valued integrands.
// The interval is first cut into `initial_panels` equal panels (so that
// oscillatory integrands are sampled densely enough before the error
// estimate is trusted), then each panel is refined by deterministic
// depth-first bisection until the per-component error estimate fits the
// width-proportional share of the tolerance
//   tol_c = max(abs_tol, rel_tol * |I_c|) * (panel width / total width),
// where |I_c| is a coarse whole-interval magnitude estimate.
template <std::size_t N>
class GaussKronrod {
public:
  using Integrand = std::function<std::array<double, N>(double)>;

  struct Result {
    std::array<double, N> value{};
    double error = 0.0;   // accumulated Kronrod-Gauss deviation
    int evaluations = 0;
  };

  static Result integrate(const Integrand& f, double a, double b,
                          double abs_tol = 1e-9, double rel_tol = 1e-7,
                          int initial_panels = 8, int max_depth = 30) {
    Result res;
    if (initial_panels < 1) initial_panels = 1;
    const double width = b - a;

    // coarse pass for the magnitude reference
    std::vector<Panel> panels(static_cast<std::size_t>(initial_panels));
    std::array<double, N> ref{};
    for (int i = 0; i < initial_panels; ++i) {
      const double pa = a + width * i / initial_panels;
      const double pb = a + width * (i + 1) / initial_panels;
      panels[static_cast<std::size_t>(i)] = eval_panel(f, pa, pb, res.evaluations);
      for (std::size_t c = 0; c < N; ++c)
        ref[c] += panels[static_cast<std::size_t>(i)].kronrod[c];
    }
    std::array<double, N> tol{};
    for (std::size_t c = 0; c < N; ++c)
      tol[c] = std::max(abs_tol, rel_tol * std::fabs(ref[c]));

    for (const Panel& p : panels)
      refine(f, p, width, tol, max_depth, res);
    return res;
  }

private:
  struct Panel {
    double a = 0.0, b = 0.0;
    std::array<double, N> kronrod{};
    std::array<double, N> err{};
  };

  static Panel eval_panel(const Integrand& f, double a, double b, int& evals) {
    // QUADPACK DQK15 abscissae (positive half) and weights.
    static constexpr double xk[8] = {
        0.991455371120813, 0.949107912342759, 0.864864423359769,
        0.741531185599394, 0.586087235467691, 0.405845151377397,
        0.207784955007898, 0.0};
    static constexpr double wk[8] = {
        0.022935322010529, 0.063092092629979, 0.104790010322250,
        0.140653259715525, 0.169004726639267, 0.190350578064785,
        0.204432940075298, 0.209482141084728};
    static constexpr double wg[4] = {
        0.129484966168870, 0.279705391489277, 0.381830050505119,
        0.417959183673469};

    Panel p;
    p.a = a;
    p.b = b;
    const double h = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    std::array<double, N> gauss{};
    std::array<double, N> kron{};
    for (int i = 0; i < 8; ++i) {
      const std::array<double, N> fp = f(mid + h * xk[i]);
      std::array<double, N> fsum = fp;
      if (i < 7) {
        const std::array<double, N> fm = f(mid - h * xk[i]);
        for (std::size_t c = 0; c < N; ++c) fsum[c] += fm[c];
        evals += 2;
      } else {
        evals += 1;
      }
      for (std::size_t c = 0; c < N; ++c) kron[c] += wk[i] * fsum[c];
      if (i % 2 == 1 || i == 7) {
        const double w = wg[i == 7 ? 3 : (i - 1) / 2];
        for (std::size_t c = 0; c < N; ++c) gauss[c] += w * fsum[c];
      }
    }
    for (std::size_t c = 0; c < N; ++c) {
      p.kronrod[c] = h * kron[c];
      p.err[c] = std::fabs(h * (kron[c] - gauss[c]));
    }
    return p;
  }

  static void refine(const Integrand& f, const Panel& p, double total_width,
                     const std::array<double, N>& tol, int depth, Result& res) {
    const double share = (p.b - p.a) / total_width;
    bool ok = true;
    for (std::size_t c = 0; c < N; ++c)
      if (p.err[c] > tol[c] * share) { ok = false; break; }
    if (ok || depth == 0) {
      if (!ok)
        throw numeric_error(
            "quadrature did not converge on [" + std::to_string(p.a) + ", " +
            std::to_string(p.b) + "]; achieved error " +
            std::to_string(worst(p.err)));
      for (std::size_t c = 0; c < N; ++c) {
        res.value[c] += p.kronrod[c];
        res.error += p.err[c];
      }
      return;
    }
    const double mid = 0.5 * (p.a + p.b);
    const Panel left = eval_panel(f, p.a, mid, res.evaluations);
    const Panel right = eval_panel(f, mid, p.b, res.evaluations);
    refine(f, left, total_width, tol, depth - 1, res);
    refine(f, right, total_width, tol, depth - 1, res);
  }

  static double worst(const std::array<double, N>& e) {
    double m = 0.0;
    for (double x : e) m = std::max(m, x);
    return m;
  }
};

}
