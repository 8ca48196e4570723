#pragma once

#include <cmath>

namespace phasebal {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  /// False when some subinterval hit the depth limit before meeting its
  /// share of the tolerance.
  bool converged = true;
};

namespace detail {

template <class F>
double simpson_refine(const F& f, double a, double fa, double m, double fm, double b, double fb,
                      double whole, double tol, int depth, QuadratureResult& acc) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    if (depth <= 0 && std::abs(delta) > 15.0 * tol) acc.converged = false;
    acc.error_estimate += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return simpson_refine(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1, acc) +
         simpson_refine(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1, acc);
}

}  // namespace detail

/// Adaptive Simpson quadrature with Richardson correction. Works for
/// b < a as well (the result changes sign).
template <class F>
QuadratureResult adaptive_simpson(const F& f, double a, double b, double abs_tol,
                                  int max_depth = 40) {
  QuadratureResult r;
  if (a == b) return r;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  r.value = detail::simpson_refine(f, a, fa, m, fm, b, fb, whole, abs_tol, max_depth, r);
  return r;
}

}  // namespace phasebal
