#pragma once

// Test-side reference integrators, independent of the library's closed forms.

#include <cmath>
#include <functional>

#include "rss/distribution.hpp"

namespace rss::testing {

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                                   double b, double fa, double fm, double fb,
                                   double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
  if (b <= a) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 52);
}

// Conditional mean/variance by quadrature of the truncated density over the
// x-interval, the reference the closed forms are checked against.
inline ConditionalMoments conditional_moments_quadrature(const Distribution& dist,
                                                         double lo_p, double hi_p) {
  const double a = dist.inv_cdf(lo_p);
  const double b = dist.inv_cdf(hi_p);
  const double z = hi_p - lo_p;
  const double m1 =
      integrate([&](double x) { return x * dist.pdf(x); }, a, b, 1e-13) / z;
  const double m2 =
      integrate([&](double x) { return x * x * dist.pdf(x); }, a, b, 1e-13) / z;
  return {m1, m2 - m1 * m1};
}

// Monotone-bisection inverse of a CDF, for checking inv_cdf independently.
inline double invert_cdf_bisection(const Distribution& dist, double p, double lo,
                                   double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (dist.cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace rss::testing
