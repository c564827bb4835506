#pragma once

// Independent re-implementations used as oracles. Nothing here calls into
// the library, so a shared mistake cannot cancel out.

#include <cmath>
#include <functional>

namespace oracle {

inline constexpr double pi = 3.14159265358979323846;

// Straight from the defining fraction, no rearrangement.
inline double F(double c, double x) {
  const double num = c * x * x + (1.0 - c) * (1.0 - x) * (1.0 - x) * (c * x / (c + x));
  const double den = c * x + (1.0 - c) * (1.0 - x) * (1.0 - x);
  return num / den;
}

inline double f(double c, double th) { return pi * F(c, th / pi + 0.5) - pi / 2.0; }
inline double g(double c, double th) { return -f(c, -th); }

inline double a(double c, double th, double ph) {
  const double cf = std::cos(f(c, th)), cg = std::cos(g(c, th));
  const double num = std::cos(ph) * std::cos(ph) * cf * cf;
  return num / (num + std::sin(ph) * std::sin(ph) * cg * cg);
}

inline double rho(double c, double th, double ph) {
  const double w = a(c, th, ph);
  return w * std::sin(f(c, th)) + (1.0 - w) * std::sin(g(c, th));
}

inline double rho0(double th, double ph) {
  const double up = std::pow(pi / 2.0 - th, 4), dn = std::pow(pi / 2.0 + th, 4);
  const double s2 = std::sin(ph) * std::sin(ph), c2 = std::cos(ph) * std::cos(ph);
  return (up * s2 - dn * c2) / (dn * c2 + up * s2);
}

// Adaptive Simpson; plenty for smooth one-dimensional integrands.
inline double simpson(const std::function<double(double)>& fn, double a, double b, double tol = 1e-13,
                      int depth = 50) {
  std::function<double(double, double, double, double, double, double, double, int)> rec =
      [&](double l, double r, double fl, double fm, double fr, double whole, double eps, int d) {
        const double m = 0.5 * (l + r);
        const double lm = 0.5 * (l + m), rm = 0.5 * (m + r);
        const double flm = fn(lm), frm = fn(rm);
        const double left = (m - l) / 6.0 * (fl + 4.0 * flm + fm);
        const double right = (r - m) / 6.0 * (fm + 4.0 * frm + fr);
        if (d <= 0 || std::fabs(left + right - whole) <= 15.0 * eps) return left + right + (left + right - whole) / 15.0;
        return rec(l, m, fl, flm, fm, left, eps / 2.0, d - 1) + rec(m, r, fm, frm, fr, right, eps / 2.0, d - 1);
      };
  // Presplit so that symmetric integrands cannot fool the first error test.
  const int pieces = 64;
  double sum = 0.0;
  for (int k = 0; k < pieces; ++k) {
    const double l = a + (b - a) * k / pieces, r = a + (b - a) * (k + 1) / pieces;
    const double fl = fn(l), fr = fn(r), fm = fn(0.5 * (l + r));
    sum += rec(l, r, fl, fm, fr, (r - l) / 6.0 * (fl + 4.0 * fm + fr), tol / pieces, depth);
  }
  return sum;
}

// Integral of r^3 / (1 + r^2)^(5/2) over [0, L], the spherical moment of one
// ray. Checked by differentiation: d/dL of the expression is L^3 / (L^2 + 1)^(5/2)
// and it vanishes at L = 0.
inline double sphere_ray_moment(double L) {
  return 2.0 / 3.0 - (3.0 * L * L + 2.0) / (3.0 * std::pow(L * L + 1.0, 1.5));
}

}  // namespace oracle
