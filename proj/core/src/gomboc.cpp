#include "mono/gomboc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mono::gomboc {

namespace {

void check_c(double c) {
  if (!(c > 0.0 && c <= 1.0)) throw DomainError("shape parameter c must lie in (0, 1], got " + std::to_string(c));
}

void check_x(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("F_c argument must lie in [0, 1], got " + std::to_string(x));
}

double theta_to_x(double theta) { return std::clamp(theta / kPi + 0.5, 0.0, 1.0); }

// sin, cos and first two derivatives of f_c at theta. cos f = sin(pi F) is
// taken from whichever of F, 1 - F is smaller so it keeps full relative
// precision next to the poles.
struct Trig {
  double s = 0.0;
  double c = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

Trig f_trig(double c, double theta) {
  const double x = theta_to_x(theta);
  const Derivs1 Fd = F_derivs(c, x);
  Trig t;
  t.s = -std::cos(kPi * Fd.v);
  t.c = Fd.v <= 0.5 ? std::sin(kPi * Fd.v) : std::sin(kPi * F_complement(c, x));
  t.d1 = Fd.d1;
  t.d2 = Fd.d2 / kPi;
  return t;
}

Trig g_trig(double c, double theta) {
  const Trig ft = f_trig(c, -theta);
  return Trig{-ft.s, ft.c, ft.d1, -ft.d2};
}

bool at_pole(double theta) { return std::fabs(theta) >= kHalfPi; }

}  // namespace

double F(double c, double x) {
  check_c(c);
  check_x(x);
  if (c == 1.0) return x;
  const double m = (1.0 - c) * (1.0 - x) * (1.0 - x);
  const double denom = c * x + m;
  // x factored out of the numerator: no 0/0 and no cancellation at x = 0.
  return x * (c * x + m * c / (c + x)) / denom;
}

double F_complement(double c, double x) {
  check_c(c);
  check_x(x);
  if (c == 1.0) return 1.0 - x;
  const double m = (1.0 - c) * (1.0 - x) * (1.0 - x);
  const double denom = c * x + m;
  return (c * x * (1.0 - x) + m * (c + x - c * x) / (c + x)) / denom;
}

Derivs1 F_derivs(double c, double x) {
  check_c(c);
  check_x(x);
  if (c == 1.0) return {x, 1.0, 0.0};
  const double q = c * x / (c + x);
  const double q1 = c * c / ((c + x) * (c + x));
  const double q2 = -2.0 * c * c / ((c + x) * (c + x) * (c + x));
  const double m = (1.0 - c) * (1.0 - x) * (1.0 - x);
  const double m1 = -2.0 * (1.0 - c) * (1.0 - x);
  const double m2 = 2.0 * (1.0 - c);
  const double n0 = c * x * x + m * q;
  const double n1 = 2.0 * c * x + m1 * q + m * q1;
  const double n2 = 2.0 * c + m2 * q + 2.0 * m1 * q1 + m * q2;
  const double d0 = c * x + m;
  const double d1 = c + m1;
  const double d2 = m2;
  Derivs1 out;
  out.v = F(c, x);
  const double w = (n1 * d0 - n0 * d1) / (d0 * d0);
  out.d1 = w;
  out.d2 = (n2 * d0 - n0 * d2) / (d0 * d0) - 2.0 * d1 * w / d0;
  return out;
}

double f(double c, double theta) {
  if (!(std::fabs(theta) <= kHalfPi)) throw DomainError("theta must lie in [-pi/2, pi/2]");
  return kPi * F(c, theta_to_x(theta)) - kHalfPi;
}

double g(double c, double theta) { return -f(c, -theta); }

double a(double c, double theta, double phi) {
  check_c(c);
  if (at_pole(theta)) return 0.5;
  const Trig ft = f_trig(c, theta);
  const Trig gt = g_trig(c, theta);
  const double cp = std::cos(phi), sp = std::sin(phi);
  const double A = cp * cp * ft.c * ft.c;
  const double B = sp * sp * gt.c * gt.c;
  return A / (A + B);
}

double rho(double c, double theta, double phi) {
  check_c(c);
  if (theta >= kHalfPi) return 1.0;
  if (theta <= -kHalfPi) return -1.0;
  const Trig ft = f_trig(c, theta);
  const Trig gt = g_trig(c, theta);
  const double cp = std::cos(phi), sp = std::sin(phi);
  const double A = cp * cp * ft.c * ft.c;
  const double B = sp * sp * gt.c * gt.c;
  const double w = A / (A + B);
  return gt.s + w * (ft.s - gt.s);
}

RadialDerivs rho_partials(double c, double theta, double phi) {
  check_c(c);
  RadialDerivs out;
  if (at_pole(theta)) {
    out.r = theta > 0.0 ? 1.0 : -1.0;
    return out;
  }
  const Trig F_ = f_trig(c, theta);
  const Trig G_ = g_trig(c, theta);
  const double cp = std::cos(phi), sp = std::sin(phi);
  const double s2p = std::sin(2.0 * phi), c2p = std::cos(2.0 * phi);
  const double s2f = 2.0 * F_.s * F_.c, c2f = F_.c * F_.c - F_.s * F_.s;
  const double s2g = 2.0 * G_.s * G_.c, c2g = G_.c * G_.c - G_.s * G_.s;

  const double A = cp * cp * F_.c * F_.c;
  const double A_t = -cp * cp * s2f * F_.d1;
  const double A_tt = -cp * cp * (2.0 * c2f * F_.d1 * F_.d1 + s2f * F_.d2);
  const double A_p = -s2p * F_.c * F_.c;
  const double A_pp = -2.0 * c2p * F_.c * F_.c;
  const double A_tp = s2p * s2f * F_.d1;

  const double B = sp * sp * G_.c * G_.c;
  const double B_t = -sp * sp * s2g * G_.d1;
  const double B_tt = -sp * sp * (2.0 * c2g * G_.d1 * G_.d1 + s2g * G_.d2);
  const double B_p = s2p * G_.c * G_.c;
  const double B_pp = 2.0 * c2p * G_.c * G_.c;
  const double B_tp = -s2p * s2g * G_.d1;

  // a = A / T with T = A + B; from a T = A:
  //   a_i = (A_i - a T_i) / T,  a_ij = (A_ij - a_i T_j - a_j T_i - a T_ij) / T.
  const double T = A + B;
  const double T_t = A_t + B_t, T_p = A_p + B_p;
  const double T_tt = A_tt + B_tt, T_pp = A_pp + B_pp, T_tp = A_tp + B_tp;
  const double w = A / T;
  const double w_t = (A_t - w * T_t) / T;
  const double w_p = (A_p - w * T_p) / T;
  const double w_tt = (A_tt - 2.0 * w_t * T_t - w * T_tt) / T;
  const double w_pp = (A_pp - 2.0 * w_p * T_p - w * T_pp) / T;
  const double w_tp = (A_tp - w_t * T_p - w_p * T_t - w * T_tp) / T;

  const double D = F_.s - G_.s;
  const double D_t = F_.c * F_.d1 - G_.c * G_.d1;
  const double D_tt = -F_.s * F_.d1 * F_.d1 + F_.c * F_.d2 + G_.s * G_.d1 * G_.d1 - G_.c * G_.d2;

  out.r = G_.s + w * D;
  out.r_t = G_.c * G_.d1 + w_t * D + w * D_t;
  out.r_p = w_p * D;
  out.r_tt = -G_.s * G_.d1 * G_.d1 + G_.c * G_.d2 + w_tt * D + 2.0 * w_t * D_t + w * D_tt;
  out.r_tp = w_tp * D + w_p * D_t;
  out.r_pp = w_pp * D;
  return out;
}

double rho0(double theta, double phi) {
  const double up = std::pow(kHalfPi - theta, 4);
  const double down = std::pow(kHalfPi + theta, 4);
  const double s2 = std::sin(phi) * std::sin(phi);
  const double c2 = std::cos(phi) * std::cos(phi);
  return (up * s2 - down * c2) / (down * c2 + up * s2);
}

void GombocParams::validate() const {
  check_c(c);
  if (!(d >= 0.0 && d < 1.0)) throw DomainError("deformation d must lie in [0, 1), got " + std::to_string(d));
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("radius R must be positive");
  if (space.dim() != 3) throw DomainError("the family K(c, d) lives in 3D spaces");
  if (space.geometry() == Geometry::Hyperbolic && !(R * (1.0 + d) < 1.0)) {
    throw DomainError("hyperbolic body must stay inside the projective ball: R (1 + d) < 1");
  }
}

namespace {

void validate_signed(const GombocParams& p) {
  check_c(p.c);
  if (!(std::fabs(p.d) < 1.0)) throw DomainError("|d| must be < 1");
  if (!(p.R > 0.0) || !std::isfinite(p.R)) throw DomainError("radius R must be positive");
  if (p.space.dim() != 3) throw DomainError("the family K(c, d) lives in 3D spaces");
  if (p.space.geometry() == Geometry::Hyperbolic && !(p.R * (1.0 + std::fabs(p.d)) < 1.0)) {
    throw DomainError("hyperbolic body must stay inside the projective ball: R (1 + |d|) < 1");
  }
}

double radial_unchecked(const GombocParams& p, double theta, double phi) {
  double r = p.R * (1.0 + p.d * rho(p.c, theta, phi));
  if (p.space.geometry() == Geometry::Normed) r *= p.space.norm_profile()(theta);
  return r;
}

RadialDerivs partials_unchecked(const GombocParams& p, double theta, double phi) {
  const RadialDerivs q = rho_partials(p.c, theta, phi);
  const double base = 1.0 + p.d * q.r;
  RadialDerivs out;
  if (p.space.geometry() != Geometry::Normed) {
    out.r = p.R * base;
    out.r_t = p.R * p.d * q.r_t;
    out.r_p = p.R * p.d * q.r_p;
    out.r_tt = p.R * p.d * q.r_tt;
    out.r_tp = p.R * p.d * q.r_tp;
    out.r_pp = p.R * p.d * q.r_pp;
    return out;
  }
  const AngleDerivs m = p.space.norm_profile().derivs(theta);
  const double d = p.d;
  out.r = p.R * m.value * base;
  out.r_t = p.R * (m.d1 * base + m.value * d * q.r_t);
  out.r_p = p.R * m.value * d * q.r_p;
  out.r_tt = p.R * (m.d2 * base + 2.0 * m.d1 * d * q.r_t + m.value * d * q.r_tt);
  out.r_tp = p.R * (m.d1 * d * q.r_p + m.value * d * q.r_tp);
  out.r_pp = p.R * m.value * d * q.r_pp;
  return out;
}

RadialBody make_body(const GombocParams& params) {
  return RadialBody(
      params.space, ChartPoint::Zero(3), [params](double t, double p) { return radial_unchecked(params, t, p); },
      RadialPartialsFn([params](double t, double p) { return partials_unchecked(params, t, p); }));
}

}  // namespace

double radial_R(const GombocParams& params, double theta, double phi) {
  params.validate();
  return radial_unchecked(params, theta, phi);
}

RadialDerivs radial_R_partials(const GombocParams& params, double theta, double phi) {
  params.validate();
  return partials_unchecked(params, theta, phi);
}

RadialBody build_body(const GombocParams& params) {
  params.validate();
  return make_body(params);
}

RadialBody build_body_signed_d(const GombocParams& params) {
  validate_signed(params);
  return make_body(params);
}

}  // namespace mono::gomboc
