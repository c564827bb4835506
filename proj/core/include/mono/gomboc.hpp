#pragma once

#include "mono/radial_body.hpp"

namespace mono::gomboc {

/// Value and first two derivatives of a function of one variable.
struct Derivs1 {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Shape function F_c on [0, 1]: strictly increasing with F_c(0) = 0,
/// F_c(1) = 1, unit slope at both ends, identity at c = 1 and collapsing
/// to 0 on [0, 1) as c -> 0+.
double F(double c, double x);
Derivs1 F_derivs(double c, double x);
/// 1 - F_c(x), computed without cancellation near x = 1.
double F_complement(double c, double x);

/// f_c(theta) = pi F_c(theta/pi + 1/2) - pi/2 on [-pi/2, pi/2].
double f(double c, double theta);
/// g_c(theta) = -f_c(-theta).
double g(double c, double theta);

/// Mixing weight in [0, 1]; 1/2 at the poles where the defining quotient is 0/0.
double a(double c, double theta, double phi);

/// rho_c = a sin f + (1 - a) sin g, in [-1, 1], equal to +-1 at the poles.
double rho(double c, double theta, double phi);

/// rho_c and its (theta, phi) partials.
RadialDerivs rho_partials(double c, double theta, double phi);

/// Pointwise c -> 0+ limit of rho_c on the open strip |theta| < pi/2.
double rho0(double theta, double phi);

/// Parameters of the family K(c, d): radial function R (1 + d rho_c), times
/// the unit-ball profile in normed spaces.
struct GombocParams {
  double c = 1.0;
  double d = 0.0;
  double R = 1.0;
  SpaceKind space = SpaceKind::spherical(3);

  /// Throws DomainError unless 0 < c <= 1, 0 <= d < 1, R > 0, dim = 3 and
  /// R (1 + d) < 1 in hyperbolic space.
  void validate() const;
};

double radial_R(const GombocParams& params, double theta, double phi);
RadialDerivs radial_R_partials(const GombocParams& params, double theta, double phi);

/// K(c, d) as a radial body around the chart origin with analytic partials.
RadialBody build_body(const GombocParams& params);

/// Same family without the sign restriction on d (|d| < 1). Used for
/// two-sided difference quotients in d.
RadialBody build_body_signed_d(const GombocParams& params);

}  // namespace mono::gomboc
