#pragma once

#include <memory>
#include <string>
#include <vector>

namespace mono {

/// Value and first two derivatives of a scalar function of one angle.
struct AngleDerivs {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Radial function of an o-symmetric, rotationally symmetric unit ball M.
///
/// In 3D the argument is the polar angle theta measured from the equator
/// (azimuth independent). In 2D the same function is read as the radial
/// function of the unit disk in direction phi. Antipodal symmetry makes the
/// profile pi-periodic and even, and every evaluation reduces its argument
/// to [0, pi/2] first, so rho(t) == rho(-t) holds bit for bit.
class NormProfile {
 public:
  /// Euclidean unit ball.
  static NormProfile sphere();
  /// Unit ball {|x_r|^p + |z|^p <= 1}; smooth and strictly convex for p >= 2.
  static NormProfile superellipsoid(double p);
  /// Spheroid with unit equatorial radius and the given polar semi-axis.
  /// Unlike superellipsoids with p > 2 it has no flat points.
  static NormProfile spheroid(double axial);
  /// Clamped cubic spline through (theta, rho) samples; |theta| is used.
  static NormProfile from_samples(std::vector<double> theta, std::vector<double> rho);
  /// CSV with a `theta,rho` header (any header line is skipped).
  static NormProfile from_csv(const std::string& path);

  double operator()(double theta) const { return derivs(theta).value; }
  AngleDerivs derivs(double theta) const;

  /// Support function h_M(n) for a unit normal n making angle alpha with the
  /// equatorial plane (or with the x axis in 2D).
  double support(double alpha) const;

  /// Minimum over a uniform grid of the meridian curvature numerator
  /// r^2 + 2 r'^2 - r r''. Positive means the profile bounds a strictly
  /// convex region.
  double min_convexity_margin(int grid = 4096) const;

  std::string describe() const;

 private:
  struct Impl;
  explicit NormProfile(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace mono
