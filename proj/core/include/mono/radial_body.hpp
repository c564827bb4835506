#pragma once

#include "mono/spaces.hpp"

#include <functional>
#include <optional>

namespace mono {

/// Radial function and its partials in (theta, phi).
struct RadialDerivs {
  double r = 0.0;
  double r_t = 0.0;
  double r_p = 0.0;
  double r_tt = 0.0;
  double r_tp = 0.0;
  double r_pp = 0.0;
};

using RadialFn = std::function<double(double theta, double phi)>;
using RadialPartialsFn = std::function<RadialDerivs(double theta, double phi)>;

/// Star-shaped body {center + t u : 0 <= t <= radial(u)} in chart coordinates.
///
/// Directions are u = (cos t cos p, cos t sin p, sin t) in 3D and
/// u = (cos p, sin p) in 2D, where the theta argument is ignored.
/// Immutable after construction; copies share the callbacks.
class RadialBody {
 public:
  RadialBody(SpaceKind space, ChartPoint center, RadialFn radial,
             std::optional<RadialPartialsFn> partials = std::nullopt);

  const SpaceKind& space() const { return space_; }
  int dim() const { return space_.dim(); }
  const ChartPoint& center() const { return center_; }
  bool centered_at_origin() const { return center_.isZero(0.0); }

  double radial(double theta, double phi) const { return radial_(theta, phi); }
  /// 2D convenience.
  double radial(double phi) const { return radial_(0.0, phi); }
  /// Radial value for an arbitrary (not necessarily unit) direction vector.
  double radial_at(const Vec& dir) const;

  bool has_partials() const { return partials_.has_value(); }
  RadialDerivs partials(double theta, double phi) const;

  ChartPoint boundary_point(double theta, double phi) const;
  ChartPoint boundary_point(const Vec& dir) const;

  /// True when p lies strictly inside the body.
  bool contains(const ChartPoint& p) const;

 private:
  SpaceKind space_;
  ChartPoint center_;
  RadialFn radial_;
  std::optional<RadialPartialsFn> partials_;
};

/// (theta, phi) of a nonzero 3D vector; phi only (theta = 0) in 2D.
std::pair<double, double> angles_of(const Vec& dir);

/// Chart ball of radius R around the origin.
RadialBody make_ball(const SpaceKind& space, double R);

/// Chart ellipsoid with semi-axes along the coordinate axes (2D: ellipse,
/// third axis ignored), centered at the origin; analytic partials included.
RadialBody make_ellipsoid(const SpaceKind& space, double a, double b, double c);

/// The image of `body` under an isometry, re-parametrized as a radial body
/// around the image of its center. Partials are not carried over.
RadialBody transformed(const RadialBody& body, const Isometry& iso);

/// Re-parametrize `body` around the chart origin after moving `ref` there.
RadialBody recentered(const RadialBody& body, const ChartPoint& ref);

}  // namespace mono
