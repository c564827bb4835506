#include "mono/radial_body.hpp"

#include <cmath>
#include <sstream>

namespace mono {

RadialBody::RadialBody(SpaceKind space, ChartPoint center, RadialFn radial, std::optional<RadialPartialsFn> partials)
    : space_(std::move(space)), center_(std::move(center)), radial_(std::move(radial)), partials_(std::move(partials)) {
  require_in_chart(space_, center_);
  if (!radial_) throw DomainError("radial body needs a radial function");
}

std::pair<double, double> angles_of(const Vec& dir) {
  if (dir.size() == 2) return {0.0, std::atan2(dir(1), dir(0))};
  return {std::atan2(dir(2), std::hypot(dir(0), dir(1))), std::atan2(dir(1), dir(0))};
}

double RadialBody::radial_at(const Vec& dir) const {
  const auto [t, p] = angles_of(dir);
  return radial_(t, p);
}

RadialDerivs RadialBody::partials(double theta, double phi) const {
  if (!partials_) throw DomainError("radial body carries no analytic partials");
  return (*partials_)(theta, phi);
}

ChartPoint RadialBody::boundary_point(double theta, double phi) const {
  const Vec u = dim() == 3 ? direction3(theta, phi) : direction2(phi);
  return center_ + radial_(theta, phi) * u;
}

ChartPoint RadialBody::boundary_point(const Vec& dir) const {
  const Vec u = dir.normalized();
  return center_ + radial_at(u) * u;
}

bool RadialBody::contains(const ChartPoint& p) const {
  if (!in_chart(space_, p)) return false;
  const Vec v = p - center_;
  const double n = v.norm();
  if (n == 0.0) return true;
  return n < radial_at(v);
}

RadialBody make_ball(const SpaceKind& space, double R) {
  if (!(R > 0.0)) throw DomainError("ball radius must be positive");
  if (space.geometry() == Geometry::Hyperbolic && !(R < 1.0)) {
    throw DomainError("hyperbolic chart ball needs R < 1");
  }
  return RadialBody(space, ChartPoint::Zero(space.dim()), [R](double, double) { return R; },
                    RadialPartialsFn([R](double, double) { return RadialDerivs{R, 0, 0, 0, 0, 0}; }));
}

RadialBody make_ellipsoid(const SpaceKind& space, double a, double b, double c) {
  if (!(a > 0.0 && b > 0.0 && (space.dim() == 2 || c > 0.0))) throw DomainError("semi-axes must be positive");
  const double ia = 1.0 / (a * a), ib = 1.0 / (b * b);
  if (space.dim() == 2) {
    auto partials = [ia, ib](double, double phi) {
      const double cp = std::cos(phi), sp = std::sin(phi);
      const double q = cp * cp * ia + sp * sp * ib;
      const double q_p = std::sin(2.0 * phi) * (ib - ia);
      const double q_pp = 2.0 * std::cos(2.0 * phi) * (ib - ia);
      RadialDerivs d;
      d.r = 1.0 / std::sqrt(q);
      d.r_p = -0.5 * std::pow(q, -1.5) * q_p;
      d.r_pp = 0.75 * std::pow(q, -2.5) * q_p * q_p - 0.5 * std::pow(q, -1.5) * q_pp;
      return d;
    };
    return RadialBody(space, ChartPoint::Zero(2), [partials](double t, double p) { return partials(t, p).r; },
                      RadialPartialsFn(partials));
  }
  const double ic = 1.0 / (c * c);
  auto partials = [ia, ib, ic](double theta, double phi) {
    const double ct = std::cos(theta), st = std::sin(theta);
    const double cp = std::cos(phi), sp = std::sin(phi);
    const double A = cp * cp * ia + sp * sp * ib;
    const double A_p = std::sin(2.0 * phi) * (ib - ia);
    const double A_pp = 2.0 * std::cos(2.0 * phi) * (ib - ia);
    const double q = ct * ct * A + st * st * ic;
    const double q_t = std::sin(2.0 * theta) * (ic - A);
    const double q_tt = 2.0 * std::cos(2.0 * theta) * (ic - A);
    const double q_p = ct * ct * A_p;
    const double q_pp = ct * ct * A_pp;
    const double q_tp = -std::sin(2.0 * theta) * A_p;
    const double m1 = -0.5 * std::pow(q, -1.5);
    const double m2 = 0.75 * std::pow(q, -2.5);
    RadialDerivs d;
    d.r = 1.0 / std::sqrt(q);
    d.r_t = m1 * q_t;
    d.r_p = m1 * q_p;
    d.r_tt = m2 * q_t * q_t + m1 * q_tt;
    d.r_tp = m2 * q_t * q_p + m1 * q_tp;
    d.r_pp = m2 * q_p * q_p + m1 * q_pp;
    return d;
  };
  return RadialBody(space, ChartPoint::Zero(3), [partials](double t, double p) { return partials(t, p).r; },
                    RadialPartialsFn(partials));
}

RadialBody transformed(const RadialBody& body, const Isometry& iso) {
  const SpaceKind& space = body.space();
  const ChartPoint new_center = iso(body.center());
  const Isometry inv = iso.inverse();
  // Probe length along a ray from the new center; any point of the chart on
  // the ray pins down the original direction because the map is projective.
  const double probe = space.geometry() == Geometry::Hyperbolic ? 0.25 * (1.0 - new_center.norm()) : 1e-2;
  const int dim = space.dim();
  auto radial = [body, iso, inv, new_center, probe, dim](double theta, double phi) {
    const Vec u_new = dim == 3 ? direction3(theta, phi) : direction2(phi);
    const Vec u_old = (inv(ChartPoint(new_center + probe * u_new)) - body.center()).normalized();
    const ChartPoint x = body.boundary_point(u_old);
    return (iso(x) - new_center).norm();
  };
  return RadialBody(space, new_center, radial);
}

RadialBody recentered(const RadialBody& body, const ChartPoint& ref) {
  return transformed(body, center_isometry(body.space(), ref));
}

}  // namespace mono
