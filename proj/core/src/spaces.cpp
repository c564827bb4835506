#include "mono/spaces.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace mono {

std::string to_string(Geometry g) {
  switch (g) {
    case Geometry::Euclidean: return "euclidean";
    case Geometry::Spherical: return "spherical";
    case Geometry::Hyperbolic: return "hyperbolic";
    case Geometry::Normed: return "normed";
  }
  return "unknown";
}

Geometry parse_geometry(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "euclidean") return Geometry::Euclidean;
  if (s == "spherical") return Geometry::Spherical;
  if (s == "hyperbolic") return Geometry::Hyperbolic;
  if (s == "normed") return Geometry::Normed;
  throw DomainError("unknown geometry '" + std::string(name) + "'");
}

SpaceKind::SpaceKind(Geometry g, int dim, std::optional<NormProfile> norm)
    : geometry_(g), dim_(dim), norm_(std::move(norm)) {
  if (dim != 2 && dim != 3) throw DomainError("dimension must be 2 or 3, got " + std::to_string(dim));
  if ((g == Geometry::Normed) != norm_.has_value()) {
    throw DomainError("a norm profile is required exactly for normed spaces");
  }
}

SpaceKind SpaceKind::euclidean(int dim) { return SpaceKind(Geometry::Euclidean, dim, std::nullopt); }
SpaceKind SpaceKind::spherical(int dim) { return SpaceKind(Geometry::Spherical, dim, std::nullopt); }
SpaceKind SpaceKind::hyperbolic(int dim) { return SpaceKind(Geometry::Hyperbolic, dim, std::nullopt); }
SpaceKind SpaceKind::normed(int dim, NormProfile profile) {
  return SpaceKind(Geometry::Normed, dim, std::move(profile));
}

const NormProfile& SpaceKind::norm_profile() const {
  if (!norm_) throw DomainError("space " + describe() + " has no norm profile");
  return *norm_;
}

std::string SpaceKind::describe() const {
  std::ostringstream os;
  os << to_string(geometry_) << dim_ << "d";
  if (norm_) os << "[" << norm_->describe() << "]";
  return os.str();
}

bool in_chart(const SpaceKind& space, const ChartPoint& p) {
  if (p.size() != space.dim() || !p.allFinite()) return false;
  if (space.geometry() == Geometry::Hyperbolic) return p.squaredNorm() < 1.0;
  return true;
}

void require_in_chart(const SpaceKind& space, const ChartPoint& p) {
  if (p.size() != space.dim()) {
    throw DomainError("chart point has " + std::to_string(p.size()) + " coordinates, space " +
                      space.describe() + " needs " + std::to_string(space.dim()));
  }
  if (!in_chart(space, p)) {
    std::ostringstream os;
    os << "point (" << p.transpose() << ") outside the chart of " << space.describe();
    throw DomainError(os.str());
  }
}

namespace {

// Polar angle of p relative to the equatorial plane (3D) or the x axis (2D).
double polar_angle(const Vec& p) {
  if (p.size() == 2) return std::atan2(p(1), p(0));
  return std::atan2(p(2), std::hypot(p(0), p(1)));
}

}  // namespace

double gauge(const SpaceKind& space, const Vec& p) {
  const double n = p.norm();
  if (space.geometry() != Geometry::Normed || n == 0.0) return n;
  return n / space.norm_profile()(polar_angle(p));
}

double dist_from_origin(const SpaceKind& space, const ChartPoint& p) {
  require_in_chart(space, p);
  const double n = p.norm();
  switch (space.geometry()) {
    case Geometry::Spherical: return std::atan(n);
    case Geometry::Hyperbolic: return std::atanh(n);
    case Geometry::Euclidean: return n;
    case Geometry::Normed: return gauge(space, p);
  }
  return n;
}

double distance(const SpaceKind& space, const ChartPoint& p, const ChartPoint& q) {
  require_in_chart(space, p);
  require_in_chart(space, q);
  switch (space.geometry()) {
    case Geometry::Spherical: {
      // Chord length form is accurate for nearby points.
      const double chord = (embed(space, p) - embed(space, q)).norm();
      return 2.0 * std::asin(std::min(1.0, chord / 2.0));
    }
    case Geometry::Hyperbolic: {
      const Vec diff = embed(space, p) - embed(space, q);
      const double chord2 = std::max(0.0, lorentz_dot(diff, diff));
      return 2.0 * std::asinh(std::sqrt(chord2) / 2.0);
    }
    case Geometry::Euclidean: return (q - p).norm();
    case Geometry::Normed: return gauge(space, q - p);
  }
  return 0.0;
}

double volume_weight(const SpaceKind& space, const ChartPoint& p) {
  require_in_chart(space, p);
  const double n2 = p.squaredNorm();
  // Chart Jacobian exponent (d + 1) / 2.
  const double exponent = -(space.dim() + 1) / 2.0;
  switch (space.geometry()) {
    case Geometry::Spherical: return std::pow(1.0 + n2, exponent);
    case Geometry::Hyperbolic: return std::pow(1.0 - n2, exponent);
    default: return 1.0;
  }
}

double moment_weight_x3(const SpaceKind& space, const ChartPoint& p) {
  if (space.dim() != 3) throw DomainError("moment_weight_x3 needs a 3D space");
  require_in_chart(space, p);
  const double n2 = p.squaredNorm();
  switch (space.geometry()) {
    case Geometry::Spherical: return p(2) * std::pow(1.0 + n2, -2.5);
    case Geometry::Hyperbolic: return p(2) * std::pow(1.0 - n2, -2.5);
    default: return p(2);
  }
}

Vec embed(const SpaceKind& space, const ChartPoint& p) {
  require_in_chart(space, p);
  if (!space.curved()) return p;
  const int d = space.dim();
  const double n2 = p.squaredNorm();
  const double s = space.geometry() == Geometry::Spherical ? 1.0 / std::sqrt(1.0 + n2) : 1.0 / std::sqrt(1.0 - n2);
  Vec y(d + 1);
  y.head(d) = p * s;
  y(d) = s;
  return y;
}

ChartPoint chart_from_embedded(const SpaceKind& space, const Vec& y) {
  if (!space.curved()) return y;
  const int d = space.dim();
  if (y.size() != d + 1) throw DomainError("embedded vector has wrong length");
  if (!(y(d) > 0.0)) throw DomainError("embedded point outside the chart (last coordinate <= 0)");
  ChartPoint p = y.head(d) / y(d);
  require_in_chart(space, p);
  return p;
}

double lorentz_dot(const Vec& x, const Vec& y) {
  const Eigen::Index n = x.size();
  return x.head(n - 1).dot(y.head(n - 1)) - x(n - 1) * y(n - 1);
}

OrientedHyperplane OrientedHyperplane::through_origin(Vec normal) {
  const double n = normal.norm();
  if (!(n > 0.0)) throw DomainError("hyperplane normal must be nonzero");
  return OrientedHyperplane{normal / n, 0.0};
}

double sin_signed_distance(const SpaceKind& space, const OrientedHyperplane& h, const ChartPoint& p) {
  require_in_chart(space, p);
  if (h.normal.size() != space.dim()) throw DomainError("hyperplane normal has wrong dimension");
  const double lin = h.normal.dot(p) - h.offset;
  const double n2 = p.squaredNorm();
  switch (space.geometry()) {
    case Geometry::Spherical:
      // <embed(p), (n, -o)> / |(n, -o)|
      return lin / std::sqrt((1.0 + n2) * (1.0 + h.offset * h.offset));
    case Geometry::Hyperbolic: {
      // <embed(p), (n, o)>_L / sqrt(<(n, o), (n, o)>_L)
      const double o2 = h.offset * h.offset;
      if (!(o2 < 1.0)) throw DomainError("hyperplane does not meet the projective ball");
      return lin / std::sqrt((1.0 - n2) * (1.0 - o2));
    }
    case Geometry::Euclidean: return lin;
    case Geometry::Normed: {
      const Vec& n = h.normal;
      const double alpha = polar_angle(n);
      return lin / space.norm_profile().support(alpha);
    }
  }
  return lin;
}

Isometry::Isometry(SpaceKind space, Mat matrix) : space_(std::move(space)), matrix_(std::move(matrix)) {
  const int n = space_.dim() + 1;
  if (matrix_.rows() != n || matrix_.cols() != n) throw DomainError("isometry matrix has wrong size");
}

Isometry Isometry::identity(const SpaceKind& space) {
  const int n = space.dim() + 1;
  return Isometry(space, Mat::Identity(n, n));
}

Vec Isometry::apply_homogeneous(const ChartPoint& p) const {
  require_in_chart(space_, p);
  const int d = space_.dim();
  Vec h(d + 1);
  h.head(d) = p;
  h(d) = 1.0;
  return matrix_ * h;
}

ChartPoint Isometry::operator()(const ChartPoint& p) const {
  const Vec h = apply_homogeneous(p);
  const int d = space_.dim();
  if (space_.geometry() == Geometry::Spherical && !(h(d) > 0.0)) {
    throw DomainError("isometry image leaves the open hemisphere of the chart");
  }
  ChartPoint q = h.head(d) / h(d);
  require_in_chart(space_, q);
  return q;
}

Isometry Isometry::inverse() const {
  if (space_.geometry() == Geometry::Spherical) return Isometry(space_, matrix_.transpose());
  return Isometry(space_, matrix_.inverse());
}

Isometry Isometry::then(const Isometry& next) const { return Isometry(space_, next.matrix_ * matrix_); }

Isometry center_isometry(const SpaceKind& space, const ChartPoint& p) {
  require_in_chart(space, p);
  const int d = space.dim();
  Mat m = Mat::Identity(d + 1, d + 1);
  const double r = p.norm();
  if (r == 0.0) return Isometry(space, m);
  if (!space.curved()) {
    m.block(0, d, d, 1) = -p;
    return Isometry(space, m);
  }
  // Work in the 2-plane spanned by the unit direction v of p and the pole.
  const Vec v = p / r;
  const Mat vvT = v * v.transpose();
  Mat top = Mat::Identity(d, d);
  double c = 0.0, s = 0.0;
  if (space.geometry() == Geometry::Spherical) {
    const double t = std::atan(r);
    c = std::cos(t);
    s = std::sin(t);
    // x_par' = c x_par - s x_last;  x_last' = s x_par + c x_last
    top += (c - 1.0) * vvT;
    m.block(0, 0, d, d) = top;
    m.block(0, d, d, 1) = -s * v;
    m.block(d, 0, 1, d) = s * v.transpose();
    m(d, d) = c;
  } else {
    const double t = std::atanh(r);
    c = std::cosh(t);
    s = std::sinh(t);
    // x_par' = c x_par - s x_last;  x_last' = -s x_par + c x_last
    top += (c - 1.0) * vvT;
    m.block(0, 0, d, d) = top;
    m.block(0, d, d, 1) = -s * v;
    m.block(d, 0, 1, d) = -s * v.transpose();
    m(d, d) = c;
  }
  return Isometry(space, m);
}

Isometry rotation_isometry(const SpaceKind& space, const Mat& rotation) {
  const int d = space.dim();
  if (rotation.rows() != d || rotation.cols() != d) throw DomainError("rotation has wrong size");
  Mat m = Mat::Identity(d + 1, d + 1);
  m.block(0, 0, d, d) = rotation;
  return Isometry(space, m);
}

}  // namespace mono
