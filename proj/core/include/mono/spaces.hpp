#pragma once

#include "mono/norm_profile.hpp"
#include "mono/types.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace mono {

enum class Geometry { Euclidean, Spherical, Hyperbolic, Normed };

std::string to_string(Geometry g);
/// Accepts "euclidean", "spherical", "hyperbolic", "normed".
Geometry parse_geometry(std::string_view name);

/// Geometry, chart model and dimension.
///
/// Charts: Euclidean and normed spaces use ambient coordinates, the sphere
/// uses the gnomonic chart of the open hemisphere around the north pole and
/// hyperbolic space uses the projective (Klein) ball. Both curved charts map
/// geodesics to straight lines.
class SpaceKind {
 public:
  static SpaceKind euclidean(int dim);
  static SpaceKind spherical(int dim);
  static SpaceKind hyperbolic(int dim);
  static SpaceKind normed(int dim, NormProfile profile);

  Geometry geometry() const { return geometry_; }
  int dim() const { return dim_; }
  /// Present exactly when geometry() == Normed.
  const std::optional<NormProfile>& norm() const { return norm_; }
  const NormProfile& norm_profile() const;

  bool curved() const { return geometry_ == Geometry::Spherical || geometry_ == Geometry::Hyperbolic; }
  /// Length of embedded vectors: dim + 1 for curved spaces, dim otherwise.
  int embedded_dim() const { return curved() ? dim_ + 1 : dim_; }

  std::string describe() const;

 private:
  SpaceKind(Geometry g, int dim, std::optional<NormProfile> norm);
  Geometry geometry_;
  int dim_;
  std::optional<NormProfile> norm_;
};

/// Throws DomainError unless p has dim() coordinates and lies in the chart.
void require_in_chart(const SpaceKind& space, const ChartPoint& p);
bool in_chart(const SpaceKind& space, const ChartPoint& p);

/// Minkowski gauge of p with respect to the space's unit ball.
double gauge(const SpaceKind& space, const Vec& p);

double dist_from_origin(const SpaceKind& space, const ChartPoint& p);
double distance(const SpaceKind& space, const ChartPoint& p, const ChartPoint& q);

/// Density of the volume measure with respect to chart Lebesgue measure.
double volume_weight(const SpaceKind& space, const ChartPoint& p);

/// First-moment density for the plane {x3 = 0} oriented by +e3 (3D only).
double moment_weight_x3(const SpaceKind& space, const ChartPoint& p);

/// Sphere: point of the unit sphere in R^{d+1}; hyperbolic: point of the
/// upper hyperboloid sheet; flat spaces: p itself.
Vec embed(const SpaceKind& space, const ChartPoint& p);
/// Inverse of embed (accepts any positive multiple for curved spaces).
ChartPoint chart_from_embedded(const SpaceKind& space, const Vec& y);

/// x1 y1 + ... + xd yd - x_{d+1} y_{d+1}.
double lorentz_dot(const Vec& x, const Vec& y);

/// Chart hyperplane {x : <normal, x> = offset}, oriented by normal.
struct OrientedHyperplane {
  Vec normal;  // unit Euclidean normal in chart coordinates
  double offset = 0.0;

  static OrientedHyperplane through_origin(Vec normal);
};

/// sin of the signed spherical distance, sinh of the signed hyperbolic
/// distance, or the plain signed (normed) distance from h to p.
double sin_signed_distance(const SpaceKind& space, const OrientedHyperplane& h, const ChartPoint& p);

/// Isometry of the space written as a projective map of the chart:
/// p -> chart(M (p, 1)). M is orthogonal for the sphere, a Lorentz
/// transformation for hyperbolic space and a homogeneous translation for
/// flat spaces.
class Isometry {
 public:
  Isometry(SpaceKind space, Mat matrix);
  static Isometry identity(const SpaceKind& space);

  ChartPoint operator()(const ChartPoint& p) const;
  /// Image in homogeneous coordinates, before dividing by the last entry.
  Vec apply_homogeneous(const ChartPoint& p) const;
  Isometry inverse() const;
  Isometry then(const Isometry& next) const;

  const Mat& matrix() const { return matrix_; }
  const SpaceKind& space() const { return space_; }

 private:
  SpaceKind space_;
  Mat matrix_;
};

/// Isometry moving p to the chart origin: translation (flat), rotation in the
/// plane of embed(p) and the pole (sphere), boost along the geodesic through
/// the origin and p (hyperbolic).
Isometry center_isometry(const SpaceKind& space, const ChartPoint& p);

/// Rotation about the chart origin (all geometries); `rotation` must be an
/// orthogonal dim x dim matrix.
Isometry rotation_isometry(const SpaceKind& space, const Mat& rotation);

}  // namespace mono
