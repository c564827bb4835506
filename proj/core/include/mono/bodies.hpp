#pragma once

#include "mono/radial_body.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace mono {

/// Support function h(phi) = 1 + sum_{k=2..K} (a_k cos k phi + b_k sin k phi)
/// of a plane convex body with Steiner point at the origin (no k = 1 term).
struct SupportHarmonics2D {
  double c0 = 1.0;
  std::vector<double> a;  // a[k - 2]
  std::vector<double> b;

  int k_max() const { return static_cast<int>(a.size()) + 1; }
  /// h, h', h''.
  std::array<double, 3> eval(double phi) const;
  /// min of h + h'' over a uniform grid; positive means strictly convex.
  double min_convexity_margin(int grid = 4096) const;
};

/// Coefficients uniform in [-c0 / (4 k^2), c0 / (4 k^2)], drawn from a
/// seeded mt19937_64 stream; rejected until the convexity margin is positive
/// (at most 1000 draws, then NumericalError).
SupportHarmonics2D random_harmonics(std::uint64_t seed, double c0 = 1.0, int k_max = 6);

/// Chart body with support function scale * h, as a radial body around the
/// chart origin. The boundary x = h n + h' n' is inverted to a radial
/// function by Newton steps on the (monotone) polar angle.
RadialBody convex_body_2d(const SpaceKind& space, const SupportHarmonics2D& h, double scale);

/// random_harmonics followed by convex_body_2d. Spherical bodies must stay
/// within distance pi/2 - 0.2 of their centroid and hyperbolic ones inside
/// the unit disk; violations throw DomainError.
RadialBody random_convex_2d(const SpaceKind& space, std::uint64_t seed, double scale = 0.5, int k_max = 6,
                            double c0 = 1.0);

/// The ellipsoid (a, b, c) plus amplitude * P(u), P a random polynomial of
/// degree <= 3 in the direction u with |P| <= 1. Redrawn until the minimum
/// Gaussian curvature is positive (at most 100 draws).
RadialBody perturbed_ellipsoid_3d(std::array<double, 3> semi_axes, std::uint64_t seed, double amplitude,
                                  const SpaceKind& space = SpaceKind::euclidean(3));

struct MeshExport {
  std::size_t vertices = 0;
  std::size_t faces = 0;
};

/// Triangulated OBJ of the chart surface: both poles plus n_theta - 1 rings
/// of n_phi vertices, fans at the poles. With `embedded_path` set (curved
/// spaces only) also writes the embedded surface, first three coordinates.
MeshExport export_mesh(const RadialBody& body, int n_theta, int n_phi, const std::string& path,
                       const std::string& embedded_path = "");

struct ObjMesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<int, 3>> faces;  // zero based
};

ObjMesh read_obj(const std::string& path);

/// `phi,radial` (2D) or `theta,phi,radial` (3D) on a uniform grid.
void write_body_csv(const RadialBody& body, const std::string& path, int n_theta = 64, int n_phi = 128);

}  // namespace mono
