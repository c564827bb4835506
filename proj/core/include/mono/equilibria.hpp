#pragma once

#include "mono/gomboc.hpp"
#include "mono/integrate.hpp"
#include "mono/radial_body.hpp"

#include <functional>
#include <string>
#include <vector>

namespace mono {

enum class EquilibriumKind { Stable, Saddle, Unstable, Degenerate };

std::string to_string(EquilibriumKind k);

struct EquilibriumPoint {
  double theta = 0.0;  // 0 in 2D
  double phi = 0.0;
  double distance_value = 0.0;
  EquilibriumKind kind = EquilibriumKind::Degenerate;
  std::vector<double> hessian_eigenvalues;  // ascending
};

struct EquilibriumCensus {
  int S = 0;
  int H = 0;
  int U = 0;
  int degenerate = 0;
  std::vector<EquilibriumPoint> points;
  std::vector<std::string> warnings;

  int total() const { return S + H + U + degenerate; }
};

/// u -> distance from `ref` to the boundary point in direction u, with
/// directions taken around `ref` after moving it to the chart origin.
/// Strictly increasing in the chart radial value for the curved and flat
/// geometries; the normed profile divides by the unit-ball radial function.
using DistanceProfile = std::function<double(double theta, double phi)>;
DistanceProfile distance_profile(const RadialBody& body, const ChartPoint& ref);

struct EquilibriumOptions {
  int grid = 64;          // polar nodes per chart band (3D) or total nodes (2D) / 4
  double merge = 1e-3;    // radians
  double degenerate_rel = 1e-8;
};

/// All critical points of the distance profile from `ref`.
///
/// 3D: two overlapping charts cover the direction sphere, the usual one
/// owning |theta| <= pi/4 and a rotated one owning the caps around the
/// poles. Zeros of the gradient are located on a triangulated grid, polished
/// by damped Newton steps and classified by the Hessian in an orthonormal
/// frame. 2D: sign changes of the derivative over a uniform phi grid.
EquilibriumCensus find_equilibria(const RadialBody& body, const ChartPoint& ref,
                                  const EquilibriumOptions& opts = {});

enum class PoincareHopf { Holds, Violated, Inconclusive };
std::string to_string(PoincareHopf r);

/// S - U = 0 (dim 2), S - H + U = 2 (dim 3); inconclusive with degenerate points.
PoincareHopf poincare_hopf_check(const EquilibriumCensus& census, int dim);

/// Census of a 2D body around its own centroid. Spherical bodies must lie in
/// the open hemisphere around the centroid (DomainError otherwise).
EquilibriumCensus count_equilibria_2d(const RadialBody& body, const QuadratureSpec& spec = {},
                                      int grid = 2048);

/// Gaussian curvature of the chart surface r(theta, phi) u(theta, phi).
double gaussian_curvature(const RadialBody& body, double theta, double phi);

struct CurvatureMin {
  double value = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// Minimum over a (grid + 1) x (2 grid) grid of (theta, phi), poles included.
CurvatureMin min_curvature(const RadialBody& body, int grid = 96, int jobs = 1);

/// Largest d <= 0.5 with min curvature >= 1e-6 for K(c, d) at every c of an
/// n_c point grid in c_range; found by bisection on d.
double find_dstar(std::pair<double, double> c_range, double R, const SpaceKind& space, int grid = 48,
                  int n_c = 5, int jobs = 1);

struct HausdorffEstimate {
  double value = 0.0;  // grid maximum
  double bound = 0.0;  // value plus a Lipschitz allowance for the gaps between nodes
};

/// Hausdorff distance to the ball of chart radius R (R times the unit ball
/// in normed spaces), both around the chart origin: the largest radial gap
/// in the space's own distance, which bounds the distance from above.
HausdorffEstimate hausdorff_to_ball(const RadialBody& body, double R, int grid = 128);

struct Certificate {
  gomboc::GombocParams params;  // with c = c_star once centering succeeds
  double eps = 0.0;
  double c_star = 0.0;
  double M3 = 0.0;
  double centroid_residual = 0.0;
  EquilibriumCensus census;
  bool poles_ok = false;
  double smoothness_defect = 0.0;
  CurvatureMin min_curvature;
  HausdorffEstimate hausdorff;
  bool pass_A = false;  // C^2 boundary
  bool pass_B = false;  // one stable and one unstable point, at the poles
  bool pass_C = false;  // positive Gaussian curvature
  bool pass_D = false;  // centroid at the origin
  bool pass_E = false;  // Hausdorff distance to the ball at most eps
  std::vector<std::string> errors;

  bool passed() const { return pass_A && pass_B && pass_C && pass_D && pass_E; }
};

struct CertifyOptions {
  QuadratureSpec spec;
  int equilibria_grid = 64;
  int curvature_grid = 96;
  int hausdorff_grid = 128;
};

/// Center K(c, d) (params.c is ignored), then check (A) C^2 boundary,
/// (B) exactly one stable and one unstable point at the poles, (C) positive
/// curvature, (D) centroid at the origin and (E) Hausdorff distance <= eps.
/// Failures are recorded, never thrown.
Certificate certify_mono_monostatic(const gomboc::GombocParams& params, double eps,
                                    const CertifyOptions& opts = {});

}  // namespace mono
