#pragma once

#include "mono/gomboc.hpp"
#include "mono/quadrature.hpp"
#include "mono/radial_body.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

namespace mono {

struct MomentReport {
  double value = 0.0;
  /// |value(n) - value(2n)| when spec.richardson, else 0.
  double error_estimate = 0.0;
  QuadratureSpec spec;
};

/// How the integral along each ray is evaluated.
enum class RayIntegral {
  ClosedForm,  // antiderivative of r^3 w(r) in closed form
  Numeric,     // Gauss-Legendre with spec.n_r nodes
};

/// First moment of a 3D body centered at the chart origin with respect to
/// the plane {x3 = 0} oriented by +e3, in spherical chart coordinates.
/// With richardson on, `value` comes from the doubled grid.
MomentReport first_moment_M3(const RadialBody& body, const QuadratureSpec& spec = {},
                             RayIntegral ray = RayIntegral::ClosedForm);

/// Single-grid M3 (no error estimate).
double first_moment_M3_value(const RadialBody& body, const QuadratureSpec& spec = {},
                             RayIntegral ray = RayIntegral::ClosedForm);

/// dM3/dd at d = 0 for K(c, d): two-sided difference quotients with steps
/// 1e-3 and 5e-4 combined by Richardson extrapolation.
double dM3_dd_at0(double c, double R, const SpaceKind& space, const QuadratureSpec& spec = {});

/// (4 pi / 3) R^4 / (R^2 + 1)^(5/2): the d-derivative at d = 0 for c = 1 on the sphere.
double dM3_dd_at0_closed_form(double R);

/// Leibniz-rule form on the sphere, any c:
/// R^4 / (R^2 + 1)^(5/2) * double integral of rho_c cos(theta) sin(theta).
double dM3_dd_at0_leibniz(double c, double R, const QuadratureSpec& spec = {});

struct Rho0Constant {
  double total = 0.0;        // double integral over theta and phi
  double per_azimuth = 0.0;  // total / (2 pi)
};

/// Limit c -> 0+ of the double integral of rho_c cos(theta) sin(theta).
/// The azimuth is integrated in closed form; spec.n_theta sets the polar rule.
Rho0Constant rho0_moment_constant(const QuadratureSpec& spec = {128, 128, 16, false, 1});

struct CentroidReport {
  ChartPoint point;
  double volume = 0.0;  // in the space's own measure
};

/// Centroid in the space's own sense: normalized position integral of the
/// embedded body (curved spaces) or the Lebesgue centroid (flat and normed).
/// Integrates in geodesic polar coordinates around the body's center after
/// moving that center to the chart origin.
CentroidReport centroid_report(const RadialBody& body, const QuadratureSpec& spec = {});
ChartPoint centroid(const RadialBody& body, const QuadratureSpec& spec = {});

struct MomentCheck {
  double max_abs = 0.0;
  double error_estimate = 0.0;
};

/// Largest |first moment| over `n_dirs` random oriented geodesic hyperplanes
/// through `point`, integrated in chart coordinates with the volume weight.
MomentCheck moment_condition_check(const RadialBody& body, const ChartPoint& point, int n_dirs,
                                   const QuadratureSpec& spec = {}, std::uint64_t seed = 1);

class NoSignChange : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

struct CenteringResult {
  double c_star = 0.0;
  double M3 = 0.0;
  double c_lo = 0.0;  // final bracket
  double c_hi = 0.0;
  int evaluations = 0;
};

/// Shape parameter c* in the bracket with |M3(K(c*, d))| <= tol, by
/// bisection with guarded secant steps. Without a bracket, c in [0.01, 1] is
/// scanned at 32 points (from c = 1 downwards) for the first sign change.
/// Throws NoSignChange when no bracket exists.
CenteringResult find_centering_c(double d, double R, const SpaceKind& space,
                                 std::optional<std::pair<double, double>> bracket = std::nullopt,
                                 double tol = 1e-12, const QuadratureSpec& spec = {});

struct SweepRow {
  double c = 0.0;
  double d = 0.0;
  double R = 0.0;
  Geometry geometry = Geometry::Spherical;
  MomentReport report;
};

/// M3 over the grid cs x ds (row-major in c); parallel over grid points.
std::vector<SweepRow> sweep_M3(const std::vector<double>& cs, const std::vector<double>& ds, double R,
                               const SpaceKind& space, const QuadratureSpec& spec = {});

/// Header `c,d,R,space,M3,err,n_theta,n_phi,n_r`, one line per row.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace mono
