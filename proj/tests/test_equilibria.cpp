#include "mono/equilibria.hpp"
#include "mono/gomboc.hpp"
#include "mono/integrate.hpp"

#include <doctest.h>

using namespace mono;

namespace {

gomboc::GombocParams params(double c, double d, double R, const SpaceKind& space) {
  gomboc::GombocParams p;
  p.c = c;
  p.d = d;
  p.R = R;
  p.space = space;
  return p;
}

// Closed-form Gaussian curvature of the ellipsoid x^2/a^2 + y^2/b^2 + z^2/c^2 = 1.
double ellipsoid_K(double a, double b, double c, const Vec& x) {
  const double s = x(0) * x(0) / std::pow(a, 4) + x(1) * x(1) / std::pow(b, 4) + x(2) * x(2) / std::pow(c, 4);
  return 1.0 / (a * a * b * b * c * c * s * s);
}

}  // namespace

TEST_CASE("distance profiles") {
  const RadialBody ball = make_ball(SpaceKind::spherical(3), 0.8);
  const DistanceProfile P = distance_profile(ball, make_vec({0, 0, 0}));
  for (double th = -1.5; th < 1.6; th += 0.5) CHECK(P(th, 2.0 * th) == doctest::Approx(std::atan(0.8)).epsilon(1e-14));

  const auto gp = params(0.1, 0.05, 1.0, SpaceKind::spherical(3));
  const DistanceProfile Q = distance_profile(gomboc::build_body(gp), make_vec({0, 0, 0}));
  for (double th = -1.5; th < 1.6; th += 0.3) {
    for (double ph = 0.0; ph < 6.3; ph += 0.7) {
      CHECK(Q(th, ph) == doctest::Approx(std::atan(1.0 + 0.05 * gomboc::rho(0.1, th, ph))).epsilon(1e-14));
    }
  }
  // Off-center reference: the profile is the distance to the boundary point.
  const SpaceKind E = SpaceKind::euclidean(3);
  const DistanceProfile off = distance_profile(make_ball(E, 1.0), make_vec({0.5, 0, 0}));
  CHECK(off(0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(off(0.0, kPi) == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(off(kHalfPi, 0.0) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-10));
  CHECK_THROWS(distance_profile(make_ball(E, 1.0), make_vec({2, 0, 0})));
}

TEST_CASE("Euclidean ellipsoid has six axis equilibria") {
  const RadialBody ell = make_ellipsoid(SpaceKind::euclidean(3), 2, 1.5, 1);
  const EquilibriumCensus c = find_equilibria(ell, make_vec({0, 0, 0}));
  CHECK(c.S == 2);
  CHECK(c.H == 2);
  CHECK(c.U == 2);
  CHECK(c.degenerate == 0);
  for (const auto& p : c.points) {
    const Vec u = direction3(p.theta, p.phi);
    if (p.kind == EquilibriumKind::Stable) CHECK(std::fabs(std::fabs(u(2)) - 1.0) < 1e-8);
    if (p.kind == EquilibriumKind::Saddle) CHECK(std::fabs(std::fabs(u(1)) - 1.0) < 1e-8);
    if (p.kind == EquilibriumKind::Unstable) CHECK(std::fabs(std::fabs(u(0)) - 1.0) < 1e-8);
  }
  // Brute-force oracle: small gradient only near the six axis directions.
  const DistanceProfile P = distance_profile(ell, make_vec({0, 0, 0}));
  const int n = 400;
  for (int i = 1; i < n; ++i) {
    const double th = -kHalfPi + kPi * i / n;
    for (int j = 0; j < 2 * n; ++j) {
      const double ph = kPi * j / n, h = 1e-6;
      const double gt = (P(th + h, ph) - P(th - h, ph)) / (2 * h);
      const double gp = (P(th, ph + h) - P(th, ph - h)) / (2 * h) / std::cos(th);
      if (std::hypot(gt, gp) < 1e-3) {
        const Vec u = direction3(th, ph);
        CHECK(u.cwiseAbs().maxCoeff() > 0.999);
      }
    }
  }
  CHECK(poincare_hopf_check(c, 3) == PoincareHopf::Holds);
}

TEST_CASE("ellipsoids in curved and normed spaces") {
  for (const SpaceKind& space : {SpaceKind::spherical(3), SpaceKind::hyperbolic(3)}) {
    const EquilibriumCensus c = find_equilibria(make_ellipsoid(space, 0.6, 0.45, 0.3), make_vec({0, 0, 0}));
    CHECK(c.S == 2);
    CHECK(c.H == 2);
    CHECK(c.U == 2);
  }
}

TEST_CASE("K(c, d) has exactly two equilibria, at the poles") {
  for (const SpaceKind& space : {SpaceKind::spherical(3), SpaceKind::hyperbolic(3), SpaceKind::euclidean(3),
                                 SpaceKind::normed(3, NormProfile::superellipsoid(4))}) {
    for (double c : {0.05, 0.3, 0.7}) {
      for (double d : {0.02, 0.3}) {
        const double R = space.geometry() == Geometry::Hyperbolic ? 0.5 : 1.0;
        const RadialBody body = gomboc::build_body(params(c, d, R, space));
        const EquilibriumCensus e = find_equilibria(body, make_vec({0, 0, 0}), {32});
        CAPTURE(space.describe());
        CAPTURE(c);
        CAPTURE(d);
        REQUIRE(e.points.size() == 2);
        CHECK(e.S == 1);
        CHECK(e.U == 1);
        CHECK(e.H == 0);
        for (const auto& p : e.points) {
          if (p.kind == EquilibriumKind::Stable) CHECK(p.theta == doctest::Approx(-kHalfPi).epsilon(1e-6));
          if (p.kind == EquilibriumKind::Unstable) CHECK(p.theta == doctest::Approx(kHalfPi).epsilon(1e-6));
        }
      }
    }
  }
}

TEST_CASE("constant profiles are reported as degenerate") {
  const EquilibriumCensus c = find_equilibria(make_ball(SpaceKind::spherical(3), 0.7), make_vec({0, 0, 0}));
  CHECK(c.degenerate >= 1);
  CHECK_FALSE(c.warnings.empty());
  CHECK(poincare_hopf_check(c, 3) == PoincareHopf::Inconclusive);
  const EquilibriumCensus circle = count_equilibria_2d(make_ball(SpaceKind::euclidean(2), 1.0));
  CHECK(circle.degenerate >= 1);
  CHECK_FALSE(circle.warnings.empty());
}

TEST_CASE("Poincare-Hopf bookkeeping") {
  EquilibriumCensus c;
  c.S = 1;
  c.U = 1;
  CHECK(poincare_hopf_check(c, 3) == PoincareHopf::Holds);
  c.S = c.H = c.U = 2;
  CHECK(poincare_hopf_check(c, 3) == PoincareHopf::Holds);
  c.S = 2;
  c.H = 0;
  c.U = 1;
  CHECK(poincare_hopf_check(c, 2) == PoincareHopf::Violated);
  c.degenerate = 1;
  CHECK(poincare_hopf_check(c, 2) == PoincareHopf::Inconclusive);
  CHECK(to_string(PoincareHopf::Holds) != to_string(PoincareHopf::Violated));
}

TEST_CASE("plane bodies") {
  for (const SpaceKind& space : {SpaceKind::euclidean(2), SpaceKind::spherical(2), SpaceKind::hyperbolic(2),
                                 SpaceKind::normed(2, NormProfile::sphere())}) {
    const EquilibriumCensus e = count_equilibria_2d(make_ellipsoid(space, 0.6, 0.4, 1.0));
    CHECK(e.S == 2);
    CHECK(e.U == 2);
    CHECK(e.degenerate == 0);
    for (const auto& p : e.points) {
      const double along = std::fabs(std::cos(p.phi));
      if (p.kind == EquilibriumKind::Stable) CHECK(along < 1e-8);
      if (p.kind == EquilibriumKind::Unstable) CHECK(along == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("Gaussian curvature") {
  const RadialBody ball = make_ball(SpaceKind::euclidean(3), 2.0);
  for (double th : {-kHalfPi, -0.7, 0.0, 1.2, kHalfPi}) CHECK(gaussian_curvature(ball, th, 0.4) == doctest::Approx(0.25).epsilon(1e-9));

  for (const auto& [a, b, c] : {std::array<double, 3>{1, 1, 0.5}, std::array<double, 3>{2, 1.5, 1}}) {
    const RadialBody ell = make_ellipsoid(SpaceKind::euclidean(3), a, b, c);
    for (double th = -kHalfPi; th <= kHalfPi + 1e-12; th += kPi / 12) {
      for (double ph = 0.1; ph < 6.3; ph += 0.5) {
        const Vec x = ell.boundary_point(th, ph);
        CHECK(gaussian_curvature(ell, th, ph) == doctest::Approx(ellipsoid_K(a, b, c, x)).epsilon(1e-6));
      }
    }
  }
  // Pole of (1, 1, 0.5): c^2 / (a^2 b^2).
  CHECK(gaussian_curvature(make_ellipsoid(SpaceKind::euclidean(3), 1, 1, 0.5), kHalfPi, 0.0) ==
        doctest::Approx(0.25).epsilon(1e-6));

  // Without analytic partials the difference path is used.
  const RadialBody plain(SpaceKind::euclidean(3), make_vec({0, 0, 0}),
                         [ell = make_ellipsoid(SpaceKind::euclidean(3), 2, 1.5, 1)](double t, double p) { return ell.radial(t, p); });
  CHECK(gaussian_curvature(plain, 0.3, 0.8) ==
        doctest::Approx(ellipsoid_K(2, 1.5, 1, plain.boundary_point(0.3, 0.8))).epsilon(1e-4));

  const CurvatureMin m = min_curvature(make_ellipsoid(SpaceKind::euclidean(3), 2, 1.5, 1), 48);
  // Smallest at the ends of the shortest axis: c^2 / (a^2 b^2).
  CHECK(m.value == doctest::Approx(1.0 / 9.0).epsilon(1e-6));
}

TEST_CASE("curvature of K(c*, d)") {
  const SpaceKind S = SpaceKind::spherical(3);
  CHECK(min_curvature(gomboc::build_body(params(0.3, 0.0, 1.0, S)), 32).value == doctest::Approx(1.0).epsilon(1e-9));
  const double c = find_centering_c(0.001, 1.0, S).c_star;
  CHECK(min_curvature(gomboc::build_body(params(c, 0.001, 1.0, S)), 64).value > 0.0);
  // At d = 0.02 the centered body is not convex.
  const double c2 = find_centering_c(0.02, 1.0, S).c_star;
  CHECK(min_curvature(gomboc::build_body(params(c2, 0.02, 1.0, S)), 64).value < 0.0);
}

TEST_CASE("convexity threshold in d") {
  const double dstar = find_dstar({0.05, 0.06}, 1.0, SpaceKind::spherical(3), 48, 3);
  CHECK(dstar == doctest::Approx(0.002194).epsilon(2e-3));
}

TEST_CASE("Hausdorff distance to the ball") {
  const SpaceKind S = SpaceKind::spherical(3);
  CHECK(hausdorff_to_ball(make_ball(S, 1.0), 1.0).value < 1e-15);
  for (double d : {0.02, 0.1}) {
    const RadialBody body = gomboc::build_body(params(0.2, d, 1.0, S));
    const HausdorffEstimate h = hausdorff_to_ball(body, 1.0);
    // The radial gap is largest where rho = -1, on the south side.
    const double outer = std::atan(1.0 + d) - std::atan(1.0), inner = std::atan(1.0) - std::atan(1.0 - d);
    CHECK(h.value <= std::max(inner, outer) + 1e-12);
    CHECK(h.value == doctest::Approx(std::max(inner, outer)).epsilon(1e-9));
    CHECK(h.bound >= h.value);
  }
  const SpaceKind N = SpaceKind::normed(3, NormProfile::superellipsoid(4));
  const HausdorffEstimate hn = hausdorff_to_ball(gomboc::build_body(params(0.3, 0.05, 1.0, N)), 1.0);
  CHECK(hn.value == doctest::Approx(0.05).epsilon(1e-9));
}

TEST_CASE("certificates") {
  SUBCASE("below the convexity threshold every condition holds") {
    const Certificate c = certify_mono_monostatic(params(1.0, 0.001, 1.0, SpaceKind::spherical(3)), 0.05);
    CHECK(c.passed());
    CHECK(c.census.S == 1);
    CHECK(c.census.U == 1);
    CHECK(c.census.H == 0);
    CHECK(c.poles_ok);
    CHECK(c.centroid_residual < 1e-6);
    CHECK(std::fabs(c.M3) < 1e-10);
    CHECK(c.errors.empty());
  }
  SUBCASE("at d = 0.02 only the curvature condition fails") {
    const Certificate c = certify_mono_monostatic(params(1.0, 0.02, 1.0, SpaceKind::spherical(3)), 0.05);
    CHECK(c.pass_A);
    CHECK(c.pass_B);
    CHECK_FALSE(c.pass_C);
    CHECK(c.pass_D);
    CHECK(c.pass_E);
    CHECK_FALSE(c.passed());
  }
  SUBCASE("eps below the perturbation fails E") {
    const Certificate c = certify_mono_monostatic(params(1.0, 0.001, 1.0, SpaceKind::spherical(3)), 1e-5);
    CHECK_FALSE(c.pass_E);
  }
  SUBCASE("invalid parameters are recorded, not thrown") {
    const Certificate c = certify_mono_monostatic(params(1.0, 0.5, 0.9, SpaceKind::hyperbolic(3)), 0.05);
    CHECK_FALSE(c.passed());
    CHECK_FALSE(c.errors.empty());
  }
}
