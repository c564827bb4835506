#include "mono/gomboc.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace mono;
using namespace mono::gomboc;

namespace {
const double kCs[] = {0.01, 0.03, 0.1, 0.3, 0.5, 0.9, 1.0};
}

TEST_CASE("F: values") {
  CHECK(F(1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(F(0.1, 0.5) == doctest::Approx(0.04375 / 0.275).epsilon(1e-14));
  for (double c : kCs) {
    CHECK(F(c, 0.0) == 0.0);
    CHECK(F(c, 1.0) == 1.0);
  }
  for (double c : kCs) {
    for (int i = 1; i < 100; ++i) {
      const double x = i / 100.0;
      CHECK(F(c, x) == doctest::Approx(oracle::F(c, x)).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(F(0.0, 0.5), DomainError);
  CHECK_THROWS_AS(F(0.5, 1.5), DomainError);
  CHECK_THROWS_AS(F(1.5, 0.5), DomainError);
}

TEST_CASE("F: strictly increasing, identity at c = 1, vanishing limit") {
  for (double c : kCs) {
    double prev = F(c, 0.0);
    bool increasing = true;
    for (int i = 1; i <= 10000; ++i) {
      const double v = F(c, i / 10000.0);
      increasing = increasing && v > prev;
      prev = v;
    }
    CHECK(increasing);
  }
  double worst = 0.0;
  for (int i = 0; i <= 10000; ++i) worst = std::max(worst, std::fabs(F(1.0, i / 1e4) - i / 1e4));
  CHECK(worst <= 1e-15);
  for (double x : {0.0, 0.2, 0.5, 0.9}) {
    CHECK(F(1e-4, x) <= F(1e-2, x));
    CHECK(F(1e-8, x) < 1e-3);
  }
}

TEST_CASE("F: one-sided slopes at the endpoints tend to 1") {
  for (double c : kCs) {
    double prev0 = 2.0, prev1 = 2.0;
    for (double h : {1e-3, 1e-4, 1e-5, 1e-6}) {
      const double q0 = F(c, h) / h, q1 = (1.0 - F(c, 1.0 - h)) / h;
      // The error shrinks with the step.
      CHECK(std::fabs(q0 - 1.0) <= std::fabs(prev0 - 1.0) + 1e-9);
      CHECK(std::fabs(q1 - 1.0) <= std::fabs(prev1 - 1.0) + 1e-9);
      prev0 = q0;
      prev1 = q1;
    }
    CHECK(std::fabs(prev0 - 1.0) < 1e-4);
    CHECK(std::fabs(prev1 - 1.0) < 1e-4);
  }
}

TEST_CASE("F derivatives agree with differences") {
  for (double c : kCs) {
    for (double x : {0.05, 0.3, 0.5, 0.77, 0.95}) {
      const Derivs1 d = F_derivs(c, x);
      const double h = 1e-5;
      CHECK(d.v == doctest::Approx(F(c, x)).epsilon(1e-15));
      CHECK(d.d1 == doctest::Approx((F(c, x + h) - F(c, x - h)) / (2 * h)).epsilon(1e-6));
      CHECK(d.d2 == doctest::Approx((F(c, x + h) - 2 * F(c, x) + F(c, x - h)) / (h * h)).epsilon(1e-3).scale(1.0));
    }
  }
}

TEST_CASE("f and g") {
  for (double c : kCs) {
    CHECK(f(c, kHalfPi) == doctest::Approx(kHalfPi).epsilon(1e-15));
    CHECK(g(c, kHalfPi) == doctest::Approx(kHalfPi).epsilon(1e-15));
    CHECK(f(c, -kHalfPi) == doctest::Approx(-kHalfPi).epsilon(1e-15));
    CHECK(g(c, -kHalfPi) == doctest::Approx(-kHalfPi).epsilon(1e-15));
    for (double th = -1.5; th <= 1.5; th += 0.25) {
      CHECK(g(c, th) == doctest::Approx(-f(c, -th)).epsilon(1e-15));
      CHECK(f(c, th) == doctest::Approx(oracle::f(c, th)).epsilon(1e-13).scale(1.0));
    }
  }
  CHECK(f(1.0, 0.4) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(f(0.1, 0.0) == doctest::Approx(kPi * 0.04375 / 0.275 - kHalfPi).epsilon(1e-14));
  CHECK(f(0.1, 0.0) == doctest::Approx(-1.0709).epsilon(1e-4));
}

TEST_CASE("a and rho") {
  for (double c : kCs) {
    for (double th = -1.5; th <= 1.5; th += 0.1) {
      CHECK(a(c, th, 0.0) == doctest::Approx(1.0));
      CHECK(a(c, th, kHalfPi) == doctest::Approx(0.0).epsilon(1e-15).scale(1.0));
      for (double ph = 0.0; ph < 2 * kPi; ph += 0.3) {
        const double av = a(c, th, ph), rv = rho(c, th, ph);
        CHECK((av >= 0.0 && av <= 1.0));
        CHECK((rv >= -1.0 && rv <= 1.0));
        CHECK(rv == doctest::Approx(oracle::rho(c, th, ph)).epsilon(1e-12).scale(1.0));
      }
    }
    for (double ph = 0.0; ph < 2 * kPi; ph += 0.37) {
      CHECK(rho(c, kHalfPi, ph) == rho(c, kHalfPi, 0.0));
      CHECK(rho(c, -kHalfPi, ph) == rho(c, -kHalfPi, 0.0));
    }
    CHECK(rho(c, kHalfPi, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rho(c, -kHalfPi, 1.0) == doctest::Approx(-1.0).epsilon(1e-15));
  }
  for (double th = -1.5; th <= 1.5; th += 0.1) {
    for (double ph = 0.0; ph < 2 * kPi; ph += 0.3) {
      CHECK(a(1.0, th, ph) == doctest::Approx(std::cos(ph) * std::cos(ph)).epsilon(1e-14).scale(1.0));
      CHECK(rho(1.0, th, ph) == doctest::Approx(std::sin(th)).epsilon(1e-14).scale(1.0));
    }
  }
  CHECK(rho(0.1, 0.3, 1.0) == doctest::Approx(oracle::rho(0.1, 0.3, 1.0)).epsilon(1e-13));
}

TEST_CASE("rho0 is the small-c limit") {
  for (double th = -1.4; th <= 1.4; th += 0.2) {
    CHECK(rho0(th, 0.0) == doctest::Approx(-1.0).epsilon(1e-15));
    for (double ph = 0.1; ph < 3.2; ph += 0.5) {
      CHECK(rho0(th, ph) == doctest::Approx(oracle::rho0(th, ph)).epsilon(1e-13).scale(1.0));
      double prev = 10.0;
      for (double c : {1e-3, 1e-4, 1e-5}) {
        const double err = std::fabs(rho(c, th, ph) - rho0(th, ph));
        CHECK(err <= prev);
        prev = err;
      }
      CHECK(prev < 1e-3);
    }
  }
  CHECK(rho0(0.0, kPi / 4) == doctest::Approx(0.0).epsilon(1e-15).scale(1.0));
}

TEST_CASE("radial function") {
  GombocParams p;
  p.c = 0.1;
  p.d = 0.05;
  p.R = 1.0;
  CHECK(radial_R(p, 0.3, 1.0) == doctest::Approx(1.0 + 0.05 * oracle::rho(0.1, 0.3, 1.0)).epsilon(1e-14));
  CHECK(radial_R(p, kHalfPi, 2.0) == doctest::Approx(1.05).epsilon(1e-15));
  CHECK(radial_R(p, -kHalfPi, 2.0) == doctest::Approx(0.95).epsilon(1e-15));
  for (double th = -1.5; th <= 1.5; th += 0.1) {
    for (double ph = 0.0; ph < 6.3; ph += 0.2) {
      const double r = radial_R(p, th, ph);
      CHECK((r >= 0.95 - 1e-15 && r <= 1.05 + 1e-15));
    }
  }
  GombocParams z = p;
  z.d = 0.0;
  CHECK(radial_R(z, 0.4, 0.4) == 1.0);
  GombocParams n = p;
  n.space = SpaceKind::normed(3, NormProfile::superellipsoid(4));
  n.d = 0.0;
  CHECK(radial_R(n, 0.4, 1.1) == doctest::Approx(NormProfile::superellipsoid(4)(0.4)).epsilon(1e-15));
  n.d = 0.05;
  CHECK(radial_R(n, 0.4, 1.1) ==
        doctest::Approx(NormProfile::superellipsoid(4)(0.4) * (1 + 0.05 * oracle::rho(0.1, 0.4, 1.1))).epsilon(1e-13));
}

TEST_CASE("parameter validation") {
  GombocParams p;
  p.space = SpaceKind::hyperbolic(3);
  p.R = 0.96;
  p.d = 0.05;
  CHECK_THROWS_AS(p.validate(), DomainError);
  CHECK_THROWS_AS(build_body(p), DomainError);
  p.R = 0.5;
  CHECK_NOTHROW(p.validate());
  p.c = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.c = 0.5;
  p.d = 1.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.d = 0.02;
  p.space = SpaceKind::spherical(2);
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("analytic partials match differences away from the poles") {
  for (const SpaceKind& space : {SpaceKind::spherical(3), SpaceKind::normed(3, NormProfile::superellipsoid(4))}) {
    for (double c : {0.05, 0.3, 1.0}) {
      GombocParams p;
      p.c = c;
      p.d = 0.2;
      p.space = space;
      const RadialBody body = build_body(p);
      REQUIRE(body.has_partials());
      const double h = 1e-4;
      for (double th = -1.4; th <= 1.4; th += 0.2) {
        for (double ph = 0.05; ph < 6.3; ph += 0.4) {
          const RadialDerivs d = body.partials(th, ph);
          auto r = [&](double t, double q) { return body.radial(t, q); };
          const double tol = std::max(1e-6, 1e-4 * std::fabs(d.r));
          auto near = [&](double x, double y, double scale) { return std::fabs(x - y) <= tol * scale; };
          CHECK(d.r == r(th, ph));
          CHECK(near(d.r_t, (r(th + h, ph) - r(th - h, ph)) / (2 * h), 1.0));
          CHECK(near(d.r_p, (r(th, ph + h) - r(th, ph - h)) / (2 * h), 1.0));
          CHECK(near(d.r_tt, (r(th + h, ph) - 2 * d.r + r(th - h, ph)) / (h * h), 100.0));
          CHECK(near(d.r_pp, (r(th, ph + h) - 2 * d.r + r(th, ph - h)) / (h * h), 100.0));
          CHECK(near(d.r_tp, (r(th + h, ph + h) - r(th + h, ph - h) - r(th - h, ph + h) + r(th - h, ph - h)) / (4 * h * h),
                     100.0));
        }
      }
    }
  }
}

TEST_CASE("second differences converge at rate h^2") {
  GombocParams p;
  p.c = 0.1;
  p.d = 0.3;
  const RadialBody body = build_body(p);
  const double th = 0.7, ph = 0.9;
  const double exact = body.partials(th, ph).r_tt;
  auto second = [&](double h) {
    return (body.radial(th + h, ph) - 2 * body.radial(th, ph) + body.radial(th - h, ph)) / (h * h);
  };
  const double e1 = std::fabs(second(1e-2) - exact), e2 = std::fabs(second(5e-3) - exact);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("built body") {
  GombocParams p;
  p.c = 1.0;
  p.d = 0.0;
  p.R = 0.7;
  const RadialBody ball = build_body(p);
  for (double th = -1.5; th <= 1.5; th += 0.3) CHECK(ball.radial(th, 1.0) == 0.7);
  p.c = 0.2;
  p.d = 0.1;
  const RadialBody body = build_body(p);
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      const double th = -kHalfPi + kPi * i / 99, ph = 2 * kPi * j / 100;
      CHECK(body.radial(th, ph) == radial_R(p, th, ph));
    }
  }
}
