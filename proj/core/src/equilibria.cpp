#include "mono/equilibria.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

namespace mono {

std::string to_string(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::Stable: return "stable";
    case EquilibriumKind::Saddle: return "saddle";
    case EquilibriumKind::Unstable: return "unstable";
    case EquilibriumKind::Degenerate: return "degenerate";
  }
  return "?";
}

std::string to_string(PoincareHopf r) {
  switch (r) {
    case PoincareHopf::Holds: return "holds";
    case PoincareHopf::Violated: return "violated";
    case PoincareHopf::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

Vec unit_dir(int dim, double theta, double phi) { return dim == 3 ? direction3(theta, phi) : direction2(phi); }

// Boundary point on the chart ray from an interior point p in direction w.
// Convexity gives a single crossing of |x - center| - radial(x - center).
ChartPoint boundary_on_ray(const RadialBody& body, const ChartPoint& p, const Vec& w) {
  const ChartPoint& c = body.center();
  auto excess = [&](double t) {
    const Vec x = p + t * w - c;
    const double n = x.norm();
    if (n == 0.0) return -body.radial_at(w);
    return n - body.radial_at(x);
  };
  double lo = 0.0, flo = excess(0.0);
  if (!(flo < 0.0)) throw DomainError("reference point is not interior to the body");
  double hi = std::max(body.radial_at(w), 1e-3), fhi = excess(hi);
  for (int k = 0; fhi <= 0.0; ++k) {
    if (k > 60) throw NumericalError("boundary search along ray did not terminate");
    lo = hi;
    flo = fhi;
    hi *= 2.0;
    fhi = excess(hi);
  }
  // Illinois variant of regula falsi.
  int side = 0;
  for (int it = 0; it < 200; ++it) {
    const double t = (lo * fhi - hi * flo) / (fhi - flo);
    const double ft = excess(t);
    if (ft == 0.0) return p + t * w;
    if ((ft < 0.0) == (flo < 0.0)) {
      lo = t;
      flo = ft;
      if (side == -1) fhi *= 0.5;
      side = -1;
    } else {
      hi = t;
      fhi = ft;
      if (side == 1) flo *= 0.5;
      side = 1;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
  }
  return p + (flo == fhi ? lo : (lo * fhi - hi * flo) / (fhi - flo)) * w;
}

double profile_value(const SpaceKind& space, const ChartPoint& ref, const ChartPoint& x) {
  return distance(space, ref, x);
}

// A parametrization of the direction sphere with coordinates (s, t); t is
// periodic and the metric is ds^2 + cos^2(s) dt^2.
enum class Chart { Primary, Secondary };

Vec chart_dir(Chart ch, double s, double t) {
  const double cs = std::cos(s);
  if (ch == Chart::Primary) return make_vec({cs * std::cos(t), cs * std::sin(t), std::sin(s)});
  return make_vec({std::sin(s), cs * std::sin(t), cs * std::cos(t)});
}

std::pair<double, double> chart_coords(Chart ch, const Vec& u) {
  if (ch == Chart::Primary) return {std::asin(std::clamp(u(2), -1.0, 1.0)), std::atan2(u(1), u(0))};
  return {std::asin(std::clamp(u(0), -1.0, 1.0)), std::atan2(u(1), u(2))};
}

struct ScalarOnSphere {
  std::function<double(const Vec&)> fn;
  double at(Chart ch, double s, double t) const { return fn(chart_dir(ch, s, t)); }
};

constexpr double kGradStep = 1e-5;
constexpr double kHessStep = 1e-4;

Eigen::Vector2d chart_gradient(const ScalarOnSphere& f, Chart ch, double s, double t) {
  const double h = kGradStep;
  return {(f.at(ch, s + h, t) - f.at(ch, s - h, t)) / (2.0 * h), (f.at(ch, s, t + h) - f.at(ch, s, t - h)) / (2.0 * h)};
}

Eigen::Matrix2d chart_hessian(const ScalarOnSphere& f, Chart ch, double s, double t) {
  const double h = kHessStep;
  const double f0 = f.at(ch, s, t);
  Eigen::Matrix2d H;
  H(0, 0) = (f.at(ch, s + h, t) - 2.0 * f0 + f.at(ch, s - h, t)) / (h * h);
  H(1, 1) = (f.at(ch, s, t + h) - 2.0 * f0 + f.at(ch, s, t - h)) / (h * h);
  H(0, 1) = H(1, 0) = (f.at(ch, s + h, t + h) - f.at(ch, s + h, t - h) - f.at(ch, s - h, t + h) +
                       f.at(ch, s - h, t - h)) / (4.0 * h * h);
  return H;
}

struct Polished {
  bool converged = false;
  Vec dir;
  Chart chart = Chart::Primary;
  double s = 0.0;
  double t = 0.0;
};

// Damped Newton on the chart gradient. Hands the iterate over to the other
// chart when it drifts towards a coordinate pole.
Polished newton_polish(const ScalarOnSphere& f, Chart ch, double s, double t, double max_step) {
  Polished out;
  for (int hand = 0; hand < 4; ++hand) {
    bool handed = false;
    for (int it = 0; it < 60; ++it) {
      const Eigen::Vector2d g = chart_gradient(f, ch, s, t);
      const Eigen::Matrix2d H = chart_hessian(f, ch, s, t);
      Eigen::Vector2d step = -H.fullPivLu().solve(g);
      if (!step.allFinite()) return out;
      const double len = std::hypot(step(0), step(1) * std::cos(s));
      if (len > max_step) step *= max_step / len;
      s += step(0);
      t += step(1);
      if (std::fabs(s) > kHalfPi - 0.3) {
        const Vec u = chart_dir(ch, s, t);
        ch = ch == Chart::Primary ? Chart::Secondary : Chart::Primary;
        std::tie(s, t) = chart_coords(ch, u);
        handed = true;
        break;
      }
      // Gradient noise of the central difference limits steps to ~1e-10.
      if (len < 1e-8) {
        out.converged = true;
        out.dir = chart_dir(ch, s, t);
        out.chart = ch;
        out.s = s;
        out.t = t;
        return out;
      }
    }
    if (!handed) break;
  }
  out.dir = chart_dir(ch, s, t);
  out.chart = ch;
  out.s = s;
  out.t = t;
  return out;
}

void tally(EquilibriumCensus& census) {
  census.S = census.H = census.U = census.degenerate = 0;
  for (const auto& p : census.points) {
    switch (p.kind) {
      case EquilibriumKind::Stable: ++census.S; break;
      case EquilibriumKind::Saddle: ++census.H; break;
      case EquilibriumKind::Unstable: ++census.U; break;
      case EquilibriumKind::Degenerate: ++census.degenerate; break;
    }
  }
}

EquilibriumKind classify(const std::vector<double>& eig, double floor_abs, double rel) {
  double big = 0.0;
  for (double e : eig) big = std::max(big, std::fabs(e));
  int neg = 0;
  for (double e : eig) {
    if (std::fabs(e) <= std::max(floor_abs, rel * big)) return EquilibriumKind::Degenerate;
    if (e < 0.0) ++neg;
  }
  if (neg == 0) return EquilibriumKind::Stable;
  if (neg == static_cast<int>(eig.size())) return EquilibriumKind::Unstable;
  return EquilibriumKind::Saddle;
}

// Absolute eigenvalue floor: finite-difference noise of a Hessian with
// step kHessStep on a profile of size `scale`.
double hessian_noise(double scale) { return 1e-7 * std::max(scale, 1e-3); }

EquilibriumCensus equilibria_2d(const DistanceProfile& P, const EquilibriumOptions& opts) {
  EquilibriumCensus census;
  const int n = std::max(64, 4 * opts.grid);
  const double dphi = 2.0 * kPi / n;
  const double h = kGradStep;
  auto dP = [&](double phi) { return (P(0.0, phi + h) - P(0.0, phi - h)) / (2.0 * h); };
  std::vector<double> der(n);
  double scale = 0.0, slope = 0.0;
  for (int j = 0; j < n; ++j) {
    der[j] = dP(j * dphi);
    scale = std::max(scale, std::fabs(P(0.0, j * dphi)));
    slope = std::max(slope, std::fabs(der[j]));
  }
  if (slope <= 1e-8 * std::max(scale, 1e-300)) {
    census.points.push_back({0.0, 0.0, P(0.0, 0.0), EquilibriumKind::Degenerate, {0.0}});
    census.warnings.push_back("distance profile is constant: every boundary point is critical");
    tally(census);
    return census;
  }
  const double floor_abs = hessian_noise(scale);
  auto sgn = [](double x) { return (x > 0.0) - (x < 0.0); };
  for (int j = 0; j < n; ++j) {
    const double fa0 = der[j], fb0 = der[(j + 1) % n];
    double phi = 0.0;
    if (fa0 == 0.0) {
      // Root exactly at a node: count it when the neighbours straddle it.
      const int l = sgn(der[(j + n - 1) % n]), r = sgn(fb0);
      if (l == 0 || r == 0 || l == r) continue;
      phi = j * dphi;
    } else if (sgn(fa0) * sgn(fb0) < 0) {
      double a = j * dphi, b = a + dphi, fa = fa0;
      for (int it = 0; it < 80 && b - a > 1e-13; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = dP(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      phi = std::fmod(0.5 * (a + b), 2.0 * kPi);
    } else {
      continue;
    }
    const double H = kHessStep;
    const double p0 = P(0.0, phi);
    const double d2 = (P(0.0, phi + H) - 2.0 * p0 + P(0.0, phi - H)) / (H * H);
    EquilibriumPoint pt{0.0, phi, p0, classify({d2}, floor_abs, opts.degenerate_rel), {d2}};
    if (!census.points.empty() && std::fabs(census.points.back().phi - phi) < opts.merge) {
      census.warnings.push_back("merged two critical points closer than the merge radius");
      continue;
    }
    census.points.push_back(pt);
  }
  if (census.points.size() >= 2 &&
      2.0 * kPi - census.points.back().phi + census.points.front().phi < opts.merge) {
    census.points.pop_back();
    census.warnings.push_back("merged two critical points closer than the merge radius");
  }
  tally(census);
  return census;
}

EquilibriumCensus equilibria_3d(const DistanceProfile& P, const EquilibriumOptions& opts) {
  EquilibriumCensus census;
  ScalarOnSphere f{[&P](const Vec& u) {
    const auto [th, ph] = angles_of(u);
    return P(th, ph);
  }};

  const double band = kPi / 4.0 + 0.1;
  const int ns = std::max(8, opts.grid);
  const int nt = 4 * ns;
  const double ds = 2.0 * band / ns, dt = 2.0 * kPi / nt;

  struct Seed {
    Chart chart;
    double s, t;
  };
  std::vector<Seed> seeds;
  double scale = 0.0, slope = 0.0;

  for (Chart ch : {Chart::Primary, Chart::Secondary}) {
    std::vector<Eigen::Vector2d> grad(static_cast<std::size_t>(ns + 1) * nt);
    for (int i = 0; i <= ns; ++i) {
      const double s = -band + i * ds;
      for (int j = 0; j < nt; ++j) {
        const double t = j * dt;
        const Eigen::Vector2d g = chart_gradient(f, ch, s, t);
        grad[static_cast<std::size_t>(i) * nt + j] = g;
        scale = std::max(scale, std::fabs(f.at(ch, s, t)));
        slope = std::max(slope, std::hypot(g(0), g(1) / std::cos(s)));
      }
    }
    auto G = [&](int i, int j) { return grad[static_cast<std::size_t>(i) * nt + (j % nt)]; };
    for (int i = 0; i < ns; ++i) {
      for (int j = 0; j < nt; ++j) {
        // Two triangles per cell; linear interpolation of the gradient.
        const std::array<std::array<std::pair<int, int>, 3>, 2> tris{{{{{i, j}, {i + 1, j}, {i + 1, j + 1}}},
                                                                      {{{i, j}, {i + 1, j + 1}, {i, j + 1}}}}};
        for (const auto& tri : tris) {
          const Eigen::Vector2d g0 = G(tri[0].first, tri[0].second);
          const Eigen::Vector2d g1 = G(tri[1].first, tri[1].second);
          const Eigen::Vector2d g2 = G(tri[2].first, tri[2].second);
          Eigen::Matrix2d A;
          A.col(0) = g1 - g0;
          A.col(1) = g2 - g0;
          const double det = A.determinant();
          if (det == 0.0) continue;
          const Eigen::Vector2d lam = A.inverse() * (-g0);
          const double tolb = 1e-9;
          if (lam(0) < -tolb || lam(1) < -tolb || lam(0) + lam(1) > 1.0 + tolb) continue;
          const double s0 = -band + tri[0].first * ds, t0 = tri[0].second * dt;
          const double s = s0 + (lam(0) * (tri[1].first - tri[0].first) + lam(1) * (tri[2].first - tri[0].first)) * ds;
          const double t = t0 + (lam(0) * (tri[1].second - tri[0].second) + lam(1) * (tri[2].second - tri[0].second)) * dt;
          seeds.push_back({ch, s, t});
        }
      }
    }
  }

  if (slope <= 1e-8 * std::max(scale, 1e-300) || seeds.size() > 5000) {
    EquilibriumPoint pt{kHalfPi, 0.0, P(kHalfPi, 0.0), EquilibriumKind::Degenerate, {0.0, 0.0}};
    census.points.push_back(pt);
    census.warnings.push_back("distance profile is (numerically) constant: critical points are not isolated");
    tally(census);
    return census;
  }

  // The coordinate poles of the usual chart are always candidates.
  seeds.push_back({Chart::Secondary, 0.0, 0.0});
  seeds.push_back({Chart::Secondary, 0.0, kPi});

  const double floor_abs = hessian_noise(scale);
  struct Found {
    Vec dir;
    EquilibriumPoint pt;
    bool failed;
  };
  std::vector<Found> found;
  for (const Seed& sd : seeds) {
    const Polished pol = newton_polish(f, sd.chart, sd.s, sd.t, 0.5 * ds);
    const Vec u = pol.dir.normalized();
    const auto [th, ph] = angles_of(u);
    EquilibriumPoint pt;
    pt.theta = th;
    pt.phi = th >= kHalfPi || th <= -kHalfPi ? 0.0 : ph;
    pt.distance_value = f.fn(u);
    if (pol.converged) {
      const Eigen::Matrix2d H = chart_hessian(f, pol.chart, pol.s, pol.t);
      Eigen::Matrix2d D = Eigen::Matrix2d::Zero();
      D(0, 0) = 1.0;
      D(1, 1) = 1.0 / std::cos(pol.s);
      const Eigen::Matrix2d Hn = D * H * D;
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(Hn);
      pt.hessian_eigenvalues = {es.eigenvalues()(0), es.eigenvalues()(1)};
      pt.kind = classify(pt.hessian_eigenvalues, floor_abs, opts.degenerate_rel);
    } else {
      pt.kind = EquilibriumKind::Degenerate;
    }
    bool merged = false;
    for (Found& fd : found) {
      if (std::acos(std::clamp(fd.dir.dot(u), -1.0, 1.0)) < opts.merge) {
        if (fd.pt.kind == EquilibriumKind::Degenerate && pt.kind != EquilibriumKind::Degenerate) {
          fd = {u, pt, !pol.converged};
        }
        merged = true;
        break;
      }
    }
    if (!merged) found.push_back({u, pt, !pol.converged});
  }
  // A failed seed that merged into a converged point is harmless.
  int failures = 0;
  for (const Found& fd : found) {
    census.points.push_back(fd.pt);
    if (fd.failed) ++failures;
  }
  std::sort(census.points.begin(), census.points.end(), [](const auto& a, const auto& b) {
    return a.theta != b.theta ? a.theta < b.theta : a.phi < b.phi;
  });
  if (failures > 0) {
    std::ostringstream os;
    os << failures << " candidate(s) did not converge under Newton polish; recorded as degenerate";
    census.warnings.push_back(os.str());
  }
  tally(census);
  return census;
}

}  // namespace

DistanceProfile distance_profile(const RadialBody& body, const ChartPoint& ref) {
  const SpaceKind& space = body.space();
  require_in_chart(space, ref);
  if (!body.contains(ref)) throw DomainError("reference point must lie in the interior of the body");
  const int dim = body.dim();
  if ((ref - body.center()).norm() == 0.0) {
    return [body, ref, dim](double theta, double phi) {
      return profile_value(body.space(), ref, body.boundary_point(unit_dir(dim, theta, phi)));
    };
  }
  // Directions are read around the origin after moving ref there; the
  // inverse isometry sends that ray to a chart ray from ref.
  const Isometry inv = center_isometry(space, ref).inverse();
  const double probe = space.geometry() == Geometry::Hyperbolic ? 0.25 * (1.0 - ref.norm()) : 1e-2;
  return [body, ref, inv, probe, dim](double theta, double phi) {
    const Vec u = unit_dir(dim, theta, phi);
    const Vec w = (inv(ChartPoint(probe * u)) - ref).normalized();
    return profile_value(body.space(), ref, boundary_on_ray(body, ref, w));
  };
}

EquilibriumCensus find_equilibria(const RadialBody& body, const ChartPoint& ref, const EquilibriumOptions& opts) {
  const DistanceProfile P = distance_profile(body, ref);
  return body.dim() == 2 ? equilibria_2d(P, opts) : equilibria_3d(P, opts);
}

PoincareHopf poincare_hopf_check(const EquilibriumCensus& census, int dim) {
  if (census.degenerate > 0) return PoincareHopf::Inconclusive;
  const bool ok = dim == 2 ? census.S - census.U == 0 : census.S - census.H + census.U == 2;
  return ok ? PoincareHopf::Holds : PoincareHopf::Violated;
}

EquilibriumCensus count_equilibria_2d(const RadialBody& body, const QuadratureSpec& spec, int grid) {
  if (body.dim() != 2) throw DomainError("count_equilibria_2d needs a 2D body");
  const ChartPoint c = centroid(body, spec);
  const DistanceProfile P = distance_profile(body, c);
  if (body.space().geometry() == Geometry::Spherical) {
    for (int j = 0; j < grid; ++j) {
      if (!(P(0.0, 2.0 * kPi * j / grid) < kHalfPi)) {
        throw DomainError("spherical body is not contained in the open hemisphere around its centroid");
      }
    }
  }
  EquilibriumOptions opts;
  opts.grid = std::max(16, grid / 4);
  return equilibria_2d(P, opts);
}

// ---------------------------------------------------------------------------
// Curvature

namespace {

struct SurfaceDerivs {
  Eigen::Vector3d Xs, Xt, Xss, Xst, Xtt;
};

double curvature_from(const SurfaceDerivs& d) {
  const Eigen::Vector3d n = d.Xs.cross(d.Xt);
  const double nn = n.norm();
  if (!(nn > 0.0)) throw NumericalError("degenerate surface parametrization");
  const Eigen::Vector3d N = n / nn;
  const double E = d.Xs.dot(d.Xs), F = d.Xs.dot(d.Xt), G = d.Xt.dot(d.Xt);
  const double L = d.Xss.dot(N), M = d.Xst.dot(N), Nn = d.Xtt.dot(N);
  return (L * Nn - M * M) / (E * G - F * F);
}

RadialDerivs fd_partials(const RadialBody& body, double th, double ph) {
  const double h = 1e-4;
  auto r = [&](double a, double b) { return body.radial(a, b); };
  RadialDerivs d;
  d.r = r(th, ph);
  d.r_t = (r(th + h, ph) - r(th - h, ph)) / (2.0 * h);
  d.r_p = (r(th, ph + h) - r(th, ph - h)) / (2.0 * h);
  d.r_tt = (r(th + h, ph) - 2.0 * d.r + r(th - h, ph)) / (h * h);
  d.r_pp = (r(th, ph + h) - 2.0 * d.r + r(th, ph - h)) / (h * h);
  d.r_tp = (r(th + h, ph + h) - r(th + h, ph - h) - r(th - h, ph + h) + r(th - h, ph - h)) / (4.0 * h * h);
  return d;
}

double curvature_polar(const RadialBody& body, double th, double ph) {
  const RadialDerivs d = body.has_partials() ? body.partials(th, ph) : fd_partials(body, th, ph);
  const double st = std::sin(th), ct = std::cos(th), sp = std::sin(ph), cp = std::cos(ph);
  const Eigen::Vector3d u(ct * cp, ct * sp, st);
  const Eigen::Vector3d ut(-st * cp, -st * sp, ct);
  const Eigen::Vector3d up(-ct * sp, ct * cp, 0.0);
  const Eigen::Vector3d utp(st * sp, -st * cp, 0.0);
  const Eigen::Vector3d upp(-ct * cp, -ct * sp, 0.0);
  SurfaceDerivs s;
  s.Xs = d.r_t * u + d.r * ut;
  s.Xt = d.r_p * u + d.r * up;
  s.Xss = d.r_tt * u + 2.0 * d.r_t * ut - d.r * u;
  s.Xst = d.r_tp * u + d.r_t * up + d.r_p * ut + d.r * utp;
  s.Xtt = d.r_pp * u + 2.0 * d.r_p * up + d.r * upp;
  if (!std::isfinite(d.r) || !std::isfinite(d.r_tt) || !std::isfinite(d.r_pp) || !std::isfinite(d.r_tp)) {
    throw NumericalError("non-finite radial partials");
  }
  return curvature_from(s);
}

// Local orthonormal frame around u0; avoids the coordinate pole.
double curvature_local(const RadialBody& body, const Eigen::Vector3d& u0) {
  Eigen::Vector3d a = std::fabs(u0(0)) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  const Eigen::Vector3d e1 = (a - a.dot(u0) * u0).normalized();
  const Eigen::Vector3d e2 = u0.cross(e1);
  auto X = [&](double s, double t) -> Eigen::Vector3d {
    const Eigen::Vector3d u = (u0 + s * e1 + t * e2).normalized();
    Vec uv(3);
    uv << u(0), u(1), u(2);
    return body.radial_at(uv) * u;
  };
  const Eigen::Vector3d x0 = X(0, 0);
  auto diffs = [&](double h) {
    SurfaceDerivs s;
    s.Xs = (X(h, 0) - X(-h, 0)) / (2.0 * h);
    s.Xt = (X(0, h) - X(0, -h)) / (2.0 * h);
    s.Xss = (X(h, 0) - 2.0 * x0 + X(-h, 0)) / (h * h);
    s.Xtt = (X(0, h) - 2.0 * x0 + X(0, -h)) / (h * h);
    s.Xst = (X(h, h) - X(h, -h) - X(-h, h) + X(-h, -h)) / (4.0 * h * h);
    return s;
  };
  // Richardson on the step pair (2h, h) removes the h^2 term.
  const double h = 1e-3;
  const SurfaceDerivs c = diffs(2.0 * h), f = diffs(h);
  SurfaceDerivs s;
  s.Xs = (4.0 * f.Xs - c.Xs) / 3.0;
  s.Xt = (4.0 * f.Xt - c.Xt) / 3.0;
  s.Xss = (4.0 * f.Xss - c.Xss) / 3.0;
  s.Xtt = (4.0 * f.Xtt - c.Xtt) / 3.0;
  s.Xst = (4.0 * f.Xst - c.Xst) / 3.0;
  return curvature_from(s);
}

}  // namespace

double gaussian_curvature(const RadialBody& body, double theta, double phi) {
  if (body.dim() != 3) throw DomainError("gaussian_curvature needs a 3D body");
  if (std::fabs(theta) < kHalfPi - 0.05) return curvature_polar(body, theta, phi);
  const Vec u = direction3(theta, phi);
  return curvature_local(body, Eigen::Vector3d(u(0), u(1), u(2)));
}

CurvatureMin min_curvature(const RadialBody& body, int grid, int jobs) {
  if (grid < 4) throw DomainError("curvature grid must be >= 4");
  const int nt = grid + 1, np = 2 * grid;
  std::vector<CurvatureMin> rows(nt);
  parallel_for(nt, jobs, [&](int i) {
    const double th = -kHalfPi + kPi * i / grid;
    CurvatureMin best{std::numeric_limits<double>::infinity(), th, 0.0};
    const int count = (i == 0 || i == grid) ? 1 : np;
    for (int j = 0; j < count; ++j) {
      const double ph = 2.0 * kPi * j / np;
      const double k = gaussian_curvature(body, th, ph);
      if (!std::isfinite(k)) throw NumericalError("non-finite Gaussian curvature");
      if (k < best.value) best = {k, th, ph};
    }
    rows[i] = best;
  });
  CurvatureMin out = rows[0];
  for (const auto& r : rows) {
    if (r.value < out.value) out = r;
  }
  return out;
}

double find_dstar(std::pair<double, double> c_range, double R, const SpaceKind& space, int grid, int n_c, int jobs) {
  const auto [c1, c2] = c_range;
  if (!(0.0 < c1 && c1 <= c2 && c2 <= 1.0)) throw DomainError("c range must satisfy 0 < c1 <= c2 <= 1");
  if (n_c < 1) throw DomainError("n_c must be >= 1");
  double cap = 0.5;
  if (space.geometry() == Geometry::Hyperbolic) cap = std::min(cap, (1.0 / R - 1.0) * (1.0 - 1e-9));
  constexpr double kMargin = 1e-6;
  auto safe = [&](double d) {
    for (int k = 0; k < n_c; ++k) {
      const double c = n_c == 1 ? c1 : c1 + (c2 - c1) * k / (n_c - 1);
      const RadialBody b = gomboc::build_body(gomboc::GombocParams{c, d, R, space});
      if (!(min_curvature(b, grid, jobs).value >= kMargin)) return false;
    }
    return true;
  };
  if (safe(cap)) return cap;
  double lo = 0.0, hi = cap;
  for (int it = 0; it < 40 && hi - lo > 1e-6 * cap; ++it) {
    const double m = 0.5 * (lo + hi);
    (safe(m) ? lo : hi) = m;
  }
  return lo;
}

// ---------------------------------------------------------------------------
// Hausdorff distance

HausdorffEstimate hausdorff_to_ball(const RadialBody& body, double R, int grid) {
  if (!body.centered_at_origin()) throw DomainError("hausdorff_to_ball needs a body around the chart origin");
  if (!(R > 0.0)) throw DomainError("ball radius must be positive");
  if (grid < 4) throw DomainError("Hausdorff grid must be >= 4");
  const SpaceKind& space = body.space();
  const int dim = body.dim();
  const double rho = space.geometry() == Geometry::Normed
                         ? R
                         : dist_from_origin(space, R * unit_dir(dim, 0.0, 0.0));
  auto gap = [&](double th, double ph) {
    return std::fabs(dist_from_origin(space, body.boundary_point(th, ph)) - rho);
  };

  HausdorffEstimate out;
  double lipschitz = 0.0, spacing = 0.0;
  if (dim == 2) {
    const int n = 8 * grid;
    const double dphi = 2.0 * kPi / n;
    std::vector<double> v(n);
    for (int j = 0; j < n; ++j) v[j] = gap(0.0, j * dphi);
    for (int j = 0; j < n; ++j) {
      out.value = std::max(out.value, v[j]);
      lipschitz = std::max(lipschitz, std::fabs(v[(j + 1) % n] - v[j]) / dphi);
    }
    spacing = 0.5 * dphi;
  } else {
    const int nt = grid, np = 2 * grid;
    const double dth = kPi / nt, dph = 2.0 * kPi / np;
    std::vector<double> v(static_cast<std::size_t>(nt + 1) * np);
    auto at = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(i) * np + ((j % np + np) % np)]; };
    for (int i = 0; i <= nt; ++i) {
      for (int j = 0; j < np; ++j) at(i, j) = gap(-kHalfPi + i * dth, j * dph);
    }
    for (int i = 0; i <= nt; ++i) {
      const double ct = std::cos(-kHalfPi + i * dth);
      for (int j = 0; j < np; ++j) {
        out.value = std::max(out.value, at(i, j));
        if (i < nt) lipschitz = std::max(lipschitz, std::fabs(at(i + 1, j) - at(i, j)) / dth);
        if (ct > 1e-12) lipschitz = std::max(lipschitz, std::fabs(at(i, j + 1) - at(i, j)) / (ct * dph));
      }
    }
    spacing = 0.5 * std::hypot(dth, dph);
  }
  // Every direction is within `spacing` of a node; doubling the observed
  // slope covers its growth between nodes.
  out.bound = out.value + 2.0 * lipschitz * spacing;
  return out;
}

// ---------------------------------------------------------------------------
// Certificate

namespace {

// Hessian of r(u) in a local orthonormal frame at direction u0, by central
// differences with step h.
Eigen::Matrix2d frame_hessian(const RadialBody& body, const Eigen::Vector3d& u0, double h) {
  const Eigen::Vector3d a = std::fabs(u0(0)) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  const Eigen::Vector3d e1 = (a - a.dot(u0) * u0).normalized();
  const Eigen::Vector3d e2 = u0.cross(e1);
  auto r = [&](double s, double t) {
    const Eigen::Vector3d u = (u0 + s * e1 + t * e2).normalized();
    Vec uv(3);
    uv << u(0), u(1), u(2);
    return body.radial_at(uv);
  };
  const double r0 = r(0, 0);
  Eigen::Matrix2d H;
  H(0, 0) = (r(h, 0) - 2.0 * r0 + r(-h, 0)) / (h * h);
  H(1, 1) = (r(0, h) - 2.0 * r0 + r(0, -h)) / (h * h);
  H(0, 1) = H(1, 0) = (r(h, h) - r(h, -h) - r(-h, h) + r(-h, -h)) / (4.0 * h * h);
  return H;
}

// Largest relative discrepancy that would reveal a boundary which is not C^2:
// analytic partials against difference quotients on a grid away from the
// poles, and continuity of the second derivatives into each pole (the
// frame Hessian at the pole against the one at nearby directions).
double smoothness_defect(const RadialBody& body) {
  double worst = 0.0;
  const int nt = 24, np = 48;
  for (int i = 1; i < nt; ++i) {
    const double th = -kHalfPi + kPi * i / nt;
    if (std::fabs(th) > kHalfPi - 0.1) continue;
    for (int j = 0; j < np; ++j) {
      const double ph = 2.0 * kPi * j / np;
      const RadialDerivs a = body.partials(th, ph);
      const RadialDerivs n = fd_partials(body, th, ph);
      const double scale = std::max(1.0, std::fabs(a.r));
      for (auto [x, y] : {std::pair{a.r_t, n.r_t}, {a.r_p, n.r_p}, {a.r_tt, n.r_tt}, {a.r_tp, n.r_tp}, {a.r_pp, n.r_pp}}) {
        if (!std::isfinite(x)) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, std::fabs(x - y) / scale);
      }
    }
  }
  for (double z : {1.0, -1.0}) {
    const Eigen::Vector3d pole(0.0, 0.0, z);
    const Eigen::Matrix2d H0 = frame_hessian(body, pole, 1e-4);
    const double scale = std::max(1.0, H0.norm());
    for (int j = 0; j < 8; ++j) {
      const double ph = 2.0 * kPi * j / 8;
      const double th = z * (kHalfPi - 1e-3);
      const Vec u = direction3(th, ph);
      // Same frame orientation as at the pole: e1 from the x axis.
      const Eigen::Matrix2d H1 = frame_hessian(body, Eigen::Vector3d(u(0), u(1), u(2)), 1e-4);
      worst = std::max(worst, (H1 - H0).norm() / scale);
    }
  }
  return worst;
}

}  // namespace

Certificate certify_mono_monostatic(const gomboc::GombocParams& params, double eps, const CertifyOptions& opts) {
  Certificate cert;
  cert.params = params;
  cert.eps = eps;
  try {
    gomboc::GombocParams probe = params;
    probe.c = 1.0;
    probe.validate();
    if (!(params.d > 0.0)) throw DomainError("certification needs d > 0");
    if (!(eps > 0.0)) throw DomainError("eps must be positive");

    const CenteringResult cr = find_centering_c(params.d, params.R, params.space, std::nullopt, 1e-12, opts.spec);
    cert.c_star = cr.c_star;
    cert.params.c = cr.c_star;
    const RadialBody body = gomboc::build_body(cert.params);
    cert.M3 = first_moment_M3(body, opts.spec).value;

    const ChartPoint cen = centroid(body, opts.spec);
    cert.centroid_residual = dist_from_origin(params.space, cen);
    cert.pass_D = cert.centroid_residual < 1e-6 && std::fabs(cert.M3) < 1e-10;

    cert.smoothness_defect = smoothness_defect(body);
    cert.pass_A = cert.smoothness_defect < 1e-3;

    EquilibriumOptions eo;
    eo.grid = opts.equilibria_grid;
    cert.census = find_equilibria(body, ChartPoint::Zero(3), eo);
    cert.poles_ok = false;
    if (cert.census.points.size() == 2) {
      const auto& lo = cert.census.points[0];
      const auto& hi = cert.census.points[1];
      cert.poles_ok = lo.kind == EquilibriumKind::Stable && hi.kind == EquilibriumKind::Unstable &&
                      std::fabs(lo.theta + kHalfPi) < 1e-6 && std::fabs(hi.theta - kHalfPi) < 1e-6;
    }
    cert.pass_B = cert.census.S == 1 && cert.census.U == 1 && cert.census.H == 0 && cert.census.degenerate == 0 &&
                  cert.poles_ok;

    cert.min_curvature = min_curvature(body, opts.curvature_grid, opts.spec.jobs);
    cert.pass_C = cert.min_curvature.value > 1e-6;

    cert.hausdorff = hausdorff_to_ball(body, params.R, opts.hausdorff_grid);
    cert.pass_E = cert.hausdorff.bound <= eps;
  } catch (const std::exception& e) {
    cert.errors.emplace_back(e.what());
  }
  return cert;
}

}  // namespace mono
