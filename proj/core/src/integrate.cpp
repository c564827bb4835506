#include "mono/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

namespace mono {

namespace {

// Integral over [0, rho] of r^3 times the x3-moment density along a ray.
double ray_moment_closed(Geometry g, double rho) {
  const double r2 = rho * rho;
  switch (g) {
    case Geometry::Spherical: return 2.0 / 3.0 - (3.0 * r2 + 2.0) / (3.0 * std::pow(1.0 + r2, 1.5));
    case Geometry::Hyperbolic: return 2.0 / 3.0 + (3.0 * r2 - 2.0) / (3.0 * std::pow(1.0 - r2, 1.5));
    default: return r2 * r2 / 4.0;
  }
}

double ray_moment_density(Geometry g, double r) {
  const double r2 = r * r;
  switch (g) {
    case Geometry::Spherical: return r2 * r * std::pow(1.0 + r2, -2.5);
    case Geometry::Hyperbolic: return r2 * r * std::pow(1.0 - r2, -2.5);
    default: return r2 * r;
  }
}

double ray_moment_numeric(Geometry g, double rho, int n_r) {
  const GaussRule& rule = gauss_legendre(n_r);
  const double half = 0.5 * rho;
  double s = 0.0;
  for (int k = 0; k < n_r; ++k) s += rule.weights[k] * ray_moment_density(g, half * (rule.nodes[k] + 1.0));
  return half * s;
}

void require_centered_3d(const RadialBody& body, const char* what) {
  if (body.dim() != 3) throw DomainError(std::string(what) + " needs a 3D body");
  if (!body.centered_at_origin()) throw DomainError(std::string(what) + " needs a body centered at the chart origin");
}

}  // namespace

double first_moment_M3_value(const RadialBody& body, const QuadratureSpec& spec, RayIntegral ray) {
  spec.validate();
  require_centered_3d(body, "first_moment_M3");
  const Geometry g = body.space().geometry();
  const GaussRule& rule = gauss_legendre(spec.n_theta);
  const int half = spec.n_theta / 2;
  const double dphi = 2.0 * kPi / spec.n_phi;
  auto ray_value = [&](double rho) {
    if (g == Geometry::Hyperbolic && !(rho < 1.0)) {
      throw DomainError("hyperbolic body touches the boundary of the projective ball");
    }
    return ray == RayIntegral::ClosedForm ? ray_moment_closed(g, rho) : ray_moment_numeric(g, rho, spec.n_r);
  };
  // Nodes are paired as +-theta so that bodies symmetric under
  // theta -> -theta give exactly zero.
  const double sum = ordered_parallel_sum(spec.n_phi, spec.jobs, [&](int j) {
    const double phi = j * dphi;
    double s = 0.0;
    for (int i = 0; i < half; ++i) {
      const double theta = kHalfPi * rule.nodes[spec.n_theta - 1 - i];
      const double w = rule.weights[i] * std::cos(theta) * std::sin(theta);
      s += w * (ray_value(body.radial(theta, phi)) - ray_value(body.radial(-theta, phi)));
    }
    return s;
  });
  return sum * kHalfPi * dphi;
}

MomentReport first_moment_M3(const RadialBody& body, const QuadratureSpec& spec, RayIntegral ray) {
  MomentReport rep;
  rep.spec = spec;
  const double coarse = first_moment_M3_value(body, spec, ray);
  if (!spec.richardson) {
    rep.value = coarse;
    return rep;
  }
  rep.value = first_moment_M3_value(body, spec.doubled(), ray);
  rep.error_estimate = std::fabs(rep.value - coarse);
  return rep;
}

double dM3_dd_at0(double c, double R, const SpaceKind& space, const QuadratureSpec& spec) {
  auto quotient = [&](double h) {
    gomboc::GombocParams plus{c, h, R, space};
    gomboc::GombocParams minus{c, -h, R, space};
    const double mp = first_moment_M3_value(gomboc::build_body_signed_d(plus), spec);
    const double mm = first_moment_M3_value(gomboc::build_body_signed_d(minus), spec);
    return (mp - mm) / (2.0 * h);
  };
  const double coarse = quotient(1e-3);
  const double fine = quotient(5e-4);
  return (4.0 * fine - coarse) / 3.0;
}

double dM3_dd_at0_closed_form(double R) {
  return 4.0 * kPi / 3.0 * std::pow(R, 4) / std::pow(R * R + 1.0, 2.5);
}

double dM3_dd_at0_leibniz(double c, double R, const QuadratureSpec& spec) {
  spec.validate();
  const GaussRule& rule = gauss_legendre(spec.n_theta);
  const double dphi = 2.0 * kPi / spec.n_phi;
  const double sum = ordered_parallel_sum(spec.n_phi, spec.jobs, [&](int j) {
    const double phi = j * dphi;
    double s = 0.0;
    for (int i = 0; i < spec.n_theta; ++i) {
      const double theta = kHalfPi * rule.nodes[i];
      s += rule.weights[i] * gomboc::rho(c, theta, phi) * std::cos(theta) * std::sin(theta);
    }
    return s;
  });
  return std::pow(R, 4) / std::pow(R * R + 1.0, 2.5) * sum * kHalfPi * dphi;
}

Rho0Constant rho0_moment_constant(const QuadratureSpec& spec) {
  if (spec.n_theta < 16) throw DomainError("rho0_moment_constant: n_theta must be >= 16");
  // rho0 = 1 - 2 D cos^2 / (D cos^2 + U sin^2) with U = (pi/2 - theta)^4 and
  // D = (pi/2 + theta)^4, and the integral of D cos^2 / (D cos^2 + U sin^2)
  // over a full turn is 2 pi sqrt(D) / (sqrt(D) + sqrt(U)). A trapezoid rule
  // in phi cannot resolve the layer near phi = pi/2 as theta -> pi/2, so the
  // azimuth is integrated exactly and only theta numerically.
  const GaussRule& rule = gauss_legendre(spec.n_theta);
  const double sum = ordered_parallel_sum(spec.n_theta, std::max(1, spec.jobs), [&](int i) {
    const double theta = kHalfPi * rule.nodes[i];
    const double su = (kHalfPi - theta) * (kHalfPi - theta);
    const double sd = (kHalfPi + theta) * (kHalfPi + theta);
    const double azimuthal = 2.0 * kPi * (su - sd) / (su + sd);
    return rule.weights[i] * azimuthal * std::cos(theta) * std::sin(theta);
  });
  Rho0Constant out;
  out.total = sum * kHalfPi;
  out.per_azimuth = out.total / (2.0 * kPi);
  return out;
}

namespace {

// Ray integrals in geodesic polar coordinates around the origin, out to
// geodesic radius S: the component of the embedded position along the ray
// direction, its last embedded coordinate, and the plain volume.
struct RayMoments {
  double radial = 0.0;
  double last = 0.0;
  double mass = 0.0;
};

RayMoments ray_moments(Geometry g, int dim, double S, int n_r) {
  const GaussRule& rule = gauss_legendre(n_r);
  const double half = 0.5 * S;
  RayMoments m;
  for (int k = 0; k < n_r; ++k) {
    const double s = half * (rule.nodes[k] + 1.0);
    const double w = rule.weights[k];
    double sn = s, cs = 1.0;
    if (g == Geometry::Spherical) {
      sn = std::sin(s);
      cs = std::cos(s);
    } else if (g == Geometry::Hyperbolic) {
      sn = std::sinh(s);
      cs = std::cosh(s);
    }
    const double jac = dim == 3 ? sn * sn : sn;
    m.radial += w * jac * sn;
    m.last += w * jac * cs;
    m.mass += w * jac;
  }
  m.radial *= half;
  m.last *= half;
  m.mass *= half;
  return m;
}

CentroidReport centroid_centered(const RadialBody& body, const QuadratureSpec& spec) {
  const SpaceKind& space = body.space();
  const Geometry g = space.geometry();
  const int dim = space.dim();
  const double dphi = 2.0 * kPi / spec.n_phi;
  // Geodesic radius of the boundary in direction u; Lebesgue polar
  // coordinates for flat and normed spaces.
  auto geodesic_radius = [&](double r) {
    if (g == Geometry::Spherical) return std::atan(r);
    if (g == Geometry::Hyperbolic) {
      if (!(r < 1.0)) throw DomainError("hyperbolic body touches the boundary of the projective ball");
      return std::atanh(r);
    }
    return r;
  };
  // Accumulates (vector part..., last, mass).
  const int width = dim + 2;
  std::vector<double> sum;
  if (dim == 2) {
    sum = ordered_parallel_sum(spec.n_phi, width, spec.jobs, [&](int j, double* out) {
      const double phi = j * dphi;
      const RayMoments m = ray_moments(g, 2, geodesic_radius(body.radial(phi)), spec.n_r);
      out[0] = m.radial * std::cos(phi);
      out[1] = m.radial * std::sin(phi);
      out[2] = m.last;
      out[3] = m.mass;
    });
  } else {
    const GaussRule& rule = gauss_legendre(spec.n_theta);
    sum = ordered_parallel_sum(spec.n_phi, width, spec.jobs, [&](int j, double* out) {
      const double phi = j * dphi;
      std::fill(out, out + width, 0.0);
      for (int i = 0; i < spec.n_theta; ++i) {
        const double theta = kHalfPi * rule.nodes[i];
        const double w = rule.weights[i] * std::cos(theta);
        const RayMoments m = ray_moments(g, 3, geodesic_radius(body.radial(theta, phi)), spec.n_r);
        const Vec u = direction3(theta, phi);
        for (int k = 0; k < 3; ++k) out[k] += w * m.radial * u(k);
        out[3] += w * m.last;
        out[4] += w * m.mass;
      }
    });
    for (double& v : sum) v *= kHalfPi;
  }
  for (double& v : sum) v *= dphi;
  const double mass = sum[dim + 1];
  if (!(mass > 0.0)) throw NumericalError("degenerate body: zero volume");
  CentroidReport rep;
  rep.volume = mass;
  Vec vec(dim);
  for (int k = 0; k < dim; ++k) vec(k) = sum[k];
  if (space.curved()) {
    const double last = sum[dim];
    if (!(last > 0.0)) throw NumericalError("centroid is not defined: body is not inside an open hemisphere");
    rep.point = vec / last;
  } else {
    rep.point = vec / mass;
  }
  require_in_chart(space, rep.point);
  return rep;
}

}  // namespace

CentroidReport centroid_report(const RadialBody& body, const QuadratureSpec& spec) {
  spec.validate();
  if (body.centered_at_origin()) return centroid_centered(body, spec);
  const Isometry to_origin = center_isometry(body.space(), body.center());
  CentroidReport rep = centroid_centered(transformed(body, to_origin), spec);
  rep.point = to_origin.inverse()(rep.point);
  return rep;
}

ChartPoint centroid(const RadialBody& body, const QuadratureSpec& spec) { return centroid_report(body, spec).point; }

namespace {

// First moments of the body with respect to hyperplanes through the chart
// origin of `iso`'s image, for all normals at once.
std::vector<double> moments_through(const RadialBody& body, const Isometry& iso, const std::vector<Vec>& normals,
                                    const std::vector<double>& scale, const QuadratureSpec& spec) {
  const SpaceKind& space = body.space();
  const int dim = space.dim();
  const Geometry g = space.geometry();
  const int n_dirs = static_cast<int>(normals.size());
  const GaussRule& ray_rule = gauss_legendre(spec.n_r);
  const double dphi = 2.0 * kPi / spec.n_phi;
  const Mat& m = iso.matrix();

  // Signed (sin / sinh / plain) distances of the image point to every plane,
  // times the volume weight and the ray Jacobian, accumulated along a ray.
  auto along_ray = [&](const Vec& u, double r, double ang_weight, double* out) {
    const double half = 0.5 * r;
    for (int k = 0; k < spec.n_r; ++k) {
      const double t = half * (ray_rule.nodes[k] + 1.0);
      const ChartPoint x = body.center() + t * u;
      Vec h(dim + 1);
      h.head(dim) = x;
      h(dim) = 1.0;
      const Vec y = m * h;
      double norm = 1.0;
      if (g == Geometry::Spherical) norm = y.norm();
      if (g == Geometry::Hyperbolic) norm = std::sqrt(-lorentz_dot(y, y));
      const double jac = dim == 3 ? t * t : t;
      const double w = ang_weight * ray_rule.weights[k] * half * jac * volume_weight(space, x) / norm;
      for (int q = 0; q < n_dirs; ++q) out[q] += w * normals[q].dot(y.head(dim)) * scale[q];
    }
  };

  std::vector<double> sums;
  if (dim == 2) {
    sums = ordered_parallel_sum(spec.n_phi, n_dirs, spec.jobs, [&](int j, double* out) {
      std::fill(out, out + n_dirs, 0.0);
      const double phi = j * dphi;
      along_ray(direction2(phi), body.radial(phi), 1.0, out);
    });
  } else {
    const GaussRule& rule = gauss_legendre(spec.n_theta);
    sums = ordered_parallel_sum(spec.n_phi, n_dirs, spec.jobs, [&](int j, double* out) {
      std::fill(out, out + n_dirs, 0.0);
      const double phi = j * dphi;
      for (int i = 0; i < spec.n_theta; ++i) {
        const double theta = kHalfPi * rule.nodes[i];
        along_ray(direction3(theta, phi), body.radial(theta, phi), rule.weights[i] * std::cos(theta), out);
      }
    });
    for (double& v : sums) v *= kHalfPi;
  }
  for (double& v : sums) v *= dphi;
  return sums;
}

}  // namespace

MomentCheck moment_condition_check(const RadialBody& body, const ChartPoint& point, int n_dirs,
                                   const QuadratureSpec& spec, std::uint64_t seed) {
  spec.validate();
  if (n_dirs < 1) throw DomainError("moment_condition_check needs n_dirs >= 1");
  if (!body.contains(point)) throw DomainError("moment_condition_check: point is not interior to the body");
  const SpaceKind& space = body.space();
  const int dim = space.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Vec> normals;
  std::vector<double> scale;
  for (int q = 0; q < n_dirs; ++q) {
    Vec n(dim);
    for (int k = 0; k < dim; ++k) n(k) = normal(rng);
    n.normalize();
    normals.push_back(n);
    // Normed distance to a hyperplane is the Euclidean one over h_M(n).
    scale.push_back(space.geometry() == Geometry::Normed
                        ? 1.0 / space.norm_profile().support(std::atan2(n(dim - 1), dim == 3 ? std::hypot(n(0), n(1)) : n(0)))
                        : 1.0);
  }
  const Isometry iso = center_isometry(space, point);
  auto max_abs = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
  };
  const std::vector<double> coarse = moments_through(body, iso, normals, scale, spec);
  MomentCheck out;
  if (!spec.richardson) {
    out.max_abs = max_abs(coarse);
    return out;
  }
  const std::vector<double> fine = moments_through(body, iso, normals, scale, spec.doubled());
  out.max_abs = max_abs(fine);
  for (int q = 0; q < n_dirs; ++q) out.error_estimate = std::max(out.error_estimate, std::fabs(fine[q] - coarse[q]));
  return out;
}

CenteringResult find_centering_c(double d, double R, const SpaceKind& space,
                                 std::optional<std::pair<double, double>> bracket, double tol,
                                 const QuadratureSpec& spec) {
  if (!(tol > 0.0)) throw DomainError("centering tolerance must be positive");
  // Solve on the grid whose value first_moment_M3 reports.
  QuadratureSpec single = spec.richardson ? spec.doubled() : spec;
  single.richardson = false;
  CenteringResult res;
  auto M = [&](double c) {
    ++res.evaluations;
    return first_moment_M3_value(gomboc::build_body(gomboc::GombocParams{c, d, R, space}), single);
  };

  double a = 0.0, b = 0.0, fa = 0.0, fb = 0.0;
  if (bracket) {
    a = bracket->first;
    b = bracket->second;
    if (!(a < b)) throw DomainError("centering bracket must satisfy c_lo < c_hi");
    fa = M(a);
    fb = M(b);
    if (fa == 0.0) return CenteringResult{a, fa, a, a, res.evaluations};
    if (fb == 0.0) return CenteringResult{b, fb, b, b, res.evaluations};
    if ((fa < 0.0) == (fb < 0.0)) {
      std::ostringstream os;
      os << "M3 has the same sign at c = " << a << " and c = " << b;
      throw NoSignChange(os.str());
    }
  } else {
    constexpr int kScan = 32;
    constexpr double kLo = 0.01, kHi = 1.0;
    double prev_c = kHi;
    double prev_f = M(kHi);
    bool found = false;
    for (int k = kScan - 2; k >= 0; --k) {
      const double c = kLo + (kHi - kLo) * k / (kScan - 1);
      const double fc = M(c);
      if (fc == 0.0) return CenteringResult{c, fc, c, c, res.evaluations};
      if ((fc < 0.0) != (prev_f < 0.0)) {
        a = c;
        fa = fc;
        b = prev_c;
        fb = prev_f;
        found = true;
        break;
      }
      prev_c = c;
      prev_f = fc;
    }
    if (!found) {
      std::ostringstream os;
      os << "no sign change of M3 for c in [0.01, 1] at d = " << d << " (d too large?)";
      throw NoSignChange(os.str());
    }
  }

  // Secant through the two latest iterates when it lands strictly inside the
  // bracket, bisection otherwise or when the bracket failed to halve twice.
  double best_c = std::fabs(fa) < std::fabs(fb) ? a : b;
  double best_f = std::fabs(fa) < std::fabs(fb) ? fa : fb;
  double x0 = a, f0 = fa, x1 = b, f1 = fb;
  double ref_width = b - a;
  int since_halving = 0;
  for (int it = 0; it < 200; ++it) {
    double x = 0.5 * (a + b);
    if (since_halving < 2 && f1 != f0) {
      const double s = x1 - f1 * (x1 - x0) / (f1 - f0);
      if (s > a && s < b) x = s;
    }
    const double fx = M(x);
    x0 = x1;
    f0 = f1;
    x1 = x;
    f1 = fx;
    if (std::fabs(fx) < std::fabs(best_f)) {
      best_c = x;
      best_f = fx;
    }
    if (fx == 0.0) {
      a = b = x;
      break;
    }
    if ((fx < 0.0) == (fa < 0.0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
    if (b - a <= 0.5 * ref_width) {
      ref_width = b - a;
      since_halving = 0;
    } else {
      ++since_halving;
    }
    if (std::fabs(best_f) <= tol && (std::fabs(x1 - x0) <= tol || b - a <= tol)) break;
    if (b - a <= 4.0 * std::numeric_limits<double>::epsilon()) break;
  }
  res.c_star = best_c;
  res.M3 = best_f;
  res.c_lo = a;
  res.c_hi = b;
  return res;
}

std::vector<SweepRow> sweep_M3(const std::vector<double>& cs, const std::vector<double>& ds, double R,
                               const SpaceKind& space, const QuadratureSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows(cs.size() * ds.size());
  QuadratureSpec inner = spec;
  inner.jobs = 1;
  parallel_for(static_cast<int>(rows.size()), spec.jobs, [&](int k) {
    const double c = cs[k / ds.size()];
    const double d = ds[k % ds.size()];
    SweepRow row;
    row.c = c;
    row.d = d;
    row.R = R;
    row.geometry = space.geometry();
    row.report = first_moment_M3(gomboc::build_body(gomboc::GombocParams{c, d, R, space}), inner);
    row.report.spec = spec;
    rows[k] = row;
  });
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "c,d,R,space,M3,err,n_theta,n_phi,n_r\n";
  std::ostringstream line;
  for (const SweepRow& r : rows) {
    line.str("");
    line << std::setprecision(17) << r.c << ',' << r.d << ',' << r.R << ',' << to_string(r.geometry) << ','
         << r.report.value << ',' << r.report.error_estimate << ',' << r.report.spec.n_theta << ','
         << r.report.spec.n_phi << ',' << r.report.spec.n_r << '\n';
    out << line.str();
  }
}

}  // namespace mono
