#include "mono/bodies.hpp"

#include "mono/equilibria.hpp"
#include "mono/integrate.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>

namespace mono {

namespace {

// Uniform in [0, 1) from the top 53 bits; unlike std::uniform_real_distribution
// this is the same on every standard library.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

double wrap_pi(double a) { return a - 2.0 * kPi * std::round(a / (2.0 * kPi)); }

}  // namespace

std::array<double, 3> SupportHarmonics2D::eval(double phi) const {
  double h = 1.0, h1 = 0.0, h2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double k = static_cast<double>(i + 2);
    const double c = std::cos(k * phi), s = std::sin(k * phi);
    h += a[i] * c + b[i] * s;
    h1 += k * (-a[i] * s + b[i] * c);
    h2 -= k * k * (a[i] * c + b[i] * s);
  }
  return {h, h1, h2};
}

double SupportHarmonics2D::min_convexity_margin(int grid) const {
  double m = std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid; ++j) {
    const auto e = eval(2.0 * kPi * j / grid);
    m = std::min(m, e[0] + e[2]);
  }
  return m;
}

SupportHarmonics2D random_harmonics(std::uint64_t seed, double c0, int k_max) {
  if (!(c0 > 0.0)) throw DomainError("c0 must be positive");
  if (k_max < 2) throw DomainError("k_max must be >= 2");
  std::mt19937_64 rng(seed);
  for (int draw = 0; draw < 1000; ++draw) {
    SupportHarmonics2D h;
    h.c0 = c0;
    for (int k = 2; k <= k_max; ++k) {
      const double lim = c0 / (4.0 * k * k);
      h.a.push_back(uniform(rng, -lim, lim));
      h.b.push_back(uniform(rng, -lim, lim));
    }
    if (h.min_convexity_margin() > 0.0) return h;
  }
  throw NumericalError("random_harmonics: no convex draw within 1000 attempts");
}

namespace {

// Boundary of the chart body with support function scale * h, parametrized
// by the normal angle, and its inverse in terms of the polar angle.
class SupportCurve {
 public:
  SupportCurve(SupportHarmonics2D h, double scale) : h_(std::move(h)), scale_(scale) {
    psi_.resize(kTable + 1);
    psi_[0] = polar(0.0);
    for (int j = 1; j <= kTable; ++j) psi_[j] = psi_[j - 1] + wrap_pi(polar(node(j)) - polar(node(j - 1)));
  }

  Eigen::Vector2d point(double phi) const {
    const auto e = h_.eval(phi);
    const double c = std::cos(phi), s = std::sin(phi);
    return scale_ * Eigen::Vector2d(e[0] * c - e[1] * s, e[0] * s + e[1] * c);
  }

  double radial(double psi_query) const {
    // Unwrapped polar angle increases by exactly 2 pi over one turn.
    double q = psi_[0] + std::fmod(psi_query - psi_[0], 2.0 * kPi);
    if (q < psi_[0]) q += 2.0 * kPi;
    const auto it = std::upper_bound(psi_.begin(), psi_.end(), q);
    const int j = std::clamp(static_cast<int>(it - psi_.begin()) - 1, 0, kTable - 1);
    double lo = node(j), hi = node(j + 1);
    double phi = lo + (hi - lo) * (q - psi_[j]) / (psi_[j + 1] - psi_[j]);
    for (int it2 = 0; it2 < 40; ++it2) {
      const double f = psi_[j] + wrap_pi(polar(phi) - psi_[j]) - q;
      if (f == 0.0) break;
      (f < 0.0 ? lo : hi) = phi;
      const double next = phi - f / dpsi(phi);
      const double cand = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
      if (std::fabs(cand - phi) < 1e-16) {
        phi = cand;
        break;
      }
      phi = cand;
    }
    return point(phi).norm();
  }

  double max_radius() const {
    double m = 0.0;
    for (int j = 0; j < kTable; ++j) m = std::max(m, point(node(j)).norm());
    return m;
  }

 private:
  static constexpr int kTable = 1024;
  static double node(int j) { return 2.0 * kPi * j / kTable; }
  double polar(double phi) const {
    const Eigen::Vector2d x = point(phi);
    return std::atan2(x(1), x(0));
  }
  // d(polar angle)/d(normal angle) = (h + h'') h / |x|^2 > 0.
  double dpsi(double phi) const {
    const auto e = h_.eval(phi);
    const double n2 = e[0] * e[0] + e[1] * e[1];
    return (e[0] + e[2]) * e[0] / n2;
  }

  SupportHarmonics2D h_;
  double scale_;
  std::vector<double> psi_;
};

}  // namespace

RadialBody convex_body_2d(const SpaceKind& space, const SupportHarmonics2D& h, double scale) {
  if (space.dim() != 2) throw DomainError("convex_body_2d needs a 2D space");
  if (!(scale > 0.0)) throw DomainError("scale must be positive");
  if (!(h.min_convexity_margin() > 0.0)) throw DomainError("support function fails the convexity certificate");
  auto curve = std::make_shared<const SupportCurve>(h, scale);
  if (space.geometry() == Geometry::Hyperbolic && !(curve->max_radius() < 1.0)) {
    throw DomainError("hyperbolic body leaves the unit disk; reduce the scale");
  }
  return RadialBody(space, ChartPoint::Zero(2), [curve](double, double phi) { return curve->radial(phi); });
}

RadialBody random_convex_2d(const SpaceKind& space, std::uint64_t seed, double scale, int k_max, double c0) {
  RadialBody body = convex_body_2d(space, random_harmonics(seed, c0, k_max), scale);
  if (space.geometry() == Geometry::Spherical) {
    constexpr double kMargin = 0.2;
    const ChartPoint c = centroid(body);
    for (int j = 0; j < 512; ++j) {
      const ChartPoint x = body.boundary_point(0.0, 2.0 * kPi * j / 512);
      if (!(distance(space, c, x) < kHalfPi - kMargin)) {
        throw DomainError("spherical body is not within pi/2 - 0.2 of its centroid; reduce the scale");
      }
    }
  }
  return body;
}

// ---------------------------------------------------------------------------

namespace {

// Random polynomial of degree 1..3 in (x, y, z), coefficients scaled so that
// the sum of their absolute values is 1, hence |P(u)| <= 1 on the sphere.
struct Polynomial3 {
  std::vector<std::array<int, 3>> powers;
  std::vector<double> coef;

  double value(const Eigen::Vector3d& u, Eigen::Vector3d* grad, Eigen::Matrix3d* hess) const {
    double v = 0.0;
    if (grad) grad->setZero();
    if (hess) hess->setZero();
    auto pw = [](double x, int n) { return n <= 0 ? 1.0 : std::pow(x, n); };
    for (std::size_t m = 0; m < coef.size(); ++m) {
      const auto& e = powers[m];
      const double c = coef[m];
      v += c * pw(u(0), e[0]) * pw(u(1), e[1]) * pw(u(2), e[2]);
      for (int i = 0; i < 3 && grad; ++i) {
        if (e[i] == 0) continue;
        std::array<int, 3> f = e;
        f[i] -= 1;
        (*grad)(i) += c * e[i] * pw(u(0), f[0]) * pw(u(1), f[1]) * pw(u(2), f[2]);
        for (int j = 0; j < 3 && hess; ++j) {
          if (f[j] == 0) continue;
          std::array<int, 3> g = f;
          g[j] -= 1;
          (*hess)(i, j) += c * e[i] * f[j] * pw(u(0), g[0]) * pw(u(1), g[1]) * pw(u(2), g[2]);
        }
      }
    }
    return v;
  }
};

Polynomial3 random_polynomial(std::mt19937_64& rng) {
  Polynomial3 p;
  for (int deg = 1; deg <= 3; ++deg) {
    for (int i = deg; i >= 0; --i) {
      for (int j = deg - i; j >= 0; --j) p.powers.push_back({i, j, deg - i - j});
    }
  }
  double total = 0.0;
  for (std::size_t m = 0; m < p.powers.size(); ++m) {
    p.coef.push_back(uniform(rng, -1.0, 1.0));
    total += std::fabs(p.coef.back());
  }
  for (double& c : p.coef) c /= total;
  return p;
}

}  // namespace

RadialBody perturbed_ellipsoid_3d(std::array<double, 3> semi_axes, std::uint64_t seed, double amplitude,
                                  const SpaceKind& space) {
  const auto [a, b, c] = semi_axes;
  if (space.dim() != 3) throw DomainError("perturbed_ellipsoid_3d needs a 3D space");
  if (!(a >= b && b >= c && c > 0.0)) throw DomainError("semi-axes must satisfy a >= b >= c > 0");
  if (!(amplitude >= 0.0 && amplitude < 0.05 * c)) throw DomainError("amplitude must lie in [0, 0.05 c)");
  const RadialBody ell = make_ellipsoid(space, a, b, c);
  if (amplitude == 0.0) return ell;
  std::mt19937_64 rng(seed);
  for (int draw = 0; draw < 100; ++draw) {
    const Polynomial3 poly = random_polynomial(rng);
    auto partials = [ell, poly, amplitude](double th, double ph) {
      RadialDerivs d = ell.partials(th, ph);
      const double st = std::sin(th), ct = std::cos(th), sp = std::sin(ph), cp = std::cos(ph);
      const Eigen::Vector3d u(ct * cp, ct * sp, st);
      const Eigen::Vector3d ut(-st * cp, -st * sp, ct);
      const Eigen::Vector3d up(-ct * sp, ct * cp, 0.0);
      const Eigen::Vector3d utp(st * sp, -st * cp, 0.0);
      const Eigen::Vector3d upp(-ct * cp, -ct * sp, 0.0);
      Eigen::Vector3d g;
      Eigen::Matrix3d H;
      const double v = poly.value(u, &g, &H);
      d.r += amplitude * v;
      d.r_t += amplitude * g.dot(ut);
      d.r_p += amplitude * g.dot(up);
      d.r_tt += amplitude * (ut.dot(H * ut) - g.dot(u));
      d.r_tp += amplitude * (ut.dot(H * up) + g.dot(utp));
      d.r_pp += amplitude * (up.dot(H * up) + g.dot(upp));
      return d;
    };
    RadialBody body(space, ChartPoint::Zero(3), [partials](double t, double p) { return partials(t, p).r; },
                    RadialPartialsFn(partials));
    if (min_curvature(body, 32).value > 0.0) return body;
  }
  throw NumericalError("perturbed_ellipsoid_3d: no convex draw within 100 attempts");
}

// ---------------------------------------------------------------------------

MeshExport export_mesh(const RadialBody& body, int n_theta, int n_phi, const std::string& path,
                       const std::string& embedded_path) {
  if (body.dim() != 3) throw DomainError("export_mesh needs a 3D body");
  if (n_theta < 2 || n_phi < 3) throw DomainError("export_mesh needs n_theta >= 2 and n_phi >= 3");
  if (!embedded_path.empty() && !body.space().curved()) {
    throw DomainError("embedded mesh export needs a spherical or hyperbolic body");
  }
  std::vector<ChartPoint> verts;
  verts.reserve(2 + static_cast<std::size_t>(n_theta - 1) * n_phi);
  verts.push_back(body.boundary_point(-kHalfPi, 0.0));
  for (int i = 1; i < n_theta; ++i) {
    const double th = -kHalfPi + kPi * i / n_theta;
    for (int j = 0; j < n_phi; ++j) verts.push_back(body.boundary_point(th, 2.0 * kPi * j / n_phi));
  }
  verts.push_back(body.boundary_point(kHalfPi, 0.0));

  // One-based OBJ indices; triangles are ordered for outward normals.
  std::vector<std::array<std::size_t, 3>> faces;
  auto ring = [n_phi](int i, int j) { return 2 + static_cast<std::size_t>(i - 1) * n_phi + ((j % n_phi + n_phi) % n_phi); };
  const std::size_t south = 1, north = verts.size();
  for (int j = 0; j < n_phi; ++j) faces.push_back({south, ring(1, j + 1), ring(1, j)});
  for (int i = 1; i + 1 < n_theta; ++i) {
    for (int j = 0; j < n_phi; ++j) {
      faces.push_back({ring(i, j), ring(i, j + 1), ring(i + 1, j)});
      faces.push_back({ring(i, j + 1), ring(i + 1, j + 1), ring(i + 1, j)});
    }
  }
  for (int j = 0; j < n_phi; ++j) faces.push_back({ring(n_theta - 1, j), ring(n_theta - 1, j + 1), north});

  auto write = [&](const std::string& p, bool embedded) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot open mesh file for writing: " + p);
    out << "# " << body.space().describe() << ", " << verts.size() << " vertices, " << faces.size() << " faces\n";
    if (embedded) out << "# embedded surface in R^4, first three coordinates\n";
    char buf[128];
    for (const ChartPoint& v : verts) {
      const Vec y = embedded ? embed(body.space(), v) : Vec(v);
      std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", y(0), y(1), y(2));
      out << buf;
    }
    for (const auto& f : faces) out << "f " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
    if (!out) throw std::runtime_error("error while writing mesh file: " + p);
  };
  write(path, false);
  if (!embedded_path.empty()) write(embedded_path, true);
  return {verts.size(), faces.size()};
}

ObjMesh read_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mesh file: " + path);
  ObjMesh mesh;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      std::array<double, 3> v{};
      if (!(ss >> v[0] >> v[1] >> v[2])) throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad vertex");
      mesh.vertices.push_back(v);
    } else if (tag == "f") {
      std::array<int, 3> f{};
      for (int k = 0; k < 3; ++k) {
        std::string tok;
        if (!(ss >> tok)) throw std::runtime_error(path + ":" + std::to_string(lineno) + ": face needs 3 vertices");
        f[k] = std::stoi(tok.substr(0, tok.find('/'))) - 1;
      }
      mesh.faces.push_back(f);
    }
  }
  for (const auto& f : mesh.faces) {
    for (int v : f) {
      if (v < 0 || v >= static_cast<int>(mesh.vertices.size())) {
        throw std::runtime_error(path + ": face index out of range");
      }
    }
  }
  return mesh;
}

void write_body_csv(const RadialBody& body, const std::string& path, int n_theta, int n_phi) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open CSV file for writing: " + path);
  char buf[128];
  if (body.dim() == 2) {
    out << "phi,radial\n";
    for (int j = 0; j < n_phi; ++j) {
      const double ph = 2.0 * kPi * j / n_phi;
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", ph, body.radial(ph));
      out << buf;
    }
  } else {
    out << "theta,phi,radial\n";
    for (int i = 0; i <= n_theta; ++i) {
      const double th = -kHalfPi + kPi * i / n_theta;
      for (int j = 0; j < n_phi; ++j) {
        const double ph = 2.0 * kPi * j / n_phi;
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", th, ph, body.radial(th, ph));
        out << buf;
      }
    }
  }
  if (!out) throw std::runtime_error("error while writing CSV file: " + path);
}

}  // namespace mono
