#include "mono/norm_profile.hpp"

#include "mono/types.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <type_traits>
#include <variant>

namespace mono {

namespace {

struct SphereProfile {};

struct SuperellipsoidProfile {
  double p;
};

struct SpheroidProfile {
  double axial;  // polar semi-axis; the equatorial one is 1
};

// Clamped cubic spline on [0, pi/2] with zero end slopes (the profile is even
// about 0 and about pi/2).
struct SplineProfile {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> m;  // second derivatives at knots

  AngleDerivs eval(double t) const {
    const auto it = std::upper_bound(x.begin(), x.end(), t);
    std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    i = std::min(i, x.size() - 2);
    const double h = x[i + 1] - x[i];
    const double a = (x[i + 1] - t) / h;
    const double b = (t - x[i]) / h;
    AngleDerivs out;
    out.value = a * y[i] + b * y[i + 1] + ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) * h * h / 6.0;
    out.d1 = (y[i + 1] - y[i]) / h - (3.0 * a * a - 1.0) * h / 6.0 * m[i] + (3.0 * b * b - 1.0) * h / 6.0 * m[i + 1];
    out.d2 = a * m[i] + b * m[i + 1];
    return out;
  }
};

SplineProfile make_spline(std::vector<double> x, std::vector<double> y) {
  const std::size_t n = x.size();
  // Tridiagonal system for clamped end conditions (slope 0 at both ends).
  std::vector<double> diag(n), upper(n), rhs(n);
  auto h = [&](std::size_t i) { return x[i + 1] - x[i]; };
  diag[0] = h(0) / 3.0;
  upper[0] = h(0) / 6.0;
  rhs[0] = (y[1] - y[0]) / h(0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    diag[i] = (h(i - 1) + h(i)) / 3.0;
    upper[i] = h(i) / 6.0;
    rhs[i] = (y[i + 1] - y[i]) / h(i) - (y[i] - y[i - 1]) / h(i - 1);
  }
  diag[n - 1] = h(n - 2) / 3.0;
  rhs[n - 1] = -(y[n - 1] - y[n - 2]) / h(n - 2);
  // Thomas algorithm; sub-diagonal equals upper shifted by one.
  std::vector<double> c(n), d(n);
  c[0] = upper[0] / diag[0];
  d[0] = rhs[0] / diag[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double sub = upper[i - 1];
    const double denom = diag[i] - sub * c[i - 1];
    c[i] = i + 1 < n ? upper[i] / denom : 0.0;
    d[i] = (rhs[i] - sub * d[i - 1]) / denom;
  }
  std::vector<double> m(n);
  m[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) m[i] = d[i] - c[i] * m[i + 1];
  return SplineProfile{std::move(x), std::move(y), std::move(m)};
}

AngleDerivs superellipsoid_derivs(double p, double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  const double h = std::pow(c, p) + std::pow(s, p);
  const double h1 = p * (-std::pow(c, p - 1.0) * s + std::pow(s, p - 1.0) * c);
  const double h2 = p * ((p - 1.0) * std::pow(c, p - 2.0) * s * s - std::pow(c, p) +
                         (p - 1.0) * std::pow(s, p - 2.0) * c * c - std::pow(s, p));
  const double k = -1.0 / p;
  AngleDerivs out;
  out.value = std::pow(h, k);
  out.d1 = k * std::pow(h, k - 1.0) * h1;
  out.d2 = k * ((k - 1.0) * std::pow(h, k - 2.0) * h1 * h1 + std::pow(h, k - 1.0) * h2);
  return out;
}

AngleDerivs spheroid_derivs(double axial, double t) {
  const double k = 1.0 / (axial * axial) - 1.0;
  const double h = 1.0 + k * std::sin(t) * std::sin(t);
  const double h1 = k * std::sin(2.0 * t);
  const double h2 = 2.0 * k * std::cos(2.0 * t);
  AngleDerivs out;
  out.value = 1.0 / std::sqrt(h);
  out.d1 = -0.5 * h1 * std::pow(h, -1.5);
  out.d2 = 0.75 * h1 * h1 * std::pow(h, -2.5) - 0.5 * h2 * std::pow(h, -1.5);
  return out;
}

}  // namespace

struct NormProfile::Impl {
  std::variant<SphereProfile, SuperellipsoidProfile, SpheroidProfile, SplineProfile> kind;
};

NormProfile NormProfile::sphere() {
  return NormProfile(std::make_shared<const Impl>(Impl{SphereProfile{}}));
}

NormProfile NormProfile::superellipsoid(double p) {
  if (!(p >= 2.0) || !std::isfinite(p)) {
    throw DomainError("superellipsoid exponent must be finite and >= 2, got " + std::to_string(p));
  }
  return NormProfile(std::make_shared<const Impl>(Impl{SuperellipsoidProfile{p}}));
}

NormProfile NormProfile::spheroid(double axial) {
  if (!(axial > 0.0) || !std::isfinite(axial)) throw DomainError("spheroid axis ratio must be positive");
  return NormProfile(std::make_shared<const Impl>(Impl{SpheroidProfile{axial}}));
}

NormProfile NormProfile::from_samples(std::vector<double> theta, std::vector<double> rho) {
  if (theta.size() != rho.size()) throw DomainError("profile samples: theta and rho differ in length");
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double t = std::fabs(theta[i]);
    if (t > kHalfPi + 1e-12) throw DomainError("profile samples: |theta| exceeds pi/2");
    if (!(rho[i] > 0.0)) throw DomainError("profile samples: rho must be positive");
    pts.emplace_back(std::min(t, kHalfPi), rho[i]);
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> x, y;
  for (const auto& [t, r] : pts) {
    if (!x.empty() && t - x.back() < 1e-12) {
      if (std::fabs(r - y.back()) > 1e-9 * r) {
        throw DomainError("profile samples: conflicting values at theta and -theta");
      }
      continue;
    }
    x.push_back(t);
    y.push_back(r);
  }
  if (x.size() < 4) throw DomainError("profile samples: need at least 4 distinct |theta| values");
  if (x.front() > 1e-12 || x.back() < kHalfPi - 1e-12) {
    throw DomainError("profile samples must cover |theta| in [0, pi/2]");
  }
  x.front() = 0.0;
  x.back() = kHalfPi;
  return NormProfile(std::make_shared<const Impl>(Impl{make_spline(std::move(x), std::move(y))}));
}

NormProfile NormProfile::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open norm profile CSV: " + path);
  std::vector<double> theta, rho;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double t = 0.0, r = 0.0;
    if (!(ss >> t >> r)) {
      if (lineno == 1) continue;  // header
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected two numbers");
    }
    theta.push_back(t);
    rho.push_back(r);
  }
  return from_samples(std::move(theta), std::move(rho));
}

AngleDerivs NormProfile::derivs(double theta) const {
  // pi-periodic and even: reduce to [0, pi/2].
  double t = theta - kPi * std::round(theta / kPi);
  const double sign = t < 0.0 ? -1.0 : 1.0;
  t = std::min(std::fabs(t), kHalfPi);
  AngleDerivs out = std::visit(
      [t](const auto& k) -> AngleDerivs {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, SphereProfile>) {
          return {1.0, 0.0, 0.0};
        } else if constexpr (std::is_same_v<K, SuperellipsoidProfile>) {
          return superellipsoid_derivs(k.p, t);
        } else if constexpr (std::is_same_v<K, SpheroidProfile>) {
          return spheroid_derivs(k.axial, t);
        } else {
          return k.eval(t);
        }
      },
      impl_->kind);
  out.d1 *= sign;
  return out;
}

double NormProfile::support(double alpha) const {
  if (std::holds_alternative<SphereProfile>(impl_->kind)) return 1.0;
  auto objective = [&](double beta) { return (*this)(beta) * std::cos(beta - alpha); };
  constexpr int kGrid = 2048;
  double best = -1.0;
  double best_beta = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    const double beta = alpha - kHalfPi + kPi * (i + 0.5) / kGrid;
    const double v = objective(beta);
    if (v > best) {
      best = v;
      best_beta = beta;
    }
  }
  // Golden-section refinement inside the winning cell neighbourhood.
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_beta - kPi / kGrid;
  double hi = best_beta + kPi / kGrid;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = objective(x1), f2 = objective(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = objective(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = objective(x1);
    }
  }
  return std::max({best, f1, f2});
}

double NormProfile::min_convexity_margin(int grid) const {
  double margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= grid; ++i) {
    const AngleDerivs r = derivs(kHalfPi * i / grid);
    margin = std::min(margin, r.value * r.value + 2.0 * r.d1 * r.d1 - r.value * r.d2);
  }
  return margin;
}

std::string NormProfile::describe() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, SphereProfile>) {
          return "sphere";
        } else if constexpr (std::is_same_v<K, SuperellipsoidProfile>) {
          std::ostringstream os;
          os << "superellipsoid(p=" << k.p << ")";
          return os.str();
        } else if constexpr (std::is_same_v<K, SpheroidProfile>) {
          std::ostringstream os;
          os << "spheroid(axial=" << k.axial << ")";
          return os.str();
        } else {
          return "spline(" + std::to_string(k.x.size()) + " knots)";
        }
      },
      impl_->kind);
}

}  // namespace mono
