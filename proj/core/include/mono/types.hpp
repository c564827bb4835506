#pragma once

#include <Eigen/Core>

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace mono {

// Small fixed-capacity vectors: chart points have 2 or 3 coordinates,
// embedded points 3 or 4. No heap allocation.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 4, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;

/// Coordinates of a point in the chart model of a space.
using ChartPoint = Vec;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHalfPi = kPi / 2.0;

/// A point or parameter lies outside the domain an operation accepts.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Numerical procedure could not produce a result (no bracket, degenerate
/// integral, rejection limit, ...).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

inline Vec make_vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

/// Unit direction (cos t cos p, cos t sin p, sin t).
inline Vec direction3(double theta, double phi) {
  const double ct = std::cos(theta);
  return make_vec({ct * std::cos(phi), ct * std::sin(phi), std::sin(theta)});
}

inline Vec direction2(double phi) { return make_vec({std::cos(phi), std::sin(phi)}); }

}  // namespace mono
