#pragma once

#include <functional>
#include <vector>

namespace mono {

struct GaussRule {
  std::vector<double> nodes;  // ascending, on [-1, 1], exactly antisymmetric
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (cached per n; thread safe).
const GaussRule& gauss_legendre(int n);

/// Grid resolution for integrals over radial bodies.
struct QuadratureSpec {
  int n_theta = 64;   // Gauss-Legendre nodes in polar angle
  int n_phi = 128;    // trapezoid nodes in azimuth
  int n_r = 32;       // Gauss-Legendre nodes along each ray
  bool richardson = true;
  int jobs = 1;       // parallel width; results do not depend on it

  void validate() const;
  QuadratureSpec doubled() const;
};

/// sum_{i<n} term(i), evaluated on `jobs` threads. Terms are stored and added
/// in index order, so the result is bitwise independent of `jobs`.
double ordered_parallel_sum(int n, int jobs, const std::function<double(int)>& term);

/// Vector-valued variant: every term returns `width` numbers.
std::vector<double> ordered_parallel_sum(int n, int width, int jobs,
                                         const std::function<void(int, double*)>& term);

/// Runs fn(i) for i in [0, n) on `jobs` threads (contiguous index blocks).
/// The first exception thrown by any task is rethrown after all threads join.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn);

/// Integral of fn over [a, b] with an n-point Gauss-Legendre rule.
double integrate_gl(const std::function<double(double)>& fn, double a, double b, int n);

}  // namespace mono
