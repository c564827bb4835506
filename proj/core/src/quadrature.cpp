#include "mono/quadrature.hpp"

#include "mono/types.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

namespace mono {

namespace {

GaussRule compute_rule(int n) {
  GaussRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre rule needs n >= 1");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(compute_rule(n));
  return *slot;
}

void QuadratureSpec::validate() const {
  if (n_theta < 16) throw DomainError("n_theta must be >= 16, got " + std::to_string(n_theta));
  if (n_phi < 32) throw DomainError("n_phi must be >= 32, got " + std::to_string(n_phi));
  if (n_r < 16) throw DomainError("n_r must be >= 16, got " + std::to_string(n_r));
  if (jobs < 1) throw DomainError("jobs must be >= 1");
}

QuadratureSpec QuadratureSpec::doubled() const {
  QuadratureSpec s = *this;
  s.n_theta *= 2;
  s.n_phi *= 2;
  s.n_r *= 2;
  return s;
}

void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> threads;
  std::exception_ptr error;
  std::mutex error_mu;
  for (int j = 0; j < jobs; ++j) {
    const int lo = static_cast<int>(static_cast<long long>(n) * j / jobs);
    const int hi = static_cast<int>(static_cast<long long>(n) * (j + 1) / jobs);
    threads.emplace_back([&, lo, hi] {
      try {
        for (int i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<double> ordered_parallel_sum(int n, int width, int jobs, const std::function<void(int, double*)>& term) {
  std::vector<double> terms(static_cast<std::size_t>(n) * width, 0.0);
  parallel_for(n, jobs, [&](int i) { term(i, terms.data() + static_cast<std::size_t>(i) * width); });
  std::vector<double> sum(width, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < width; ++k) sum[k] += terms[static_cast<std::size_t>(i) * width + k];
  }
  return sum;
}

double ordered_parallel_sum(int n, int jobs, const std::function<double(int)>& term) {
  return ordered_parallel_sum(n, 1, jobs, [&](int i, double* out) { *out = term(i); })[0];
}

double integrate_gl(const std::function<double(double)>& fn, double a, double b, int n) {
  const GaussRule& rule = gauss_legendre(n);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += rule.weights[i] * fn(mid + half * rule.nodes[i]);
  return half * s;
}

}  // namespace mono
