#include "uavplan/quadrature.hpp"

#include <map>
#include <mutex>

#include "uavplan/units.hpp"

namespace uavplan {

void QuadratureConfig::validate() const {
  if (panels < 1) throw DomainError("quadrature: panels must be >= 1");
  if (nodes_per_panel < 2) throw DomainError("quadrature: nodes_per_panel must be >= 2");
  if (!(rel_tol > 0.0)) throw DomainError("quadrature: rel_tol must be positive");
  if (max_panels < panels) throw DomainError("quadrature: max_panels below initial panels");
}

namespace {

// Newton iteration on P_n from the Chebyshev-like initial guess.
GaussLegendreRule build_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double z_prev = z;
      z = z_prev - p0 / dp;
      if (std::abs(z - z_prev) <= 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre_rule(int n) {
  if (n < 1) throw DomainError("gauss_legendre_rule: n must be >= 1");
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

}  // namespace uavplan
