#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "uavplan/errors.hpp"

namespace uavplan {

/// Composite Gauss-Legendre settings. Integration starts at `panels` and
/// doubles the panel count until two successive estimates agree to
/// `rel_tol`, giving up beyond `max_panels`.
struct QuadratureConfig {
  int panels = 16;
  int nodes_per_panel = 8;
  double rel_tol = 1e-9;
  int max_panels = 1024;

  void validate() const;
};

/// Nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached n-point rule (n >= 1). Thread-safe.
const GaussLegendreRule& gauss_legendre_rule(int n);

namespace detail {

struct Estimate {
  double value = 0.0;
  double magnitude = 0.0;  // same rule applied to |f|
};

template <class F>
Estimate composite_gauss_legendre(F& f, double lo, double hi, int panels,
                                  const GaussLegendreRule& rule) {
  const double width = (hi - lo) / panels;
  const double half = 0.5 * width;
  Estimate total;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * width;
    double panel_sum = 0.0;
    double panel_abs = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double fx = f(mid + half * rule.nodes[k]);
      panel_sum += rule.weights[k] * fx;
      panel_abs += rule.weights[k] * std::abs(fx);
    }
    total.value += half * panel_sum;
    total.magnitude += half * panel_abs;
  }
  return total;
}

}  // namespace detail

/// Integrates f over [lo, hi] with panel doubling. Nodes are interior, so f
/// is never evaluated at the endpoints. Successive estimates are compared
/// against the integral of |f|, which equals the plain relative test for
/// one-signed integrands and stays meaningful when a signed integrand
/// cancels to zero. Throws QuadratureError when the cap is reached first.
template <class F>
double integrate(F&& f, double lo, double hi, const QuadratureConfig& cfg) {
  cfg.validate();
  if (lo == hi) return 0.0;
  const auto& rule = gauss_legendre_rule(cfg.nodes_per_panel);
  int panels = cfg.panels;
  double previous = detail::composite_gauss_legendre(f, lo, hi, panels, rule).value;
  while (true) {
    panels *= 2;
    if (panels > cfg.max_panels) {
      throw QuadratureError("quadrature did not reach rel_tol " + std::to_string(cfg.rel_tol) +
                            " within " + std::to_string(cfg.max_panels) + " panels");
    }
    const auto estimate = detail::composite_gauss_legendre(f, lo, hi, panels, rule);
    const double current = estimate.value;
    if (!std::isfinite(current)) {
      throw QuadratureError("quadrature produced a non-finite estimate");
    }
    const double scale = std::max(std::abs(current), estimate.magnitude);
    if (std::abs(current - previous) <= cfg.rel_tol * scale) return current;
    previous = current;
  }
}

}  // namespace uavplan
