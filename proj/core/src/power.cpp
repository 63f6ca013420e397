#include "uavplan/power.hpp"

#include <algorithm>
#include <cmath>

#include "uavplan/errors.hpp"
#include "uavplan/units.hpp"

namespace uavplan {

namespace {

void require_nonnegative(double value, const char* what) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be finite and >= 0");
  }
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be finite and > 0");
  }
}

// Integrates f over [0, upper] on segments growing geometrically from the
// altitude, where the integrand varies on a scale of h.
template <class F>
double integrate_graded(F&& f, double h, double upper, const QuadratureConfig& quad) {
  constexpr double kGrowth = 4.0;
  double total = 0.0;
  double lo = 0.0;
  double hi = h > 0.0 ? std::min(h, upper) : upper;
  while (true) {
    total += integrate(f, lo, hi, quad);
    if (hi >= upper) break;
    lo = hi;
    hi = std::min(hi * kGrowth, upper);
  }
  return total;
}

}  // namespace

double ServiceParams::rate_factor() const { return std::exp2(rate_su) - 1.0; }

void ServiceParams::validate() const {
  require_positive(rate_su, "rate_su");
  require_nonnegative(circuit_power, "circuit_power");
  require_positive(battery_j, "battery_j");
}

double per_user_power(const Environment& env, const LinkGeometry& geom,
                      const ServiceParams& params) {
  return average_path_loss(env, geom) * params.rate_factor();
}

double total_transmit_power(const Environment& env, double r_b, double density, double h,
                            const ServiceParams& params, const QuadratureConfig& quad) {
  require_positive(r_b, "r_b");
  require_nonnegative(density, "density");
  require_nonnegative(h, "h");
  require_nonnegative(params.rate_su, "rate_su");
  if (density == 0.0) return 0.0;
  const double ring_integral = integrate_graded(
      [&](double r) { return 2.0 * kPi * r * average_path_loss(env, {r, h}); }, h, r_b, quad);
  return density * params.rate_factor() * ring_integral;
}

double kernel_gamma(const Environment& env, double h_n, const QuadratureConfig& quad) {
  require_nonnegative(h_n, "h_n");
  return integrate_graded(
      [&](double r) { return 2.0 * kPi * r * average_path_loss(env, {r, h_n}); }, h_n, 1.0, quad);
}

double kernel_gamma_derivative(const Environment& env, double h_n,
                               const QuadratureConfig& quad) {
  require_nonnegative(h_n, "h_n");
  const double eta0 = env.eta_los();
  const double eta1 = env.eta_nlos();
  const double fspl = env.fspl_constant();
  const auto integrand = [&](double r) {
    const LinkGeometry geom{r, h_n};
    const double excess = average_excess_loss(env, geom);
    const double dp = los_probability_altitude_derivative(env, geom);
    const double d2 = r * r + h_n * h_n;
    const double bracket = 2.0 * h_n * excess + d2 * dp * (eta0 - eta1);
    return bracket * fspl * 2.0 * kPi * r;
  };
  return integrate_graded(integrand, h_n, 1.0, quad);
}

double scale_factor(double r_b, double density, const ServiceParams& params) {
  require_positive(r_b, "r_b");
  require_nonnegative(density, "density");
  const double r2 = r_b * r_b;
  return density * r2 * r2 * params.rate_factor();
}

}  // namespace uavplan
