#include "uavplan/altitude.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "uavplan/errors.hpp"
#include "uavplan/units.hpp"

namespace uavplan {

void BisectionConfig::validate() const {
  if (!(epsilon > 0.0)) throw DomainError("bisection: epsilon must be positive");
  if (max_expansions < 0) throw DomainError("bisection: max_expansions must be >= 0");
  if (!(width_tol > 0.0)) throw DomainError("bisection: width_tol must be positive");
}

namespace {

// Accepts a result within one grid step of the grid minimiser, or one whose
// kernel exceeds the grid minimum by no more than the slope tolerance allows
// over the distance between them.
void verify_against_grid(const Environment& env, const AltitudeSearch& search,
                         const BisectionConfig& cfg, const QuadratureConfig& quad) {
  constexpr int kSteps = 1000;
  const double step = search.h_max / kSteps;
  double best_h = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kSteps; ++i) {
    const double h = i * step;
    const double g = kernel_gamma(env, h, quad);
    if (g < best) {
      best = g;
      best_h = h;
    }
  }
  const double gap = std::abs(best_h - search.solution.h_n_star);
  const double excess = (search.solution.gamma_at_opt - best) / best;
  if (gap > step && excess > cfg.epsilon * (gap + step)) {
    std::ostringstream os;
    os << "environment '" << env.name << "': grid minimiser " << best_h
       << " disagrees with bisection result " << search.solution.h_n_star;
    throw BracketFailure(os.str());
  }
}

}  // namespace

AltitudeSearch search_normalized_altitude(const Environment& env, const BisectionConfig& cfg,
                                          const QuadratureConfig& quad) {
  cfg.validate();
  AltitudeSearch out;
  out.solution.env_name = env.name;

  const double d_zero = kernel_gamma_derivative(env, 0.0, quad);
  if (d_zero >= 0.0) {
    out.boundary_optimum = true;
    out.solution.h_n_star = 0.0;
    out.solution.gamma_at_opt = kernel_gamma(env, 0.0, quad);
    return out;
  }

  double lo = 0.0;
  double hi = 1.0;
  double d_hi = kernel_gamma_derivative(env, hi, quad);
  while (d_hi < 0.0) {
    if (out.expansions == cfg.max_expansions) {
      std::ostringstream os;
      os << "environment '" << env.name << "': kernel derivative still negative at h_n = " << hi;
      throw BracketFailure(os.str());
    }
    hi *= 10.0;
    ++out.expansions;
    d_hi = kernel_gamma_derivative(env, hi, quad);
  }
  out.h_max = hi;

  double h = hi;
  if (d_hi > 0.0) {
    while (true) {
      ++out.iterations;
      h = 0.5 * (lo + hi);
      const double d = kernel_gamma_derivative(env, h, quad);
      if (d == 0.0) break;
      if (std::abs(d) < cfg.epsilon * kernel_gamma(env, h, quad)) break;
      if (d > 0.0) {
        hi = h;
      } else {
        lo = h;
      }
      if (hi - lo <= cfg.width_tol * hi) {
        h = 0.5 * (lo + hi);
        break;
      }
    }
  }
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  out.solution.h_n_star = h;
  out.solution.gamma_at_opt = kernel_gamma(env, h, quad);
  if (cfg.verify_with_grid) verify_against_grid(env, out, cfg, quad);
  return out;
}

KernelSolution optimal_normalized_altitude(const Environment& env, const BisectionConfig& cfg,
                                           const QuadratureConfig& quad) {
  return search_normalized_altitude(env, cfg, quad).solution;
}

double optimal_altitude_for_radius(const KernelSolution& sol, double r_b) {
  if (!(r_b >= 0.0)) throw DomainError("optimal_altitude_for_radius: r_b must be >= 0");
  return r_b * sol.h_n_star;
}

double max_feasible_radius(const KernelSolution& sol, double power, double density,
                           const ServiceParams& params) {
  const double denom = density * params.rate_factor() * sol.gamma_at_opt;
  if (!(denom > 0.0)) return std::numeric_limits<double>::infinity();
  return std::pow(power / denom, 0.25);
}

namespace {

// Bisection for gamma(h) == target on a branch where gamma is monotone and
// `increasing` gives its direction.
double solve_branch(const Environment& env, double target, double lo, double hi, bool increasing,
                    const QuadratureConfig& quad) {
  for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double g = kernel_gamma(env, mid, quad);
    if ((g > target) == increasing) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

IsoPowerPoint iso_power_altitudes(const Environment& env, const KernelSolution& sol, double power,
                                  double r_b, double density, const ServiceParams& params,
                                  const QuadratureConfig& quad) {
  const double psi = scale_factor(r_b, density, params);
  if (!(psi > 0.0)) throw NoSolution("iso_power_altitudes: zero traffic at this radius");
  const double target = power / psi;
  IsoPowerPoint out;
  out.r_b = r_b;
  out.h_opt = r_b * sol.h_n_star;

  const double g_min = sol.gamma_at_opt;
  if (target < g_min) {
    if (target < g_min * (1.0 - 1e-12)) {
      std::ostringstream os;
      os << "no altitude reaches power " << power << " at r_b = " << r_b;
      throw NoSolution(os.str());
    }
    out.h_low = out.h_opt;
    out.h_high = out.h_opt;
    return out;
  }

  const double hn = sol.h_n_star;
  if (hn > 0.0 && kernel_gamma(env, 0.0, quad) > target) {
    out.h_low = r_b * solve_branch(env, target, 0.0, hn, false, quad);
  }

  double upper = std::max(2.0 * hn, 1.0);
  while (kernel_gamma(env, upper, quad) < target) upper *= 2.0;
  out.h_high = r_b * solve_branch(env, target, hn, upper, true, quad);
  return out;
}

std::vector<IsoPowerPoint> iso_power_altitude_curve(const Environment& env,
                                                    const KernelSolution& sol, double power_db,
                                                    double density, const ServiceParams& params,
                                                    std::span<const double> radii,
                                                    const QuadratureConfig& quad) {
  const double power = db_to_linear(power_db);
  std::vector<IsoPowerPoint> out;
  for (double r_b : radii) {
    try {
      out.push_back(iso_power_altitudes(env, sol, power, r_b, density, params, quad));
    } catch (const NoSolution&) {
    }
  }
  return out;
}

}  // namespace uavplan
