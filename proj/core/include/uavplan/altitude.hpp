#pragma once

#include <optional>
#include <span>
#include <vector>

#include "uavplan/channel.hpp"
#include "uavplan/power.hpp"
#include "uavplan/quadrature.hpp"

namespace uavplan {

struct BisectionConfig {
  /// Stop once |dGamma/dh_n| / Gamma(h_n) drops below this.
  double epsilon = 1e-3;
  /// Decade expansions of the upper bracket end, starting from h_n = 1.
  /// Zero restricts the search to [0, 1].
  int max_expansions = 20;
  /// Stop once the bracket is narrower than width_tol * upper end.
  double width_tol = 1e-9;
  /// Re-check the result against a 1001-point grid sweep of Gamma and throw
  /// BracketFailure on a disagreement.
  bool verify_with_grid = false;

  void validate() const;
};

/// Full trace of one optimal-altitude search.
struct AltitudeSearch {
  KernelSolution solution;
  double bracket_lo = 0.0;  // derivative < 0 here (unless boundary)
  double bracket_hi = 0.0;  // derivative > 0 here (unless boundary)
  double h_max = 0.0;       // upper end after expansion
  int expansions = 0;
  int iterations = 0;
  bool boundary_optimum = false;
};

/// Bracket expansion followed by bisection on the kernel derivative.
/// Returns h_n* = 0 when the derivative is already nonnegative at zero.
/// Throws BracketFailure if the derivative stays negative up to 10^max_expansions.
AltitudeSearch search_normalized_altitude(const Environment& env, const BisectionConfig& cfg = {},
                                          const QuadratureConfig& quad = {});

KernelSolution optimal_normalized_altitude(const Environment& env, const BisectionConfig& cfg = {},
                                           const QuadratureConfig& quad = {});

/// h* = r_b * h_n*.
double optimal_altitude_for_radius(const KernelSolution& sol, double r_b);

/// Altitudes where the transmit power of a disk of radius r_b equals a fixed
/// level. `h_low` is empty when the low branch runs into the ground (the
/// power at h = 0 is already below the target); otherwise it is the root
/// on [0, h*]. `h_high` is the root above h*.
struct IsoPowerPoint {
  double r_b = 0.0;
  std::optional<double> h_low;
  double h_high = 0.0;
  double h_opt = 0.0;
};

/// Largest radius whose minimum transmit power does not exceed `power`.
double max_feasible_radius(const KernelSolution& sol, double power, double density,
                           const ServiceParams& params);

/// Throws NoSolution when r_b exceeds max_feasible_radius.
IsoPowerPoint iso_power_altitudes(const Environment& env, const KernelSolution& sol, double power,
                                  double r_b, double density, const ServiceParams& params,
                                  const QuadratureConfig& quad = {});

/// Fixed-power curve over a radius grid. Infeasible radii are skipped; the
/// result is empty when none is feasible. `power_db` is noise-normalized.
std::vector<IsoPowerPoint> iso_power_altitude_curve(const Environment& env,
                                                    const KernelSolution& sol, double power_db,
                                                    double density, const ServiceParams& params,
                                                    std::span<const double> radii,
                                                    const QuadratureConfig& quad = {});

}  // namespace uavplan
