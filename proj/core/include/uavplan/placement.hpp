#pragma once

#include <map>
#include <memory>
#include <shared_mutex>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "uavplan/altitude.hpp"
#include "uavplan/channel.hpp"
#include "uavplan/power.hpp"

namespace uavplan {

/// Zone with one traffic density and one propagation environment.
struct Subregion {
  std::string label;
  double area_m2 = 0.0;
  double density = 0.0;  // users / m^2
  Environment env;
};

/// Fractional UAV count area / (pi r_b^2); disk overlaps are ignored.
double uav_count(double area_m2, double r_b);

/// UAV recall frequency of a subregion when every UAV covers radius r_b and
/// hovers at r_b * h_n*.
double recall_frequency(const Subregion& sub, double r_b, const ServiceParams& params,
                        const KernelSolution& sol);

/// Radius balancing transmit power against circuit power. Zero when the
/// circuit power is zero; throws DegenerateDensity for zero traffic with
/// positive circuit power.
double optimal_radius(const Subregion& sub, const ServiceParams& params,
                      const KernelSolution& sol);

/// 2A/(pi E_b) * lambda * (2^S_u - 1) * R_b*^2 * Gamma(h_n*)
double optimal_recall_frequency(const Subregion& sub, const ServiceParams& params,
                                const KernelSolution& sol);

/// 2A/(pi E_b) * sqrt(lambda * (2^S_u - 1) * P_c * Gamma(h_n*)), the AM-GM
/// lower bound on recall_frequency over all radii.
double recall_frequency_lower_bound(const Subregion& sub, const ServiceParams& params,
                                    const KernelSolution& sol);

struct SubregionPlan {
  std::string label;
  std::string env_name;
  double area_m2 = 0.0;
  double density = 0.0;
  double h_n_star = 0.0;
  double gamma_at_opt = 0.0;
  double r_b_star = 0.0;
  double h_star = 0.0;
  double n_uav = 0.0;  // +inf for a degenerate (zero circuit power) plan
  double p_t = 0.0;    // transmit power from direct quadrature at (R_b*, h*)
  double p_s = 0.0;
  double t_h = 0.0;    // seconds; +inf when p_s = 0
  double phi = 0.0;    // N * P_s / E_b
  double phi_lower_bound = 0.0;
  double circuit_residual = 0.0;  // |P_t - P_c| / P_c
  bool degenerate = false;
};

struct PlacementPlan {
  std::vector<SubregionPlan> subregions;
  double phi_total = 0.0;
};

struct PlanConfig {
  BisectionConfig bisection;
  QuadratureConfig quad;
};

/// Memoizes optimal-altitude solutions per environment. Safe for concurrent
/// lookups; the first caller for an environment computes it.
class KernelCache {
 public:
  explicit KernelCache(PlanConfig cfg = {}) : cfg_(std::move(cfg)) {}

  KernelSolution get(const Environment& env);
  std::size_t size() const;

 private:
  using Key = std::tuple<std::string, double, double, double, double, double>;
  static Key key_of(const Environment& env);

  PlanConfig cfg_;
  mutable std::shared_mutex mutex_;
  std::map<Key, KernelSolution> solutions_;
};

SubregionPlan plan_subregion(const Subregion& sub, const ServiceParams& params,
                             const KernelSolution& sol, const QuadratureConfig& quad = {});

/// Plans every subregion independently and sums the recall frequencies.
/// Errors are rethrown with the offending subregion label as context.
PlacementPlan plan_area(std::span<const Subregion> subs, const ServiceParams& params,
                        const PlanConfig& cfg = {});

PlacementPlan plan_area(std::span<const Subregion> subs, const ServiceParams& params,
                        KernelCache& cache, const QuadratureConfig& quad = {});

}  // namespace uavplan
