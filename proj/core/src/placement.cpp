#include "uavplan/placement.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <mutex>

#include "uavplan/errors.hpp"
#include "uavplan/units.hpp"

namespace uavplan {

namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be finite and > 0");
  }
}

void check_subregion(const Subregion& sub) {
  require_positive(sub.area_m2, "area_m2");
  if (!(sub.density >= 0.0) || !std::isfinite(sub.density)) {
    throw DomainError("density must be finite and >= 0");
  }
}

// A / (pi E_b), the prefactor shared by every recall-frequency form.
double area_prefactor(const Subregion& sub, const ServiceParams& params) {
  return sub.area_m2 / (kPi * params.battery_j);
}

}  // namespace

double uav_count(double area_m2, double r_b) {
  require_positive(area_m2, "area_m2");
  require_positive(r_b, "r_b");
  return area_m2 / (kPi * r_b * r_b);
}

double recall_frequency(const Subregion& sub, double r_b, const ServiceParams& params,
                        const KernelSolution& sol) {
  check_subregion(sub);
  require_positive(r_b, "r_b");
  const double r2 = r_b * r_b;
  const double transmit = sub.density * params.rate_factor() * sol.gamma_at_opt * r2;
  return area_prefactor(sub, params) * (transmit + params.circuit_power / r2);
}

double optimal_radius(const Subregion& sub, const ServiceParams& params,
                      const KernelSolution& sol) {
  check_subregion(sub);
  if (params.circuit_power == 0.0) return 0.0;
  const double traffic = sub.density * params.rate_factor() * sol.gamma_at_opt;
  if (!(traffic > 0.0)) {
    throw DegenerateDensity("zero traffic with positive circuit power: optimal radius unbounded");
  }
  return std::pow(params.circuit_power / traffic, 0.25);
}

double optimal_recall_frequency(const Subregion& sub, const ServiceParams& params,
                                const KernelSolution& sol) {
  const double r = optimal_radius(sub, params, sol);
  return 2.0 * area_prefactor(sub, params) * sub.density * params.rate_factor() * r * r *
         sol.gamma_at_opt;
}

double recall_frequency_lower_bound(const Subregion& sub, const ServiceParams& params,
                                    const KernelSolution& sol) {
  check_subregion(sub);
  return 2.0 * area_prefactor(sub, params) *
         std::sqrt(sub.density * params.rate_factor() * params.circuit_power * sol.gamma_at_opt);
}

KernelCache::Key KernelCache::key_of(const Environment& env) {
  return {env.name, env.a, env.b, env.eta_los_db, env.eta_nlos_db, env.carrier_hz};
}

KernelSolution KernelCache::get(const Environment& env) {
  const Key key = key_of(env);
  {
    std::shared_lock lock(mutex_);
    if (auto it = solutions_.find(key); it != solutions_.end()) return it->second;
  }
  // Solved outside the lock; the solver is deterministic so a racing
  // duplicate computes the same value.
  KernelSolution sol = optimal_normalized_altitude(env, cfg_.bisection, cfg_.quad);
  std::unique_lock lock(mutex_);
  return solutions_.try_emplace(key, std::move(sol)).first->second;
}

std::size_t KernelCache::size() const {
  std::shared_lock lock(mutex_);
  return solutions_.size();
}

SubregionPlan plan_subregion(const Subregion& sub, const ServiceParams& params,
                             const KernelSolution& sol, const QuadratureConfig& quad) {
  check_subregion(sub);
  params.validate();
  SubregionPlan rec;
  rec.label = sub.label;
  rec.env_name = sub.env.name;
  rec.area_m2 = sub.area_m2;
  rec.density = sub.density;
  rec.h_n_star = sol.h_n_star;
  rec.gamma_at_opt = sol.gamma_at_opt;
  rec.r_b_star = optimal_radius(sub, params, sol);
  rec.h_star = optimal_altitude_for_radius(sol, rec.r_b_star);
  rec.phi_lower_bound = recall_frequency_lower_bound(sub, params, sol);

  if (rec.r_b_star == 0.0) {
    // Zero circuit power: every user is served from directly overhead.
    constexpr double inf = std::numeric_limits<double>::infinity();
    rec.degenerate = true;
    rec.n_uav = inf;
    rec.t_h = inf;
    return rec;
  }

  rec.n_uav = uav_count(sub.area_m2, rec.r_b_star);
  rec.p_t = total_transmit_power(sub.env, rec.r_b_star, sub.density, rec.h_star, params, quad);
  rec.p_s = rec.p_t + params.circuit_power;
  rec.t_h = params.battery_j / rec.p_s;
  rec.phi = rec.n_uav * rec.p_s / params.battery_j;
  rec.circuit_residual = std::abs(rec.p_t - params.circuit_power) / params.circuit_power;
  return rec;
}

PlacementPlan plan_area(std::span<const Subregion> subs, const ServiceParams& params,
                        KernelCache& cache, const QuadratureConfig& quad) {
  if (subs.empty()) throw InputError("plan_area: no subregions");

  // Solve each environment once, concurrently, before assembling records in order.
  std::vector<std::future<void>> pending;
  std::vector<std::string> seen;
  for (const auto& sub : subs) {
    if (std::find(seen.begin(), seen.end(), sub.env.name) != seen.end()) continue;
    seen.push_back(sub.env.name);
    pending.push_back(std::async(std::launch::async, [&cache, &sub] {
      try {
        cache.get(sub.env);
      } catch (Error& e) {
        e.set_context(sub.label);
        throw;
      }
    }));
  }
  for (auto& f : pending) f.get();

  PlacementPlan plan;
  for (const auto& sub : subs) {
    try {
      plan.subregions.push_back(plan_subregion(sub, params, cache.get(sub.env), quad));
    } catch (Error& e) {
      e.set_context(sub.label);
      throw;
    }
  }
  // Summed in sorted order so the total does not depend on subregion order.
  std::vector<double> phis;
  for (const auto& rec : plan.subregions) phis.push_back(rec.phi);
  std::sort(phis.begin(), phis.end());
  for (double phi : phis) plan.phi_total += phi;
  return plan;
}

PlacementPlan plan_area(std::span<const Subregion> subs, const ServiceParams& params,
                        const PlanConfig& cfg) {
  KernelCache cache(cfg);
  return plan_area(subs, params, cache, cfg.quad);
}

}  // namespace uavplan
