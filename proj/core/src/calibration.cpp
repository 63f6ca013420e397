#include "uavplan/calibration.hpp"

#include <cmath>

#include "uavplan/units.hpp"

namespace uavplan {

namespace {

CalibrationEntry entry(std::string convention, const Environment& env, double gamma_scale,
                       const CalibrationPoint& point, const PlanConfig& cfg) {
  KernelSolution sol = optimal_normalized_altitude(env, cfg.bisection, cfg.quad);
  sol.gamma_at_opt *= gamma_scale;
  const Subregion sub{"calibration", 1.0, point.density, env};
  const ServiceParams params{point.rate_su, db_to_linear(point.circuit_power_db), 1.0};
  CalibrationEntry out;
  out.convention = std::move(convention);
  out.r_b_star = optimal_radius(sub, params, sol);
  out.ratio = out.r_b_star / point.reference_r_b;
  return out;
}

}  // namespace

CalibrationReport calibrate(const CalibrationPoint& point, const PlanConfig& cfg) {
  CalibrationReport report;
  report.point = point;
  const Environment env_db = *preset(point.environment, point.carrier_hz);
  // Same table values read as linear ratios.
  const Environment env_linear =
      make_environment(env_db.name, env_db.a, env_db.b, linear_to_db(env_db.eta_los_db),
                       linear_to_db(env_db.eta_nlos_db), env_db.carrier_hz);
  const double no_fspl = 1.0 / env_db.fspl_constant();

  report.computed = entry("eta_db+fspl", env_db, 1.0, point, cfg);
  report.confirmed = std::abs(report.computed.ratio - 1.0) <= 0.01;
  report.alternatives.push_back(entry("eta_db+no_fspl", env_db, no_fspl, point, cfg));
  report.alternatives.push_back(entry("eta_linear+fspl", env_linear, 1.0, point, cfg));
  report.alternatives.push_back(entry("eta_linear+no_fspl", env_linear, no_fspl, point, cfg));
  return report;
}

}  // namespace uavplan
