#include "cli/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "cli/format.hpp"
#include "cli/scenario.hpp"
#include "uavplan/uavplan.hpp"

namespace uavplan::cli {

namespace {

using ojson = nlohmann::ordered_json;

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

PlanConfig plan_config(const Scenario& sc) {
  PlanConfig cfg;
  cfg.bisection.epsilon = sc.solver.epsilon;
  cfg.quad = quadrature_config(sc.solver.rel_tol);
  return cfg;
}

std::string fmt(double x) { return format_number(x); }

ojson calibration_json(const CalibrationReport& report) {
  const auto entry = [](const CalibrationEntry& e) {
    ojson j;
    j["convention"] = e.convention;
    j["r_b_star_m"] = json_number(e.r_b_star);
    j["ratio_to_reference"] = json_number(e.ratio);
    return j;
  };
  ojson j;
  j["environment"] = report.point.environment;
  j["density_per_m2"] = json_number(report.point.density);
  j["circuit_power_db"] = json_number(report.point.circuit_power_db);
  j["carrier_hz"] = json_number(report.point.carrier_hz);
  j["rate_su"] = json_number(report.point.rate_su);
  j["reference_r_b_m"] = json_number(report.point.reference_r_b);
  j["computed"] = entry(report.computed);
  j["status"] = report.confirmed ? "CONFIRMED" : "DISCREPANCY";
  j["discrepancy_factor"] = json_number(report.point.reference_r_b / report.computed.r_b_star);
  j["alternatives"] = ojson::array();
  for (const auto& alt : report.alternatives) j["alternatives"].push_back(entry(alt));
  return j;
}

void write_plan_json(const Scenario& sc, const PlacementPlan& plan,
                     const CalibrationReport& calibration, std::ostream& out) {
  ojson doc;
  doc["version"] = 1;
  doc["carrier_hz"] = json_number(sc.carrier_hz);
  ojson service;
  service["rate_su"] = json_number(sc.service.rate_su);
  service["circuit_power_db"] = json_number(sc.circuit_power_db);
  service["circuit_power"] = json_number(sc.service.circuit_power);
  service["battery_j"] = json_number(sc.service.battery_j);
  doc["service"] = service;
  doc["subregions"] = ojson::array();
  double n_total = 0.0;
  for (const auto& rec : plan.subregions) {
    ojson j;
    j["label"] = rec.label;
    j["environment"] = rec.env_name;
    j["area_m2"] = json_number(rec.area_m2);
    j["density_per_m2"] = json_number(rec.density);
    j["h_n_star"] = json_number(rec.h_n_star);
    j["gamma_at_opt"] = json_number(rec.gamma_at_opt);
    j["r_b_star_m"] = json_number(rec.r_b_star);
    j["h_star_m"] = json_number(rec.h_star);
    j["n_uav"] = json_number(rec.n_uav);
    j["n_uav_ceil_derived"] = json_number(std::ceil(rec.n_uav));
    j["p_t"] = json_number(rec.p_t);
    j["p_s"] = json_number(rec.p_s);
    j["t_h_s"] = json_number(rec.t_h);
    j["phi"] = json_number(rec.phi);
    j["phi_lower_bound"] = json_number(rec.phi_lower_bound);
    j["circuit_power_residual"] = json_number(rec.circuit_residual);
    j["degenerate"] = rec.degenerate;
    doc["subregions"].push_back(j);
    n_total += rec.n_uav;
  }
  ojson totals;
  totals["phi_total"] = json_number(plan.phi_total);
  totals["n_uav_total"] = json_number(n_total);
  doc["totals"] = totals;
  doc["calibration"] = calibration_json(calibration);
  out << doc.dump(2) << '\n';
}

void write_plan_csv(const PlacementPlan& plan, std::ostream& out) {
  write_csv_row(out, {"label", "environment", "h_n_star", "r_b_star", "h_star", "n_uav",
                      "n_uav_ceil", "p_t", "p_s", "t_h", "phi", "phi_lower_bound",
                      "circuit_power_residual"});
  for (const auto& r : plan.subregions) {
    write_csv_row(out, {r.label, r.env_name, fmt(r.h_n_star), fmt(r.r_b_star), fmt(r.h_star),
                        fmt(r.n_uav), fmt(std::ceil(r.n_uav)), fmt(r.p_t), fmt(r.p_s),
                        fmt(r.t_h), fmt(r.phi), fmt(r.phi_lower_bound),
                        fmt(r.circuit_residual)});
  }
}

void write_plan_table(const PlacementPlan& plan, const CalibrationReport& calibration,
                      std::ostream& out) {
  const std::vector<std::string> header{"label", "environment", "h_n*", "R_b* [m]", "h* [m]",
                                        "N",     "P_t [dB]",    "phi",  "phi bound"};
  std::vector<std::vector<std::string>> rows{header};
  for (const auto& r : plan.subregions) {
    rows.push_back({r.label, r.env_name, fmt(r.h_n_star), fmt(r.r_b_star), fmt(r.h_star),
                    fmt(r.n_uav), r.p_t > 0 ? fmt(linear_to_db(r.p_t)) : "-", fmt(r.phi),
                    fmt(r.phi_lower_bound)});
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << "  ";
      out << std::left << std::setw(static_cast<int>(width[c])) << row[c];
    }
    out << '\n';
  }
  out << "phi_total " << fmt(plan.phi_total) << '\n';
  out << "calibration " << calibration.point.environment << " R_b* "
      << fmt(calibration.computed.r_b_star) << " m vs reference "
      << fmt(calibration.point.reference_r_b) << " m: "
      << (calibration.confirmed ? "CONFIRMED" : "DISCREPANCY") << '\n';
}

const Subregion& pick_subregion(const Scenario& sc, const std::string& label) {
  if (label.empty()) return sc.subregions.front();
  for (const auto& sub : sc.subregions) {
    if (sub.label == label) return sub;
  }
  throw InputError("--subregion: no subregion labelled '" + label + "'");
}

std::vector<double> positive_radii(const std::string& text) {
  auto radii = parse_range(text, "--radii");
  if (!radii.empty() && radii.front() <= 0.0) throw InputError("--radii: radii must be > 0");
  return radii;
}

}  // namespace

int exit_code_for(const Error& error) {
  switch (error.kind()) {
    case ErrorKind::Domain:
    case ErrorKind::Input:
      return kExitInput;
    case ErrorKind::Quadrature:
    case ErrorKind::BracketFailure:
    case ErrorKind::DegenerateDensity:
      return kExitSolver;
    case ErrorKind::NoSolution:
      return kExitInfeasible;
  }
  return kExitInput;
}

QuadratureConfig quadrature_config(double rel_tol) {
  QuadratureConfig quad;
  quad.rel_tol = rel_tol;
  if (const char* env = std::getenv("UAVPLAN_QUAD_TOL"); env && *env) {
    const auto values = parse_number_list(env, "UAVPLAN_QUAD_TOL");
    if (values.size() != 1 || !(values[0] > 0.0)) {
      throw InputError("UAVPLAN_QUAD_TOL: expected one positive number");
    }
    quad.rel_tol = values[0];
  }
  return quad;
}

int run_plan(const PlanOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.format != "json" && opts.format != "csv" && opts.format != "table") {
      throw InputError("--format: expected json, csv or table");
    }
    const Scenario sc = load_scenario(opts.scenario);
    const PlanConfig cfg = plan_config(sc);
    const PlacementPlan plan = plan_area(sc.subregions, sc.service, cfg);
    const CalibrationReport calibration = calibrate({}, cfg);
    if (opts.format == "json") {
      write_plan_json(sc, plan, calibration, out);
    } else if (opts.format == "csv") {
      write_plan_csv(plan, out);
    } else {
      write_plan_table(plan, calibration, out);
    }
    return static_cast<int>(kExitOk);
  });
}

int run_kernel(const KernelOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Environment env = resolve_preset(opts.env, opts.carrier_hz);
    const auto grid = parse_range(opts.range, "--range");
    const QuadratureConfig quad = quadrature_config(1e-9);
    write_csv_row(out, {"h_n", "gamma", "dgamma_dhn"});
    for (double h : grid) {
      write_csv_row(out, {fmt(h), fmt(kernel_gamma(env, h, quad)),
                          fmt(kernel_gamma_derivative(env, h, quad))});
    }
    return static_cast<int>(kExitOk);
  });
}

int run_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.param != "pc_db" && opts.param != "density" && opts.param != "rate") {
      throw InputError("--param: unknown parameter '" + opts.param +
                       "' (expected pc_db, density or rate)");
    }
    const auto values = parse_number_list(opts.values, "--values");
    const Scenario sc = load_scenario(opts.scenario);
    const PlanConfig cfg = plan_config(sc);
    const Subregion& base = pick_subregion(sc, opts.subregion);
    const KernelSolution sol = optimal_normalized_altitude(base.env, cfg.bisection, cfg.quad);
    std::vector<double> fixed_radii;
    if (!opts.radii.empty()) fixed_radii = positive_radii(opts.radii);

    std::ostringstream locus;
    write_csv_row(locus, {"param_value", "r_b_star", "phi_star"});
    write_csv_row(out, {"param_value", "r_b", "phi"});
    for (double v : values) {
      Subregion sub = base;
      ServiceParams params = sc.service;
      if (opts.param == "pc_db") {
        params.circuit_power = db_to_linear(v);
      } else if (opts.param == "density") {
        if (!(v >= 0.0)) throw InputError("--values: densities must be >= 0");
        sub.density = v;
      } else {
        if (!(v > 0.0)) throw InputError("--values: rates must be > 0");
        params.rate_su = v;
      }
      const double r_star = optimal_radius(sub, params, sol);
      std::vector<double> radii = fixed_radii;
      if (radii.empty()) {
        if (!(r_star > 0.0)) throw InputError("--radii: required when the optimum radius is 0");
        radii = GridSpec{0.01 * r_star, 100.0 * r_star, 401, true}.values();
      }
      for (double r : radii) {
        write_csv_row(out, {fmt(v), fmt(r), fmt(recall_frequency(sub, r, params, sol))});
      }
      write_csv_row(locus, {fmt(v), fmt(r_star), fmt(optimal_recall_frequency(sub, params, sol))});
    }
    if (!opts.locus_output.empty()) {
      std::ofstream file(opts.locus_output, std::ios::binary);
      if (!file) throw InputError("cannot write '" + opts.locus_output + "'");
      file << locus.str();
    }
    return static_cast<int>(kExitOk);
  });
}

int run_contour(const ContourOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Environment env = resolve_preset(opts.env, opts.carrier_hz);
    if (!(opts.density > 0.0)) throw InputError("--density: must be > 0");
    if (!(opts.rate_su > 0.0)) throw InputError("--rate: must be > 0");
    if (opts.radii.empty()) throw InputError("--radii: required");
    const auto radii = positive_radii(opts.radii);
    const QuadratureConfig quad = quadrature_config(1e-9);
    const KernelSolution sol = optimal_normalized_altitude(env, {}, quad);
    ServiceParams params;
    params.rate_su = opts.rate_su;
    const auto curve =
        iso_power_altitude_curve(env, sol, opts.power_db, opts.density, params, radii, quad);
    if (curve.empty()) {
      throw NoSolution("no radius in the grid is feasible at " + fmt(opts.power_db) + " dB");
    }
    write_csv_row(out, {"r_b", "h_low", "h_high", "h_opt"});
    for (const auto& p : curve) {
      // A missing low root means the constant-power curve reaches the ground.
      write_csv_row(out, {fmt(p.r_b), fmt(p.h_low.value_or(0.0)), fmt(p.h_high), fmt(p.h_opt)});
    }
    return static_cast<int>(kExitOk);
  });
}

int run_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario sc = load_scenario(opts.scenario);
    SimConfig sim;
    sim.trials = opts.trials.value_or(sc.solver.trials);
    sim.seed = opts.seed.value_or(sc.solver.seed);
    if (sim.trials < 1) throw InputError("--trials: must be >= 1");
    const PlanConfig cfg = plan_config(sc);
    KernelCache cache(cfg);
    const PlacementPlan plan = plan_area(sc.subregions, sc.service, cache, cfg.quad);

    ojson doc;
    doc["version"] = 1;
    doc["trials"] = sim.trials;
    doc["seed"] = sim.seed;
    doc["z_threshold"] = 3;
    doc["subregions"] = ojson::array();
    bool all_pass = true;
    for (std::size_t i = 0; i < sc.subregions.size(); ++i) {
      const Subregion& sub = sc.subregions[i];
      const SubregionPlan& rec = plan.subregions[i];
      ojson j;
      j["label"] = sub.label;
      j["r_b_star_m"] = json_number(rec.r_b_star);
      j["h_star_m"] = json_number(rec.h_star);
      if (rec.degenerate) {
        j["status"] = "skipped: zero coverage radius";
        doc["subregions"].push_back(j);
        continue;
      }
      SimConfig sub_sim = sim;
      sub_sim.seed = sim.seed + i;
      const SimResult res =
          empirical_recall_frequency(sub, rec.r_b_star, sc.service, cache.get(sub.env), sub_sim);
      const double diff = res.mean_pt - rec.p_t;
      const double z = res.stderr_pt > 0.0 ? diff / res.stderr_pt : (diff == 0.0 ? 0.0 : INFINITY);
      const bool pass = std::abs(z) <= 3.0;
      all_pass = all_pass && pass;
      j["analytic_p_t"] = json_number(rec.p_t);
      j["empirical_mean_p_t"] = json_number(res.mean_pt);
      j["stderr_p_t"] = json_number(res.stderr_pt);
      j["z_score"] = json_number(z);
      j["expected_users"] = json_number(sub.density * kPi * rec.r_b_star * rec.r_b_star);
      j["mean_users"] = json_number(res.mean_users);
      j["analytic_phi"] = json_number(rec.phi);
      j["empirical_phi"] = json_number(res.empirical_phi);
      j["stderr_phi"] = json_number(res.stderr_phi);
      j["status"] = pass ? "pass" : "fail";
      doc["subregions"].push_back(j);
    }
    doc["all_pass"] = all_pass;
    out << doc.dump(2) << '\n';
    return static_cast<int>(all_pass ? kExitOk : kExitValidation);
  });
}

int run_layout(const LayoutOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario sc = load_scenario(opts.scenario);
    if (!sc.has_geometry) throw InputError("geometry: block required for layout");
    const PlanConfig cfg = plan_config(sc);
    const PlacementPlan plan = plan_area(sc.subregions, sc.service, cfg);
    write_csv_row(out, {"label", "cx", "cy", "r_b", "h"});
    for (const auto& rec : plan.subregions) {
      const auto it = sc.geometry.find(rec.label);
      if (it == sc.geometry.end()) {
        err << "layout: " << rec.label << ": no rectangle, skipped\n";
        continue;
      }
      if (rec.degenerate) {
        err << "layout: " << rec.label << ": zero coverage radius, skipped\n";
        continue;
      }
      const Rect& box = it->second;
      const double r = rec.r_b_star;
      const double row_pitch = std::sqrt(3.0) * r;
      std::size_t count = 0;
      // Hexagonal lattice, neighbour distance 2 R_b*, half-open clip.
      for (std::size_t j = 0;; ++j) {
        const double y = box.y_min + 0.5 * row_pitch + static_cast<double>(j) * row_pitch;
        if (!(y < box.y_max)) break;
        const double shift = (j % 2) ? 2.0 * r : r;
        for (std::size_t i = 0;; ++i) {
          const double x = box.x_min + shift + 2.0 * r * static_cast<double>(i);
          if (!(x < box.x_max)) break;
          write_csv_row(out, {rec.label, fmt(x), fmt(y), fmt(r), fmt(rec.h_star)});
          ++count;
        }
      }
      const double area = (box.x_max - box.x_min) * (box.y_max - box.y_min);
      const double n_ratio = area > 0.0 ? area / (kPi * r * r) : 0.0;
      err << "layout: " << rec.label << ": " << count << " lattice disks vs " << fmt(n_ratio)
          << " from area/(pi R^2); a hexagonal cell is 2*sqrt(3) R^2, so the lattice holds "
             "about pi/(2 sqrt 3) = 0.907 of the ratio count\n";
    }
    return static_cast<int>(kExitOk);
  });
}

}  // namespace uavplan::cli
