#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "uavplan/channel.hpp"
#include "uavplan/placement.hpp"
#include "uavplan/power.hpp"

namespace uavplan::cli {

/// Axis-aligned subregion bounds in meters, used by `layout`.
struct Rect {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;
};

struct SolverSettings {
  double epsilon = 1e-3;
  double rel_tol = 1e-9;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 42;
};

/// Parsed and validated scenario file (JSON, `"version": 1`).
///
///   {
///     "version": 1,
///     "carrier_hz": 2.4e9,
///     "environments": {"name": {"a":..,"b":..,"eta_los_db":..,"eta_nlos_db":..}},
///     "service": {"rate_su": 1, "circuit_power_db": 100, "battery_j": 1},
///     "subregions": [{"label": "A", "area_m2": 1e6 | "area_over_pi_eb": 1,
///                     "density_per_m2": 0.1, "environment": "urban"}],
///     "solver": {"epsilon": 1e-3, "rel_tol": 1e-9, "trials": 10000, "seed": 42},
///     "geometry": {"A": {"x_min": 0, "y_min": 0, "x_max": 1000, "y_max": 1000}}
///   }
///
/// When a subregion gives area_over_pi_eb = A/(pi E_b), its area is stored
/// as pi * value * E_b. battery_j defaults to 1 J only if every subregion
/// uses that form.
struct Scenario {
  double carrier_hz = kDefaultCarrierHz;
  std::vector<Subregion> subregions;
  ServiceParams service;
  double circuit_power_db = 0.0;
  bool zero_circuit_power = false;
  SolverSettings solver;
  std::map<std::string, Rect> geometry;
  bool has_geometry = false;
};

/// Throws InputError naming the offending field.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::string& path);

/// Resolves a preset name for flags such as --env. Throws InputError.
Environment resolve_preset(const std::string& name, double carrier_hz);

}  // namespace uavplan::cli
