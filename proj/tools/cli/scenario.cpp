#include "cli/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "uavplan/errors.hpp"
#include "uavplan/units.hpp"

namespace uavplan::cli {

namespace {

using nlohmann::json;

const json& require_field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) throw InputError(path + "." + key + ": missing");
  return obj.at(key);
}

double number_at(const json& value, const std::string& path) {
  if (!value.is_number()) throw InputError(path + ": expected a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) throw InputError(path + ": must be finite");
  return x;
}

double positive(double x, const std::string& path) {
  if (!(x > 0.0)) throw InputError(path + ": must be > 0");
  return x;
}

double nonnegative(double x, const std::string& path) {
  if (!(x >= 0.0)) throw InputError(path + ": must be >= 0");
  return x;
}

std::uint64_t unsigned_at(const json& value, const std::string& path) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
    throw InputError(path + ": expected a nonnegative integer");
  }
  return value.get<std::uint64_t>();
}

std::string string_at(const json& value, const std::string& path) {
  if (!value.is_string()) throw InputError(path + ": expected a string");
  return value.get<std::string>();
}

}  // namespace

Environment resolve_preset(const std::string& name, double carrier_hz) {
  auto env = preset(name, carrier_hz);
  if (!env) throw InputError("--env: unknown environment '" + name + "'");
  return *env;
}

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) throw InputError("scenario: top level must be an object");
  Scenario sc;

  const json& version = require_field(doc, "version", "scenario");
  if (!version.is_number_integer() || version.get<int>() != 1) {
    throw InputError("scenario.version: only version 1 is supported");
  }
  if (doc.contains("carrier_hz")) {
    sc.carrier_hz = positive(number_at(doc["carrier_hz"], "carrier_hz"), "carrier_hz");
  }

  std::map<std::string, Environment> custom;
  if (doc.contains("environments")) {
    const json& envs = doc["environments"];
    if (!envs.is_object()) throw InputError("environments: expected an object");
    for (const auto& [name, spec] : envs.items()) {
      const std::string path = "environments." + name;
      const double a = number_at(require_field(spec, "a", path), path + ".a");
      const double b = number_at(require_field(spec, "b", path), path + ".b");
      const double e0 = number_at(require_field(spec, "eta_los_db", path), path + ".eta_los_db");
      const double e1 =
          number_at(require_field(spec, "eta_nlos_db", path), path + ".eta_nlos_db");
      try {
        custom.emplace(name, make_environment(name, a, b, e0, e1, sc.carrier_hz));
      } catch (const DomainError& e) {
        throw InputError(path + ": " + e.message());
      }
    }
  }

  const json& service = require_field(doc, "service", "scenario");
  sc.service.rate_su =
      positive(number_at(require_field(service, "rate_su", "service"), "service.rate_su"),
               "service.rate_su");
  const json& pc = require_field(service, "circuit_power_db", "service");
  if (pc.is_null()) {
    // Explicit null: zero circuit power (the degenerate plan).
    sc.zero_circuit_power = true;
    sc.circuit_power_db = -std::numeric_limits<double>::infinity();
    sc.service.circuit_power = 0.0;
  } else {
    sc.circuit_power_db = number_at(pc, "service.circuit_power_db");
    sc.service.circuit_power = db_to_linear(sc.circuit_power_db);
  }
  const bool has_battery = service.contains("battery_j");
  if (has_battery) {
    sc.service.battery_j =
        positive(number_at(service["battery_j"], "service.battery_j"), "service.battery_j");
  }

  const json& subs = require_field(doc, "subregions", "scenario");
  if (!subs.is_array()) throw InputError("subregions: expected an array");
  if (subs.empty()) throw InputError("subregions: at least one subregion is required");
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const std::string path = "subregions[" + std::to_string(i) + "]";
    const json& s = subs[i];
    if (!s.is_object()) throw InputError(path + ": expected an object");
    Subregion sub;
    sub.label = string_at(require_field(s, "label", path), path + ".label");
    for (const auto& other : sc.subregions) {
      if (other.label == sub.label) throw InputError(path + ".label: duplicate '" + sub.label + "'");
    }
    sub.density = nonnegative(
        number_at(require_field(s, "density_per_m2", path), path + ".density_per_m2"),
        path + ".density_per_m2");
    const std::string env_name =
        string_at(require_field(s, "environment", path), path + ".environment");
    if (auto it = custom.find(env_name); it != custom.end()) {
      sub.env = it->second;
    } else if (auto p = preset(env_name, sc.carrier_hz)) {
      sub.env = *p;
    } else {
      throw InputError(path + ".environment: unknown environment '" + env_name + "'");
    }
    const bool has_area = s.contains("area_m2");
    const bool has_ratio = s.contains("area_over_pi_eb");
    if (has_area == has_ratio) {
      throw InputError(path + ": give exactly one of area_m2 or area_over_pi_eb");
    }
    if (has_area) {
      if (!has_battery) throw InputError("service.battery_j: required when area_m2 is used");
      sub.area_m2 = positive(number_at(s["area_m2"], path + ".area_m2"), path + ".area_m2");
    } else {
      const double k = positive(number_at(s["area_over_pi_eb"], path + ".area_over_pi_eb"),
                                path + ".area_over_pi_eb");
      sub.area_m2 = kPi * k * sc.service.battery_j;
    }
    sc.subregions.push_back(std::move(sub));
  }

  if (doc.contains("solver")) {
    const json& solver = doc["solver"];
    if (!solver.is_object()) throw InputError("solver: expected an object");
    if (solver.contains("epsilon")) {
      sc.solver.epsilon = positive(number_at(solver["epsilon"], "solver.epsilon"), "solver.epsilon");
    }
    if (solver.contains("rel_tol")) {
      sc.solver.rel_tol = positive(number_at(solver["rel_tol"], "solver.rel_tol"), "solver.rel_tol");
    }
    if (solver.contains("trials")) {
      sc.solver.trials = unsigned_at(solver["trials"], "solver.trials");
      if (sc.solver.trials < 1) throw InputError("solver.trials: must be >= 1");
    }
    if (solver.contains("seed")) sc.solver.seed = unsigned_at(solver["seed"], "solver.seed");
  }

  if (doc.contains("geometry")) {
    const json& geo = doc["geometry"];
    if (!geo.is_object()) throw InputError("geometry: expected an object");
    sc.has_geometry = true;
    for (const auto& [label, box] : geo.items()) {
      const std::string path = "geometry." + label;
      Rect r;
      r.x_min = number_at(require_field(box, "x_min", path), path + ".x_min");
      r.y_min = number_at(require_field(box, "y_min", path), path + ".y_min");
      r.x_max = number_at(require_field(box, "x_max", path), path + ".x_max");
      r.y_max = number_at(require_field(box, "y_max", path), path + ".y_max");
      if (r.x_max < r.x_min || r.y_max < r.y_min) throw InputError(path + ": inverted rectangle");
      bool known = false;
      for (const auto& sub : sc.subregions) known = known || sub.label == label;
      if (!known) throw InputError(path + ": no subregion labelled '" + label + "'");
      sc.geometry.emplace(label, r);
    }
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw InputError("scenario '" + path + "': " + e.what());
  }
  return parse_scenario(doc);
}

}  // namespace uavplan::cli
