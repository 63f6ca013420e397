#include "uavplan/channel.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <sstream>

#include "uavplan/errors.hpp"
#include "uavplan/units.hpp"

namespace uavplan {

namespace {

struct PresetRow {
  const char* name;
  double a;
  double b;
  double eta_los_db;
  double eta_nlos_db;
};

constexpr std::array<PresetRow, 4> kPresets{{
    {"suburban", 4.88, 0.43, 0.1, 21.0},
    {"urban", 9.61, 0.16, 1.0, 20.0},
    {"dense-urban", 12.08, 0.11, 1.6, 23.0},
    {"high-rise-urban", 27.23, 0.08, 2.3, 34.0},
}};

void require_link(const LinkGeometry& geom, const char* what) {
  if (!(geom.r_u >= 0.0) || !(geom.h >= 0.0)) {
    std::ostringstream os;
    os << what << ": negative geometry (r_u=" << geom.r_u << ", h=" << geom.h << ")";
    throw DomainError(os.str());
  }
  if (geom.r_u == 0.0 && geom.h == 0.0) {
    throw DomainError(std::string(what) + ": r_u = h = 0, link undefined");
  }
}

}  // namespace

double Environment::eta_los() const { return db_to_linear(eta_los_db); }
double Environment::eta_nlos() const { return db_to_linear(eta_nlos_db); }

double Environment::fspl_constant() const {
  const double k = 4.0 * kPi * carrier_hz / kSpeedOfLight;
  return k * k;
}

Environment make_environment(std::string name, double a, double b, double eta_los_db,
                             double eta_nlos_db, double carrier_hz) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("environment '" + name + "': a and b must be positive");
  }
  if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz)) {
    throw DomainError("environment '" + name + "': carrier frequency must be positive");
  }
  if (!std::isfinite(eta_los_db) || !std::isfinite(eta_nlos_db)) {
    throw DomainError("environment '" + name + "': excess losses must be finite");
  }
  if (eta_nlos_db < eta_los_db) {
    throw DomainError("environment '" + name + "': NLOS excess loss below LOS excess loss");
  }
  return Environment{std::move(name), a, b, eta_los_db, eta_nlos_db, carrier_hz};
}

std::optional<std::string> canonical_preset_name(std::string_view name) {
  std::string key;
  key.reserve(name.size());
  for (char c : name) {
    if (c == '_' || c == ' ' || c == '-') {
      key.push_back('-');
    } else {
      key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  for (const auto& row : kPresets) {
    if (key == row.name) return std::string(row.name);
  }
  return std::nullopt;
}

std::optional<Environment> preset(std::string_view name, double carrier_hz) {
  const auto canonical = canonical_preset_name(name);
  if (!canonical) return std::nullopt;
  const auto it = std::find_if(kPresets.begin(), kPresets.end(),
                               [&](const PresetRow& row) { return *canonical == row.name; });
  return make_environment(it->name, it->a, it->b, it->eta_los_db, it->eta_nlos_db, carrier_hz);
}

std::vector<Environment> all_presets(double carrier_hz) {
  std::vector<Environment> out;
  for (const auto& row : kPresets) {
    out.push_back(
        make_environment(row.name, row.a, row.b, row.eta_los_db, row.eta_nlos_db, carrier_hz));
  }
  return out;
}

double LinkGeometry::distance() const { return std::hypot(r_u, h); }

double elevation_deg(const LinkGeometry& geom) {
  if (geom.r_u == 0.0) return 90.0;
  return kDegPerRad * std::atan(geom.h / geom.r_u);
}

double nlos_odds(const Environment& env, const LinkGeometry& geom) {
  require_link(geom, "nlos_odds");
  const double theta = elevation_deg(geom);
  return env.a * std::exp(-env.b * (theta - env.a));
}

double los_probability(const Environment& env, const LinkGeometry& geom) {
  return 1.0 / (1.0 + nlos_odds(env, geom));
}

double los_probability_altitude_derivative(const Environment& env, const LinkGeometry& geom) {
  const double q = nlos_odds(env, geom);
  if (geom.r_u == 0.0) return 0.0;
  const double d2 = geom.r_u * geom.r_u + geom.h * geom.h;
  // P (1 - P) = q / (1 + q)^2 = 1 / (q + 2 + 1/q)
  const double p_q = q == 0.0 ? 0.0 : 1.0 / (q + 2.0 + 1.0 / q);
  return kDegPerRad * env.b * geom.r_u * p_q / d2;
}

double average_excess_loss(const Environment& env, const LinkGeometry& geom) {
  const double q = nlos_odds(env, geom);
  if (q > 1.0) {
    const double p = 1.0 / q;
    return (env.eta_nlos() + env.eta_los() * p) / (1.0 + p);
  }
  return (env.eta_nlos() * q + env.eta_los()) / (1.0 + q);
}

double path_loss(const Environment& env, const LinkGeometry& geom, Link link) {
  require_link(geom, "path_loss");
  const double d2 = geom.r_u * geom.r_u + geom.h * geom.h;
  const double eta = link == Link::Los ? env.eta_los() : env.eta_nlos();
  return env.fspl_constant() * d2 * eta;
}

double average_path_loss(const Environment& env, const LinkGeometry& geom) {
  const double excess = average_excess_loss(env, geom);
  const double d2 = geom.r_u * geom.r_u + geom.h * geom.h;
  return env.fspl_constant() * d2 * excess;
}

}  // namespace uavplan
