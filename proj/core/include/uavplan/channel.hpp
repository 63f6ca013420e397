#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uavplan {

inline constexpr double kDefaultCarrierHz = 2.4e9;

/// Air-to-ground propagation environment.
///
/// `a` and `b` shape the LOS-probability sigmoid in the elevation angle
/// (degrees). The excess losses are stored in dB and converted to linear
/// ratios on use.
struct Environment {
  std::string name;
  double a = 0.0;
  double b = 0.0;
  double eta_los_db = 0.0;
  double eta_nlos_db = 0.0;
  double carrier_hz = kDefaultCarrierHz;

  double eta_los() const;
  double eta_nlos() const;
  /// (4*pi*f_c/c)^2, the free-space factor multiplying d^2.
  double fspl_constant() const;

  bool operator==(const Environment&) const = default;
};

/// Validates and builds an environment. Requires a > 0, b > 0, carrier > 0
/// and eta_nlos_db >= eta_los_db. Throws DomainError otherwise.
Environment make_environment(std::string name, double a, double b, double eta_los_db,
                             double eta_nlos_db, double carrier_hz = kDefaultCarrierHz);

/// Maps "Dense Urban", "dense_urban", "DENSE-URBAN" ... to "dense-urban".
/// Returns nullopt for names that are not presets.
std::optional<std::string> canonical_preset_name(std::string_view name);

/// Looks up one of the four built-in environments by (loosely spelled) name.
std::optional<Environment> preset(std::string_view name, double carrier_hz = kDefaultCarrierHz);

/// All presets in order of increasing scattering.
std::vector<Environment> all_presets(double carrier_hz = kDefaultCarrierHz);

/// Ground distance r_u from the user to the UAV's ground projection and the
/// hovering altitude h, both in meters.
struct LinkGeometry {
  double r_u = 0.0;
  double h = 0.0;

  double distance() const;
};

enum class Link { Los, Nlos };

/// Elevation angle in degrees; 90 when the user is directly below the UAV.
double elevation_deg(const LinkGeometry& geom);

/// a * exp(-b (theta - a)), the NLOS-to-LOS odds. P_los = 1 / (1 + odds).
/// Throws DomainError when r_u = h = 0.
double nlos_odds(const Environment& env, const LinkGeometry& geom);

double los_probability(const Environment& env, const LinkGeometry& geom);

/// d P_los / d h at fixed r_u, per meter. Nonnegative.
double los_probability_altitude_derivative(const Environment& env, const LinkGeometry& geom);

/// Linear path loss of one link state: FSPL * d^2 * eta.
double path_loss(const Environment& env, const LinkGeometry& geom, Link link);

/// eta_nlos + P_los * (eta_los - eta_nlos), evaluated through the odds so it
/// keeps full precision when eta_nlos >> eta_los and P_los is close to 1.
double average_excess_loss(const Environment& env, const LinkGeometry& geom);

/// LOS/NLOS average: FSPL * d^2 * average_excess_loss.
double average_path_loss(const Environment& env, const LinkGeometry& geom);

}  // namespace uavplan
