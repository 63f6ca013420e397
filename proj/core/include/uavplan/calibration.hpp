#pragma once

#include <string>
#include <vector>

#include "uavplan/placement.hpp"

namespace uavplan {

/// Reference operating point used to check absolute units: urban, 0.1
/// users/m^2, circuit power 100 dB, 2.4 GHz, 1 bit/s/Hz.
struct CalibrationPoint {
  std::string environment = "urban";
  double density = 0.1;
  double circuit_power_db = 100.0;
  double carrier_hz = 2.4e9;
  double rate_su = 1.0;
  double reference_r_b = 327.3;
};

struct CalibrationEntry {
  std::string convention;
  double r_b_star = 0.0;
  double ratio = 0.0;  // r_b_star / reference
};

/// Absolute-radius comparison. `computed` uses the planner's own convention
/// (excess losses in dB, free-space constant included); `alternatives`
/// re-evaluate the same point under the other readings of the units.
struct CalibrationReport {
  CalibrationPoint point;
  CalibrationEntry computed;
  bool confirmed = false;  // within 1% of the reference
  std::vector<CalibrationEntry> alternatives;
};

CalibrationReport calibrate(const CalibrationPoint& point = {}, const PlanConfig& cfg = {});

}  // namespace uavplan
