#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "uavplan/errors.hpp"
#include "uavplan/quadrature.hpp"

namespace uavplan::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 2,
  kExitSolver = 3,
  kExitInfeasible = 4,
  kExitValidation = 5,
};

int exit_code_for(const Error& error);

/// Quadrature settings with UAVPLAN_QUAD_TOL applied when set.
QuadratureConfig quadrature_config(double rel_tol);

struct PlanOptions {
  std::string scenario;
  std::string format = "json";  // json | csv | table
};

struct KernelOptions {
  std::string env = "urban";
  std::string range = "0:2:0.01";
  double carrier_hz = 2.4e9;
};

struct SweepOptions {
  std::string scenario;
  std::string param;        // pc_db | density | rate
  std::string values;       // comma-separated
  std::string radii;        // start:stop:step; empty: geometric grid around each optimum
  std::string subregion;    // empty: first subregion
  std::string locus_output; // companion optimum CSV; empty: not written
};

struct ContourOptions {
  std::string env = "urban";
  double power_db = 0.0;
  std::string radii;
  double density = 0.1;
  double rate_su = 1.0;
  double carrier_hz = 2.4e9;
};

struct SimulateOptions {
  std::string scenario;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
};

struct LayoutOptions {
  std::string scenario;
};

// Each command writes its report to `out`, diagnostics to `err`, and
// returns the process exit code. Errors never escape as exceptions.
int run_plan(const PlanOptions& opts, std::ostream& out, std::ostream& err);
int run_kernel(const KernelOptions& opts, std::ostream& out, std::ostream& err);
int run_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);
int run_contour(const ContourOptions& opts, std::ostream& out, std::ostream& err);
int run_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);
int run_layout(const LayoutOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace uavplan::cli
