#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli/commands.hpp"

namespace {

using namespace uavplan::cli;

// Runs a command into a buffer, then writes it to --output or stdout.
template <class Fn>
int emit(const std::string& output, Fn&& fn) {
  std::ostringstream buffer;
  const int code = fn(buffer);
  if (output.empty()) {
    std::cout << buffer.str();
    return code;
  }
  std::ofstream file(output, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot write '" << output << "'\n";
    return kExitInput;
  }
  file << buffer.str();
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-optimal 3D placement planner for UAV-mounted base stations"};
  app.require_subcommand(1);
  std::string output;

  PlanOptions plan;
  auto* plan_cmd = app.add_subcommand("plan", "Optimal radius, altitude and recall frequency per subregion");
  plan_cmd->add_option("scenario", plan.scenario, "Scenario JSON file")->required();
  plan_cmd->add_option("--format", plan.format, "json | csv | table")->capture_default_str();
  plan_cmd->add_option("--output", output, "Write the report to this file");

  KernelOptions kernel;
  auto* kernel_cmd = app.add_subcommand("kernel", "Tabulate the transmit-power kernel and its derivative");
  kernel_cmd->add_option("--env", kernel.env, "Environment preset")->capture_default_str();
  kernel_cmd->add_option("--range", kernel.range, "start:stop:step over h_n")->capture_default_str();
  kernel_cmd->add_option("--carrier-hz", kernel.carrier_hz, "Carrier frequency")->capture_default_str();
  kernel_cmd->add_option("--output", output, "Write the CSV to this file");

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Recall frequency versus coverage radius for several parameter values");
  sweep_cmd->add_option("scenario", sweep.scenario, "Scenario JSON file")->required();
  sweep_cmd->add_option("--param", sweep.param, "pc_db | density | rate")->required();
  sweep_cmd->add_option("--values", sweep.values, "Comma-separated parameter values")->required();
  sweep_cmd->add_option("--radii", sweep.radii, "start:stop:step radius grid in meters");
  sweep_cmd->add_option("--subregion", sweep.subregion, "Subregion label (default: first)");
  sweep_cmd->add_option("--locus-output", sweep.locus_output, "Write param_value,r_b_star,phi_star here");
  sweep_cmd->add_option("--output", output, "Write the CSV to this file");

  ContourOptions contour;
  auto* contour_cmd = app.add_subcommand("contour", "Altitudes that hold the transmit power fixed, per radius");
  contour_cmd->add_option("--env", contour.env, "Environment preset")->capture_default_str();
  contour_cmd->add_option("--power-db", contour.power_db, "Fixed transmit power, dB over noise")->required();
  contour_cmd->add_option("--radii", contour.radii, "start:stop:step radius grid in meters")->required();
  contour_cmd->add_option("--density", contour.density, "Users per m^2")->capture_default_str();
  contour_cmd->add_option("--rate", contour.rate_su, "Per-user rate, bit/s/Hz")->capture_default_str();
  contour_cmd->add_option("--carrier-hz", contour.carrier_hz, "Carrier frequency")->capture_default_str();
  contour_cmd->add_option("--output", output, "Write the CSV to this file");

  SimulateOptions simulate;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte-Carlo check of the planned transmit power");
  simulate_cmd->add_option("scenario", simulate.scenario, "Scenario JSON file")->required();
  auto* trials_opt = simulate_cmd->add_option("--trials", trials, "Poisson drops per subregion");
  auto* seed_opt = simulate_cmd->add_option("--seed", seed, "Random seed");
  simulate_cmd->add_option("--output", output, "Write the report to this file");

  LayoutOptions layout;
  auto* layout_cmd = app.add_subcommand("layout", "Hexagonal UAV disk centres clipped to subregion rectangles");
  layout_cmd->add_option("scenario", layout.scenario, "Scenario JSON file")->required();
  layout_cmd->add_option("--output", output, "Write the CSV to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  if (*plan_cmd) return emit(output, [&](std::ostream& out) { return run_plan(plan, out, std::cerr); });
  if (*kernel_cmd) return emit(output, [&](std::ostream& out) { return run_kernel(kernel, out, std::cerr); });
  if (*sweep_cmd) return emit(output, [&](std::ostream& out) { return run_sweep(sweep, out, std::cerr); });
  if (*contour_cmd) return emit(output, [&](std::ostream& out) { return run_contour(contour, out, std::cerr); });
  if (*simulate_cmd) {
    if (*trials_opt) simulate.trials = trials;
    if (*seed_opt) simulate.seed = seed;
    return emit(output, [&](std::ostream& out) { return run_simulate(simulate, out, std::cerr); });
  }
  if (*layout_cmd) return emit(output, [&](std::ostream& out) { return run_layout(layout, out, std::cerr); });
  return kExitInput;
}
