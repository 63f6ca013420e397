#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "uavplan/channel.hpp"
#include "uavplan/placement.hpp"
#include "uavplan/power.hpp"

namespace uavplan {

/// SplitMix64. Each (seed, stream) pair starts at an independent, hashed
/// point of the sequence, so trial i draws the same numbers whichever
/// thread runs it.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  static SplitMix64 for_stream(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform double in the open interval (0, 1).
  double uniform_open();

 private:
  std::uint64_t state_;
};

struct SimConfig {
  std::uint64_t trials = 10000;
  std::uint64_t seed = 42;
  std::uint64_t batch = 64;  // trials handed to a worker at a time
  unsigned threads = 0;      // 0: hardware concurrency

  void validate() const;
};

struct SimResult {
  double mean_pt = 0.0;
  double stderr_pt = 0.0;
  double mean_users = 0.0;
  double stderr_users = 0.0;
  double empirical_phi = 0.0;
  double stderr_phi = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

struct TrialSample {
  std::uint64_t users = 0;
  double power = 0.0;
};

/// One Poisson drop on the disk: user count and summed transmit power.
TrialSample simulate_trial(const Environment& env, double r_b, double density, double h,
                           const ServiceParams& params, std::uint64_t seed, std::uint64_t trial);

/// Monte-Carlo estimate of the expected transmit power of one UAV. Trials
/// are reduced in index order, so the result is bit-identical for any
/// thread count.
SimResult sample_transmit_power(const Environment& env, double r_b, double density, double h,
                                const ServiceParams& params, const SimConfig& sim = {});

/// Empirical UAV recall frequency N * (P_t + P_c) / E_b at radius r_b and
/// altitude r_b * h_n*.
SimResult empirical_recall_frequency(const Subregion& sub, double r_b, const ServiceParams& params,
                                     const KernelSolution& sol, const SimConfig& sim = {});

struct LosSample {
  double fraction = 0.0;
  double stderr_fraction = 0.0;
  double probability = 0.0;  // model value at this geometry
  std::uint64_t draws = 0;
};

/// Bernoulli LOS draws at a fixed geometry.
LosSample sample_los_fraction(const Environment& env, const LinkGeometry& geom,
                              std::uint64_t draws, std::uint64_t seed);

// Exhaustive grid search, the validation oracle for the bisection and the
// closed-form radius.

struct GridSpec {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t points = 1001;
  bool geometric = false;

  void validate() const;
  std::vector<double> values() const;
};

struct GridMinimum {
  double argmin = 0.0;
  double value = 0.0;
  std::size_t index = 0;
  /// Largest spacing between the minimiser and its grid neighbours.
  double step = 0.0;
};

template <class F>
GridMinimum grid_argmin(F&& objective, const GridSpec& grid) {
  const auto xs = grid.values();
  GridMinimum best;
  best.value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double v = objective(xs[i]);
    if (v < best.value) {
      best.value = v;
      best.argmin = xs[i];
      best.index = i;
    }
  }
  const std::size_t i = best.index;
  const double left = i > 0 ? xs[i] - xs[i - 1] : 0.0;
  const double right = i + 1 < xs.size() ? xs[i + 1] - xs[i] : 0.0;
  best.step = std::max(left, right);
  return best;
}

/// Minimises the kernel over normalized altitude.
GridMinimum gamma_grid_search(const Environment& env, const GridSpec& grid,
                              const QuadratureConfig& quad = {});

/// Minimises the recall frequency over coverage radius.
GridMinimum phi_grid_search(const Subregion& sub, const ServiceParams& params,
                            const KernelSolution& sol, const GridSpec& grid);

}  // namespace uavplan
