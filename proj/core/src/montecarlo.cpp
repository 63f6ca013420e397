#include "uavplan/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "uavplan/errors.hpp"
#include "uavplan/units.hpp"

namespace uavplan {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

struct Moments {
  double mean = 0.0;
  double stderr_mean = 0.0;
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  const auto n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += x;
  m.mean = sum / n;
  if (xs.size() < 2) return m;
  double ss = 0.0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.stderr_mean = std::sqrt(ss / (n - 1.0) / n);
  return m;
}

}  // namespace

SplitMix64 SplitMix64::for_stream(std::uint64_t seed, std::uint64_t stream) {
  return SplitMix64(mix64(seed ^ mix64(stream + kGolden)));
}

SplitMix64::result_type SplitMix64::operator()() {
  state_ += kGolden;
  return mix64(state_);
}

double SplitMix64::uniform_open() {
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

void SimConfig::validate() const {
  if (trials < 1) throw DomainError("simulation: trials must be >= 1");
  if (batch < 1) throw DomainError("simulation: batch must be >= 1");
}

TrialSample simulate_trial(const Environment& env, double r_b, double density, double h,
                           const ServiceParams& params, std::uint64_t seed, std::uint64_t trial) {
  TrialSample out;
  if (density == 0.0) return out;
  auto rng = SplitMix64::for_stream(seed, trial);
  std::poisson_distribution<std::uint64_t> count(density * kPi * r_b * r_b);
  out.users = count(rng);

  const double fspl = env.fspl_constant();
  const double los_loss = fspl * env.eta_los();
  const double nlos_loss = fspl * env.eta_nlos();
  const double rate = params.rate_factor();
  double power = 0.0;
  // Power depends on ground distance only, so the azimuth is not drawn.
  for (std::uint64_t k = 0; k < out.users; ++k) {
    const double r = r_b * std::sqrt(rng.uniform_open());
    const LinkGeometry geom{r, h};
    const bool los = rng.uniform_open() < los_probability(env, geom);
    const double d2 = r * r + h * h;
    power += d2 * (los ? los_loss : nlos_loss) * rate;
  }
  out.power = power;
  return out;
}

SimResult sample_transmit_power(const Environment& env, double r_b, double density, double h,
                                const ServiceParams& params, const SimConfig& sim) {
  sim.validate();
  if (!(r_b > 0.0)) throw DomainError("sample_transmit_power: r_b must be > 0");
  if (!(h >= 0.0)) throw DomainError("sample_transmit_power: h must be >= 0");
  if (!(density >= 0.0)) throw DomainError("sample_transmit_power: density must be >= 0");

  std::vector<TrialSample> samples(sim.trials);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::uint64_t begin = next.fetch_add(sim.batch);
      if (begin >= sim.trials) return;
      const std::uint64_t end = std::min(sim.trials, begin + sim.batch);
      for (std::uint64_t i = begin; i < end; ++i) {
        samples[i] = simulate_trial(env, r_b, density, h, params, sim.seed, i);
      }
    }
  };
  unsigned threads = sim.threads ? sim.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, sim.trials));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<double> powers(sim.trials);
  std::vector<double> users(sim.trials);
  for (std::uint64_t i = 0; i < sim.trials; ++i) {
    powers[i] = samples[i].power;
    users[i] = static_cast<double>(samples[i].users);
  }
  const auto pt = moments(powers);
  const auto nu = moments(users);
  SimResult out;
  out.mean_pt = pt.mean;
  out.stderr_pt = pt.stderr_mean;
  out.mean_users = nu.mean;
  out.stderr_users = nu.stderr_mean;
  out.trials = sim.trials;
  out.seed = sim.seed;
  return out;
}

SimResult empirical_recall_frequency(const Subregion& sub, double r_b, const ServiceParams& params,
                                     const KernelSolution& sol, const SimConfig& sim) {
  const double h = optimal_altitude_for_radius(sol, r_b);
  SimResult out = sample_transmit_power(sub.env, r_b, sub.density, h, params, sim);
  const double n = uav_count(sub.area_m2, r_b);
  out.empirical_phi = n * (out.mean_pt + params.circuit_power) / params.battery_j;
  out.stderr_phi = n * out.stderr_pt / params.battery_j;
  return out;
}

LosSample sample_los_fraction(const Environment& env, const LinkGeometry& geom,
                              std::uint64_t draws, std::uint64_t seed) {
  if (draws < 1) throw DomainError("sample_los_fraction: draws must be >= 1");
  LosSample out;
  out.draws = draws;
  out.probability = los_probability(env, geom);
  auto rng = SplitMix64::for_stream(seed, 0);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < draws; ++i) {
    if (rng.uniform_open() < out.probability) ++hits;
  }
  const auto n = static_cast<double>(draws);
  out.fraction = static_cast<double>(hits) / n;
  out.stderr_fraction = std::sqrt(out.probability * (1.0 - out.probability) / n);
  return out;
}

void GridSpec::validate() const {
  if (points < 2) throw DomainError("grid: need at least 2 points");
  if (!(hi > lo)) throw DomainError("grid: hi must exceed lo");
  if (!(lo >= 0.0)) throw DomainError("grid: bounds must be nonnegative");
  if (geometric && !(lo > 0.0)) throw DomainError("grid: geometric grid needs lo > 0");
}

std::vector<double> GridSpec::values() const {
  validate();
  std::vector<double> xs(points);
  const double last = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / last;
    xs[i] = geometric ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
  }
  xs.back() = hi;
  return xs;
}

GridMinimum gamma_grid_search(const Environment& env, const GridSpec& grid,
                              const QuadratureConfig& quad) {
  return grid_argmin([&](double h_n) { return kernel_gamma(env, h_n, quad); }, grid);
}

GridMinimum phi_grid_search(const Subregion& sub, const ServiceParams& params,
                            const KernelSolution& sol, const GridSpec& grid) {
  if (!(grid.lo > 0.0)) throw DomainError("phi_grid_search: radius grid must start above 0");
  return grid_argmin([&](double r_b) { return recall_frequency(sub, r_b, params, sol); }, grid);
}

}  // namespace uavplan
