#pragma once

#include <string>

#include "uavplan/channel.hpp"
#include "uavplan/quadrature.hpp"

namespace uavplan {

/// Per-user service requirements and UAV energy budget. All powers are
/// linear ratios to the noise power.
struct ServiceParams {
  double rate_su = 1.0;        // bit/s/Hz
  double circuit_power = 0.0;  // P_c
  double battery_j = 1.0;      // E_b
  bool noise_normalized = true;

  /// 2^S_u - 1, the SNR needed to carry S_u.
  double rate_factor() const;
  void validate() const;
};

/// Optimal normalized altitude of one environment and the kernel there.
struct KernelSolution {
  double h_n_star = 0.0;
  double gamma_at_opt = 0.0;
  std::string env_name;
};

double per_user_power(const Environment& env, const LinkGeometry& geom,
                      const ServiceParams& params);

/// Expected transmit power of one UAV serving a disk of radius r_b at
/// altitude h, integrated directly in physical coordinates.
double total_transmit_power(const Environment& env, double r_b, double density, double h,
                            const ServiceParams& params, const QuadratureConfig& quad = {});

/// Transmit power kernel at unit radius, density and rate factor.
double kernel_gamma(const Environment& env, double h_n, const QuadratureConfig& quad = {});

/// Analytic derivative of kernel_gamma with respect to h_n.
double kernel_gamma_derivative(const Environment& env, double h_n,
                               const QuadratureConfig& quad = {});

/// density * r_b^4 * (2^S_u - 1)
double scale_factor(double r_b, double density, const ServiceParams& params);

}  // namespace uavplan
