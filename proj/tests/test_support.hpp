#pragma once

#include <cmath>
#include <functional>

namespace uavplan::testing {

inline double rel_err(double actual, double expected) {
  if (expected == 0.0) return std::abs(actual);
  return std::abs(actual - expected) / std::abs(expected);
}

/// Romberg integration (trapezoid refinement + Richardson extrapolation).
/// Test-only oracle, independent of the Gauss-Legendre engine.
inline double romberg(const std::function<double(double)>& f, double lo, double hi,
                      int levels = 18) {
  constexpr int kMax = 24;
  double table[kMax][kMax] = {};
  double h = hi - lo;
  table[0][0] = 0.5 * h * (f(lo) + f(hi));
  int n = 1;
  for (int k = 1; k < levels && k < kMax; ++k) {
    h *= 0.5;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += f(lo + (2 * i + 1) * h);
    n *= 2;
    table[k][0] = 0.5 * table[k - 1][0] + h * sum;
    double factor = 1.0;
    for (int j = 1; j <= k; ++j) {
      factor *= 4.0;
      table[k][j] = table[k][j - 1] + (table[k][j - 1] - table[k - 1][j - 1]) / (factor - 1.0);
    }
    if (k > 5 && std::abs(table[k][k] - table[k - 1][k - 1]) <= 1e-13 * std::abs(table[k][k])) {
      return table[k][k];
    }
  }
  const int last = std::min(levels, kMax) - 1;
  return table[last][last];
}

}  // namespace uavplan::testing
