// SPDX-License-Identifier: Apache-2.0

// Second-level analysis over many sequences: uniformity of P-values and the
// acceptable range of pass proportions.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>

#include "chaos_prng/errors.hpp"
#include "chaos_prng/special_functions.hpp"

namespace chaos_prng {

/// P-values at or above this are considered uniformly distributed.
inline constexpr double kUniformityThreshold = 0.0001;

struct Uniformity {
  double chi_square = 0.0;
  double p_value = 0.0;
  std::array<std::size_t, 10> bins{};
};

/// Ten bins [i/10, (i+1)/10), the last one closed at 1.
inline Uniformity pvalue_uniformity(std::span<const double> p_values) {
  if (p_values.empty()) throw EmptyInput("uniformity of an empty P-value list");
  Uniformity u;
  for (double p : p_values) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("P-values must lie in [0, 1]");
    const auto bin = static_cast<std::size_t>(p * 10.0);
    ++u.bins[bin > 9 ? 9 : bin];
  }
  const double expected = static_cast<double>(p_values.size()) / 10.0;
  for (auto f : u.bins) {
    const double d = static_cast<double>(f) - expected;
    u.chi_square += d * d / expected;
  }
  u.p_value = igamc(9.0 / 2.0, u.chi_square / 2.0);
  return u;
}

struct ProportionInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// p_hat +- 3 sqrt(p_hat (1 - p_hat) / m) with p_hat = 1 - alpha.
inline ProportionInterval proportion_interval(double alpha, std::size_t m) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (m < 1) throw DomainError("need at least one sequence");
  const double p_hat = 1.0 - alpha;
  const double half = 3.0 * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(m));
  return {p_hat - half, p_hat + half};
}

}  // namespace chaos_prng
