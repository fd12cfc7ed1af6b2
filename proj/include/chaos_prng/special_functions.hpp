// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <limits>
#include <numbers>

#include "chaos_prng/errors.hpp"

namespace chaos_prng {

/// Complementary error function (libm).
inline double erfc(double x) noexcept { return std::erfc(x); }

/// Standard normal CDF.
inline double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

namespace detail {

inline constexpr int kGammaMaxIterations = 100000;
inline constexpr double kGammaEps = 1e-16;

// log(x^a e^-x / Gamma(a))
inline double gamma_log_prefactor(double a, double x) { return a * std::log(x) - x - std::lgamma(a); }

// Lower regularized P(a, x) by its power series; converges for x < a + 1.
inline double igam_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kGammaMaxIterations; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kGammaEps) break;
  }
  return sum * std::exp(gamma_log_prefactor(a, x));
}

// Upper regularized Q(a, x) by its continued fraction (modified Lentz); for x >= a + 1.
inline double igamc_continued_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kGammaEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kGammaMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kGammaEps) break;
  }
  return std::exp(gamma_log_prefactor(a, x)) * h;
}

}  // namespace detail

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
inline double igamc(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0) || std::isnan(a) || std::isnan(x)) {
    throw DomainError("igamc requires a > 0 and x >= 0");
  }
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - detail::igam_series(a, x);
  return detail::igamc_continued_fraction(a, x);
}

/// Regularized lower incomplete gamma P(a, x).
inline double igam(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0) || std::isnan(a) || std::isnan(x)) {
    throw DomainError("igam requires a > 0 and x >= 0");
  }
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return detail::igam_series(a, x);
  return 1.0 - detail::igamc_continued_fraction(a, x);
}

}  // namespace chaos_prng
