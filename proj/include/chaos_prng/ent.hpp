// SPDX-License-Identifier: Apache-2.0

// Byte-level measures in the style of Walker's ENT program.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>

#include "chaos_prng/errors.hpp"
#include "chaos_prng/special_functions.hpp"

namespace chaos_prng {

using ByteSpan = std::span<const std::uint8_t>;

struct EntReport {
  double entropy_bits_per_byte = 0.0;
  double optimum_compression_percent = 0.0;
  double chi_square = 0.0;
  double chi_square_exceed_percent = 0.0;
  double arithmetic_mean = 0.0;
  double monte_carlo_pi = 0.0;
  double pi_error_percent = 0.0;
  double serial_correlation = 0.0;
  std::size_t bytes = 0;
};

inline std::array<std::uint64_t, 256> byte_histogram(ByteSpan bytes) noexcept {
  std::array<std::uint64_t, 256> h{};
  for (auto b : bytes) ++h[b];
  return h;
}

/// Shannon entropy of the byte histogram, bits per byte.
inline double shannon_entropy(ByteSpan bytes) {
  if (bytes.empty()) throw EmptyInput("entropy of an empty byte sequence");
  const auto h = byte_histogram(bytes);
  const double n = static_cast<double>(bytes.size());
  double e = 0.0;
  for (auto c : h) {
    if (c > 0) {
      const double p = static_cast<double>(c) / n;
      e -= p * std::log2(p);
    }
  }
  return e;
}

inline double arithmetic_mean(ByteSpan bytes) {
  if (bytes.empty()) throw EmptyInput("mean of an empty byte sequence");
  double sum = 0.0;
  for (auto b : bytes) sum += b;
  return sum / static_cast<double>(bytes.size());
}

/// Chi-square of the byte histogram against 256 equiprobable bins.
inline double byte_chi_square(ByteSpan bytes) {
  if (bytes.empty()) throw EmptyInput("chi-square of an empty byte sequence");
  const auto h = byte_histogram(bytes);
  const double expected = static_cast<double>(bytes.size()) / 256.0;
  double chi = 0.0;
  for (auto c : h) {
    const double d = static_cast<double>(c) - expected;
    chi += d * d / expected;
  }
  return chi;
}

/// Monte Carlo pi: each 6-byte group is two 24-bit big-endian coordinates
/// scaled by 2^24 - 1; a point is inside when x^2 + y^2 <= 1. Trailing
/// bytes that do not fill a group are ignored.
inline double monte_carlo_pi(ByteSpan bytes) {
  const std::size_t groups = bytes.size() / 6;
  if (groups == 0) throw TooShort("MonteCarloPi", 6, bytes.size());
  // Exact integer comparison of x^2 + y^2 <= (2^24 - 1)^2.
  constexpr std::uint64_t radius = (std::uint64_t{1} << 24) - 1;
  constexpr std::uint64_t radius_sq = radius * radius;
  std::size_t inside = 0;
  for (std::size_t g = 0; g < groups; ++g) {
    const auto* p = bytes.data() + 6 * g;
    const std::uint64_t x = (std::uint64_t{p[0]} << 16) | (std::uint64_t{p[1]} << 8) | p[2];
    const std::uint64_t y = (std::uint64_t{p[3]} << 16) | (std::uint64_t{p[4]} << 8) | p[5];
    if (x * x + y * y <= radius_sq) ++inside;
  }
  return 4.0 * static_cast<double>(inside) / static_cast<double>(groups);
}

/// Lag-1 Pearson correlation over consecutive pairs (no wraparound).
inline double serial_correlation(ByteSpan bytes) {
  if (bytes.size() < 2) throw TooShort("SerialCorrelation", 2, bytes.size());
  const double pairs = static_cast<double>(bytes.size() - 1);
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i + 1 < bytes.size(); ++i) {
    const double u = bytes[i];
    const double v = bytes[i + 1];
    sx += u;
    sy += v;
    sxx += u * u;
    syy += v * v;
    sxy += u * v;
  }
  const double vx = pairs * sxx - sx * sx;
  const double vy = pairs * syy - sy * sy;
  if (vx <= 0.0 || vy <= 0.0) {
    throw DegenerateInput("serial correlation undefined for a constant byte stream");
  }
  return (pairs * sxy - sx * sy) / std::sqrt(vx * vy);
}

inline EntReport ent_battery(ByteSpan bytes) {
  if (bytes.size() < 6) throw TooShort("ENT", 6, bytes.size());
  EntReport r;
  r.bytes = bytes.size();
  r.entropy_bits_per_byte = shannon_entropy(bytes);
  r.optimum_compression_percent = std::floor((8.0 - r.entropy_bits_per_byte) / 8.0 * 100.0);
  r.chi_square = byte_chi_square(bytes);
  r.chi_square_exceed_percent = igamc(255.0 / 2.0, r.chi_square / 2.0) * 100.0;
  r.arithmetic_mean = arithmetic_mean(bytes);
  r.monte_carlo_pi = monte_carlo_pi(bytes);
  r.pi_error_percent = std::fabs(r.monte_carlo_pi - std::numbers::pi) / std::numbers::pi * 100.0;
  r.serial_correlation = serial_correlation(bytes);
  return r;
}

}  // namespace chaos_prng
