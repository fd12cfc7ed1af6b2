// SPDX-License-Identifier: Apache-2.0

// Rossler/Maiorana bit generator.
//
// After a burn-in of L1 RK3 steps from (x0, y0, z0), every output bit costs
// one more step. The new x and y are scaled by 10^7, truncated and made
// non-negative; the trailing decimal digits of both integers are encoded as
// bits to form the vector V = (x-half, y-half), and the Maiorana function of
// V is the output bit. z only drives the dynamics.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chaos_prng/boolean_function.hpp"
#include "chaos_prng/errors.hpp"
#include "chaos_prng/rossler.hpp"

namespace chaos_prng {

struct GeneratorKey {
  double x0 = 0.1;
  double y0 = 0.15;
  double z0 = 0.01;
  std::uint64_t burn_in = 2000;  // L1

  static constexpr GeneratorKey paper() { return {0.1, 0.15, 0.01, 2000}; }

  State3 seed() const noexcept { return {x0, y0, z0}; }
};

/// How one decimal digit becomes bits of V.
enum class DigitEncoding {
  bcd,     // four bits, most significant first
  parity,  // one bit, d mod 2
};

inline constexpr std::size_t bits_per_digit(DigitEncoding e) noexcept {
  return e == DigitEncoding::bcd ? 4 : 1;
}

struct DigitConfig {
  std::size_t digits_per_coordinate = 7;
  std::int64_t scale = 10'000'000;
  DigitEncoding encoding = DigitEncoding::bcd;

  /// Bits contributed by one coordinate; the generator's Maiorana m.
  std::size_t half_width() const noexcept { return digits_per_coordinate * bits_per_digit(encoding); }

  void validate() const {
    if (digits_per_coordinate < 1) throw InvalidArgument("digits_per_coordinate must be >= 1");
    if (half_width() > 64) throw InvalidArgument("digit vector half exceeds 64 bits");
    if (digits_per_coordinate > 18) throw InvalidArgument("digits_per_coordinate must be <= 18");
    if (scale < 10) throw InvalidArgument("scale must be >= 10");
  }
};

/// abs(trunc(v * scale)). Throws OverflowError past the signed 64-bit range.
inline std::uint64_t postprocess(double v, std::int64_t scale) {
  const double scaled = std::trunc(v * static_cast<double>(scale));
  // 2^63 is exactly representable; anything at or beyond it does not fit.
  if (!std::isfinite(scaled) || std::fabs(scaled) >= 9223372036854775808.0) {
    throw OverflowError("scaled coordinate exceeds the 64-bit integer range");
  }
  const auto i = static_cast<std::int64_t>(scaled);
  return static_cast<std::uint64_t>(i < 0 ? -i : i);
}

namespace detail {

/// Encoded trailing digits of `s`, first digit in the most significant bit.
inline std::uint64_t digit_word(std::uint64_t s, const DigitConfig& cfg) noexcept {
  const std::size_t width = bits_per_digit(cfg.encoding);
  std::uint64_t word = 0;
  for (std::size_t k = 0; k < cfg.digits_per_coordinate; ++k) {
    const std::uint64_t d = s % 10;
    s /= 10;
    const std::uint64_t code = cfg.encoding == DigitEncoding::bcd ? d : (d & 1u);
    word |= code << (k * width);
  }
  return word;
}

}  // namespace detail

/// V as a bit sequence: x-half then y-half, each of cfg.half_width() bits.
/// Digits are the cfg.digits_per_coordinate least significant decimal
/// digits (zero-padded on the left), most significant first.
inline std::vector<std::uint8_t> digit_vector(std::uint64_t s0, std::uint64_t s1, const DigitConfig& cfg) {
  cfg.validate();
  const std::size_t w = cfg.half_width();
  std::vector<std::uint8_t> v(2 * w);
  const std::uint64_t hi = detail::digit_word(s0, cfg);
  const std::uint64_t lo = detail::digit_word(s1, cfg);
  for (std::size_t i = 0; i < w; ++i) {
    v[i] = static_cast<std::uint8_t>((hi >> (w - 1 - i)) & 1u);
    v[w + i] = static_cast<std::uint8_t>((lo >> (w - 1 - i)) & 1u);
  }
  return v;
}

/// Sequential stream generator. Not safe for concurrent mutation; distinct
/// instances are independent.
class Generator {
 public:
  Generator(const GeneratorKey& key, const SystemParams& params = SystemParams::chaotic(),
            const DigitConfig& cfg = {}, const StepConfig& step = {})
      : params_(params), step_(step), cfg_(cfg) {
    params_.validate();
    step_.validate();
    cfg_.validate();
    const State3 seed = key.seed();
    if (!within_bound(seed)) {
      throw DivergenceError("seed lies outside the admissible region", 0);
    }
    current_ = integrate(seed, params_, step_.h, key.burn_in);
  }

  std::uint8_t next_bit() {
    try {
      current_ = rk3_step(current_, params_, step_.h);
    } catch (const DivergenceError&) {
      throw DivergenceError("trajectory diverged while generating", bits_emitted_ + 1);
    }
    const std::uint64_t s0 = postprocess(current_.x, cfg_.scale);
    const std::uint64_t s1 = postprocess(current_.y, cfg_.scale);
    ++bits_emitted_;
    return maiorana_eval_packed(cfg_.half_width(), detail::digit_word(s0, cfg_),
                                detail::digit_word(s1, cfg_));
  }

  /// 8n bits packed MSB-first.
  std::vector<std::uint8_t> next_bytes(std::size_t n) {
    std::vector<std::uint8_t> out(n);
    for (auto& byte : out) {
      std::uint8_t b = 0;
      for (int i = 0; i < 8; ++i) b = static_cast<std::uint8_t>((b << 1) | next_bit());
      byte = b;
    }
    return out;
  }

  /// One 0/1 value per element.
  std::vector<std::uint8_t> next_bits(std::size_t n) {
    std::vector<std::uint8_t> out(n);
    for (auto& bit : out) bit = next_bit();
    return out;
  }

  const State3& current() const noexcept { return current_; }
  const SystemParams& params() const noexcept { return params_; }
  const StepConfig& step() const noexcept { return step_; }
  const DigitConfig& digit_config() const noexcept { return cfg_; }
  std::uint64_t bits_emitted() const noexcept { return bits_emitted_; }

 private:
  SystemParams params_;
  StepConfig step_;
  DigitConfig cfg_;
  State3 current_;
  std::uint64_t bits_emitted_ = 0;
};

inline Generator new_generator(const GeneratorKey& key, const SystemParams& params = SystemParams::chaotic(),
                               const DigitConfig& cfg = {}) {
  return Generator(key, params, cfg);
}

/// Key-space size in bits for (x0, y0, z0, L1): three reals carrying
/// `precision_decimal_digits` significant digits each, plus `l1_bits`.
inline double keyspace_bits(std::size_t precision_decimal_digits, std::size_t l1_bits) {
  if (precision_decimal_digits < 1) throw InvalidArgument("precision must be at least one digit");
  return 3.0 * static_cast<double>(precision_decimal_digits) * std::log2(10.0) +
         static_cast<double>(l1_bits);
}

inline constexpr double kKeyspaceThresholdBits = 126.0;

}  // namespace chaos_prng
