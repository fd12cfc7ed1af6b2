// SPDX-License-Identifier: Apache-2.0

// Boolean functions as truth tables, their Walsh spectra and the Maiorana
// bent construction
//
//   f(x, y) = x_0 y_0 ^ ... ^ x_{m-1} y_{m-1} ^ R(x),   R(x) = x_0 x_1 ... x_{m-1}.
//
// Truth tables are indexed lexicographically: the input vector read as an
// n-bit big-endian integer, first variable in the most significant bit.
// For Maiorana tables the variable order is (x_0..x_{m-1}, y_0..y_{m-1}).

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chaos_prng/errors.hpp"

namespace chaos_prng {

/// Largest variable count for which tables and spectra are materialized.
inline constexpr std::size_t kMaxTableVariables = 24;

class BooleanFunction {
 public:
  BooleanFunction() = default;

  /// `table` must hold exactly 2^n entries, each 0 or 1.
  BooleanFunction(std::size_t n, std::vector<std::uint8_t> table) : n_(n), table_(std::move(table)) {
    if (n_ > kMaxTableVariables) {
      throw TooLarge("truth table over " + std::to_string(n_) + " variables");
    }
    if (table_.size() != (std::size_t{1} << n_)) {
      throw LengthMismatch("truth table length must be 2^n");
    }
    for (auto v : table_) {
      if (v > 1) throw NotBooleanValued("truth table entries must be 0 or 1");
    }
  }

  static BooleanFunction constant(std::size_t n, bool value) {
    if (n > kMaxTableVariables) throw TooLarge("truth table over " + std::to_string(n) + " variables");
    return BooleanFunction(n, std::vector<std::uint8_t>(std::size_t{1} << n, value ? 1 : 0));
  }

  std::size_t variables() const noexcept { return n_; }
  std::size_t size() const noexcept { return table_.size(); }
  std::span<const std::uint8_t> table() const noexcept { return table_; }
  std::uint8_t operator[](std::size_t index) const { return table_.at(index); }

  std::size_t weight() const noexcept {
    std::size_t w = 0;
    for (auto v : table_) w += v;
    return w;
  }

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> table_ = {0};
};

struct WalshSpectrum {
  std::size_t n = 0;
  std::vector<std::int64_t> coefficients;

  friend bool operator==(const WalshSpectrum&, const WalshSpectrum&) = default;
};

/// Maiorana function over 2m variables. An empty `r_term` means the
/// product x_0 x_1 ... x_{m-1}.
struct MaioranaSpec {
  std::size_t m = 1;
  std::function<std::uint8_t(std::span<const std::uint8_t>)> r_term;

  std::size_t variables() const noexcept { return 2 * m; }
};

namespace detail {

inline void require_table_size(std::size_t n) {
  if (n > kMaxTableVariables) {
    throw TooLarge(std::to_string(n) + " variables exceeds the table bound of " +
                   std::to_string(kMaxTableVariables));
  }
}

/// In-place unnormalized Walsh-Hadamard butterfly. Length must be a power
/// of two.
inline void fwht(std::span<std::int64_t> v) noexcept {
  for (std::size_t half = 1; half < v.size(); half <<= 1) {
    for (std::size_t block = 0; block < v.size(); block += 2 * half) {
      for (std::size_t i = block; i < block + half; ++i) {
        const std::int64_t u = v[i];
        const std::int64_t w = v[i + half];
        v[i] = u + w;
        v[i + half] = u - w;
      }
    }
  }
}

}  // namespace detail

inline std::uint8_t maiorana_eval(const MaioranaSpec& spec, std::span<const std::uint8_t> xs,
                                  std::span<const std::uint8_t> ys) {
  if (spec.m == 0) throw InvalidArgument("Maiorana function needs m >= 1");
  if (xs.size() != spec.m || ys.size() != spec.m) {
    throw LengthMismatch("Maiorana inputs must both have length m = " + std::to_string(spec.m));
  }
  std::uint8_t acc = 0;
  std::uint8_t product = 1;
  for (std::size_t i = 0; i < spec.m; ++i) {
    acc ^= static_cast<std::uint8_t>(xs[i] & ys[i] & 1u);
    product &= static_cast<std::uint8_t>(xs[i] & 1u);
  }
  const std::uint8_t r = spec.r_term ? static_cast<std::uint8_t>(spec.r_term(xs) & 1u) : product;
  return static_cast<std::uint8_t>(acc ^ r);
}

/// Product-term Maiorana function on bit-packed halves (m <= 64). Bit
/// i of the sequence x_0..x_{m-1} sits at position m-1-i of `xs`.
inline std::uint8_t maiorana_eval_packed(std::size_t m, std::uint64_t xs, std::uint64_t ys) noexcept {
  const std::uint64_t mask = m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  xs &= mask;
  ys &= mask;
  const auto inner = static_cast<std::uint8_t>(std::popcount(xs & ys) & 1);
  return static_cast<std::uint8_t>(inner ^ (xs == mask ? 1u : 0u));
}

inline BooleanFunction truth_table(const MaioranaSpec& spec) {
  if (spec.m == 0) throw InvalidArgument("Maiorana function needs m >= 1");
  const std::size_t n = spec.variables();
  detail::require_table_size(n);
  const std::size_t m = spec.m;
  std::vector<std::uint8_t> table(std::size_t{1} << n);
  std::vector<std::uint8_t> xs(m), ys(m);
  for (std::size_t k = 0; k < table.size(); ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      xs[i] = static_cast<std::uint8_t>((k >> (n - 1 - i)) & 1u);
      ys[i] = static_cast<std::uint8_t>((k >> (m - 1 - i)) & 1u);
    }
    table[k] = maiorana_eval(spec, xs, ys);
  }
  return BooleanFunction(n, std::move(table));
}

/// W(f)(w) = sum_x f(x) (-1)^{w.x} over the 0/1 values of f.
inline WalshSpectrum walsh_transform(const BooleanFunction& f) {
  detail::require_table_size(f.variables());
  std::vector<std::int64_t> v(f.table().begin(), f.table().end());
  detail::fwht(v);
  return {f.variables(), std::move(v)};
}

/// Walsh transform of the sign function (-1)^{f(x)}.
inline WalshSpectrum sign_spectrum(const BooleanFunction& f) {
  detail::require_table_size(f.variables());
  std::vector<std::int64_t> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.table()[i] ? -1 : 1;
  detail::fwht(v);
  return {f.variables(), std::move(v)};
}

/// f(x) = 2^{-n} sum_w W(f)(w) (-1)^{w.x}, in exact integer arithmetic.
inline BooleanFunction inverse_walsh(const WalshSpectrum& spectrum) {
  detail::require_table_size(spectrum.n);
  if (spectrum.coefficients.size() != (std::size_t{1} << spectrum.n)) {
    throw LengthMismatch("spectrum length must be 2^n");
  }
  std::vector<std::int64_t> v = spectrum.coefficients;
  detail::fwht(v);
  const std::int64_t scale = std::int64_t{1} << spectrum.n;
  std::vector<std::uint8_t> table(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0 && v[i] != scale) {
      throw NotBooleanValued("spectrum does not come from a 0/1-valued function");
    }
    table[i] = v[i] == scale ? 1 : 0;
  }
  return BooleanFunction(spectrum.n, std::move(table));
}

/// True iff every sign-spectrum coefficient is +-2^{n/2}.
inline bool is_bent(const BooleanFunction& f) {
  if (f.variables() % 2 != 0) {
    throw OddVariableCount("bentness is defined for an even number of variables");
  }
  const std::int64_t target = std::int64_t{1} << (f.variables() / 2);
  const WalshSpectrum s = sign_spectrum(f);
  for (auto c : s.coefficients) {
    if (c != target && c != -target) return false;
  }
  return true;
}

/// Lowercase hex, table bits packed MSB-first, zero-padded to a whole
/// nibble.
inline std::string to_hex(const BooleanFunction& f) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const auto t = f.table();
  std::string out((t.size() + 3) / 4, '0');
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i]) {
      auto& c = out[i / 4];
      const int nibble = (c <= '9' ? c - '0' : c - 'a' + 10) | (8 >> (i % 4));
      c = kDigits[nibble];
    }
  }
  return out;
}

inline BooleanFunction from_hex(std::string_view hex, std::size_t n) {
  detail::require_table_size(n);
  const std::size_t len = std::size_t{1} << n;
  if (hex.size() != (len + 3) / 4) {
    throw LengthMismatch("hex table over " + std::to_string(n) + " variables needs " +
                         std::to_string((len + 3) / 4) + " digits");
  }
  std::vector<std::uint8_t> table(len);
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const char c = hex[d];
    int nibble;
    if (c >= '0' && c <= '9') {
      nibble = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      nibble = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      nibble = c - 'A' + 10;
    } else {
      throw InvalidArgument(std::string("not a hex digit: '") + c + "'");
    }
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t i = 4 * d + b;
      const auto bit = static_cast<std::uint8_t>((nibble >> (3 - b)) & 1);
      if (i < len) {
        table[i] = bit;
      } else if (bit) {
        throw InvalidArgument("nonzero padding bits in hex table");
      }
    }
  }
  return BooleanFunction(n, std::move(table));
}

}  // namespace chaos_prng
