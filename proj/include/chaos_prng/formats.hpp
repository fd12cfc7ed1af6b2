// SPDX-License-Identifier: Apache-2.0

// Interchange encodings for generated streams.
//   raw     bits packed MSB-first; a partial final byte is zero-padded
//   ascii01 one '0'/'1' character per bit, no separators
//   hex     lowercase, two characters per (padded) byte

#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chaos_prng/errors.hpp"

namespace chaos_prng {

enum class OutputFormat { raw, ascii01, hex };

inline std::optional<OutputFormat> parse_format(std::string_view name) {
  if (name == "raw") return OutputFormat::raw;
  if (name == "ascii01") return OutputFormat::ascii01;
  if (name == "hex") return OutputFormat::hex;
  return std::nullopt;
}

inline std::vector<std::uint8_t> pack_bits_padded(std::span<const std::uint8_t> bits) {
  std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] & 1u) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  }
  return out;
}

inline std::vector<std::uint8_t> unpack_bytes(std::span<const std::uint8_t> bytes) {
  std::vector<std::uint8_t> bits(bytes.size() * 8);
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
  return bits;
}

/// Encoded representation of `bits` (one 0/1 value per element).
inline std::string encode_bits(std::span<const std::uint8_t> bits, OutputFormat format) {
  switch (format) {
    case OutputFormat::raw: {
      const auto bytes = pack_bits_padded(bits);
      return std::string(bytes.begin(), bytes.end());
    }
    case OutputFormat::ascii01: {
      std::string s(bits.size(), '0');
      for (std::size_t i = 0; i < bits.size(); ++i) s[i] = (bits[i] & 1u) ? '1' : '0';
      return s;
    }
    case OutputFormat::hex: {
      static constexpr char kDigits[] = "0123456789abcdef";
      const auto bytes = pack_bits_padded(bits);
      std::string s;
      s.reserve(bytes.size() * 2);
      for (auto b : bytes) {
        s.push_back(kDigits[b >> 4]);
        s.push_back(kDigits[b & 0xF]);
      }
      return s;
    }
  }
  throw InvalidArgument("unknown output format");
}

/// Same output as encode_bits for the first `nbits` bits of an MSB-first
/// packed buffer.
inline std::string encode_packed(std::span<const std::uint8_t> bytes, std::size_t nbits, OutputFormat format) {
  if (bytes.size() != (nbits + 7) / 8) throw LengthMismatch("packed buffer does not hold nbits bits");
  if (format == OutputFormat::ascii01) {
    std::string s(nbits, '0');
    for (std::size_t i = 0; i < nbits; ++i) {
      if ((bytes[i / 8] >> (7 - i % 8)) & 1u) s[i] = '1';
    }
    return s;
  }
  std::vector<std::uint8_t> padded(bytes.begin(), bytes.end());
  if (nbits % 8 != 0) padded.back() &= static_cast<std::uint8_t>(0xFFu << (8 - nbits % 8));
  if (format == OutputFormat::raw) return std::string(padded.begin(), padded.end());
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(padded.size() * 2);
  for (auto b : padded) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0xF]);
  }
  return s;
}

/// Inverse of encode_bits. Whitespace is ignored in the text formats; raw
/// and hex always decode to a multiple of 8 bits.
inline std::vector<std::uint8_t> decode_bits(std::string_view data, OutputFormat format) {
  std::vector<std::uint8_t> bits;
  switch (format) {
    case OutputFormat::raw: {
      const std::vector<std::uint8_t> bytes(data.begin(), data.end());
      return unpack_bytes(bytes);
    }
    case OutputFormat::ascii01:
      bits.reserve(data.size());
      for (char c : data) {
        if (c == '0' || c == '1') {
          bits.push_back(static_cast<std::uint8_t>(c - '0'));
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
          throw InvalidArgument(std::string("ascii01 input contains '") + c + "'");
        }
      }
      return bits;
    case OutputFormat::hex: {
      std::vector<std::uint8_t> bytes;
      int pending = -1;
      for (char c : data) {
        int v;
        if (c >= '0' && c <= '9') {
          v = c - '0';
        } else if (c >= 'a' && c <= 'f') {
          v = c - 'a' + 10;
        } else if (c >= 'A' && c <= 'F') {
          v = c - 'A' + 10;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
          continue;
        } else {
          throw InvalidArgument(std::string("hex input contains '") + c + "'");
        }
        if (pending < 0) {
          pending = v;
        } else {
          bytes.push_back(static_cast<std::uint8_t>((pending << 4) | v));
          pending = -1;
        }
      }
      if (pending >= 0) throw InvalidArgument("hex input has an odd number of digits");
      return unpack_bytes(bytes);
    }
  }
  throw InvalidArgument("unknown input format");
}

}  // namespace chaos_prng
