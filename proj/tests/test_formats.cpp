// SPDX-License-Identifier: Apache-2.0

#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "chaos_prng/formats.hpp"

using namespace chaos_prng;

namespace {

std::vector<std::uint8_t> random_bits(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> v(n);
  for (auto& b : v) b = static_cast<std::uint8_t>(rng() & 1u);
  return v;
}

}  // namespace

TEST(Formats, Names) {
  EXPECT_EQ(parse_format("raw"), OutputFormat::raw);
  EXPECT_EQ(parse_format("ascii01"), OutputFormat::ascii01);
  EXPECT_EQ(parse_format("hex"), OutputFormat::hex);
  EXPECT_FALSE(parse_format("binary"));
}

TEST(Formats, PackingIsMsbFirst) {
  const std::vector<std::uint8_t> bits = {1, 0, 1, 0, 1, 0, 1, 0};
  EXPECT_EQ(encode_bits(bits, OutputFormat::raw), std::string("\xAA", 1));
  EXPECT_EQ(encode_bits(bits, OutputFormat::hex), "aa");
  EXPECT_EQ(encode_bits(bits, OutputFormat::ascii01), "10101010");
}

TEST(Formats, PartialBytePadsWithZeros) {
  const std::vector<std::uint8_t> bits = {1, 1, 1};
  EXPECT_EQ(encode_bits(bits, OutputFormat::raw), std::string("\xE0", 1));
  EXPECT_EQ(encode_bits(bits, OutputFormat::hex), "e0");
  EXPECT_EQ(encode_bits(bits, OutputFormat::ascii01), "111");
}

TEST(Formats, PackedEncodingMatchesBitEncoding) {
  for (std::size_t n : {1u, 7u, 8u, 9u, 64u, 1001u}) {
    const auto bits = random_bits(n, n);
    auto packed = pack_bits_padded(bits);
    if (n % 8 && !packed.empty()) packed.back() |= static_cast<std::uint8_t>(0xFFu >> (n % 8));  // garbage past nbits
    for (auto f : {OutputFormat::raw, OutputFormat::ascii01, OutputFormat::hex}) {
      EXPECT_EQ(encode_packed(packed, n, f), encode_bits(bits, f)) << n;
    }
  }
}

TEST(Formats, RoundTripProperty) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto bits = random_bits(8 * (seed + 1) * 13, seed);
    for (auto f : {OutputFormat::raw, OutputFormat::ascii01, OutputFormat::hex}) {
      ASSERT_EQ(decode_bits(encode_bits(bits, f), f), bits);
    }
    // ascii01 -> raw -> ascii01
    const std::string text = encode_bits(bits, OutputFormat::ascii01);
    const auto raw = encode_bits(decode_bits(text, OutputFormat::ascii01), OutputFormat::raw);
    ASSERT_EQ(encode_bits(decode_bits(raw, OutputFormat::raw), OutputFormat::ascii01), text);
  }
}

TEST(Formats, DecodeErrors) {
  EXPECT_THROW(decode_bits("0102", OutputFormat::ascii01), InvalidArgument);
  EXPECT_THROW(decode_bits("abc", OutputFormat::hex), InvalidArgument);
  EXPECT_THROW(decode_bits("zz", OutputFormat::hex), InvalidArgument);
  EXPECT_EQ(decode_bits("01\n10\n", OutputFormat::ascii01).size(), 4u);
  EXPECT_EQ(decode_bits("AA ff\n", OutputFormat::hex).size(), 16u);
}
