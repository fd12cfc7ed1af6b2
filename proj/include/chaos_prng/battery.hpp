// SPDX-License-Identifier: Apache-2.0

// Runs the native battery over one buffer or over many equal-length
// sequences cut from it, and renders the report as JSON.
//
// Acceptance of a NIST test across sequences: its pass proportion must not
// fall below the lower bound of proportion_interval(alpha, sequences), and,
// with two or more sequences, its P-values must be uniform
// (pvalue_uniformity P-value >= 0.0001). ENT counts as passed when its
// chi-square tail probability is at least alpha.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chaos_prng/ent.hpp"
#include "chaos_prng/errors.hpp"
#include "chaos_prng/meta_analysis.hpp"
#include "chaos_prng/nist_tests.hpp"

namespace chaos_prng {

enum class BatterySelection { nist, ent, all };

struct NistSubsetConfig {
  std::size_t block_size = 128;
  std::size_t serial_m = 0;  // 0: min(16, floor(log2 n) - 3)
  std::size_t apen_m = 0;    // 0: min(10, floor(log2 n) - 6)
};

inline std::size_t auto_serial_m(std::size_t n) noexcept {
  const auto lg = static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(n))));
  return lg < 5 ? 2 : std::min<std::size_t>(16, lg - 3);
}

inline std::size_t auto_apen_m(std::size_t n) noexcept {
  const auto lg = static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(n))));
  return lg < 7 ? 1 : std::min<std::size_t>(10, lg - 6);
}

/// Nine result rows: Frequency, BlockFrequency, CumulativeSums (forward and
/// reverse), Runs, LongestRun, Serial1, Serial2, ApproximateEntropy.
inline std::vector<TestResult> run_nist_subset(BitSpan bits, double alpha = kDefaultAlpha,
                                               const NistSubsetConfig& cfg = {}) {
  if (bits.empty()) throw TooShort("Frequency", 100, 0);
  const std::size_t serial_m = cfg.serial_m ? cfg.serial_m : auto_serial_m(bits.size());
  const std::size_t apen_m = cfg.apen_m ? cfg.apen_m : auto_apen_m(bits.size());
  std::vector<TestResult> out;
  out.reserve(9);
  out.push_back(monobit(bits, alpha));
  out.push_back(block_frequency(bits, cfg.block_size, alpha));
  out.push_back(cumulative_sums(bits, CusumDirection::forward, alpha));
  out.push_back(cumulative_sums(bits, CusumDirection::reverse, alpha));
  out.push_back(runs(bits, alpha));
  out.push_back(longest_run_of_ones(bits, alpha));
  for (auto& r : serial(bits, serial_m, alpha)) out.push_back(std::move(r));
  out.push_back(approximate_entropy(bits, apen_m, alpha));
  return out;
}

struct TestSummary {
  std::string name;
  std::size_t sequences = 0;
  std::size_t passes = 0;
  double proportion = 0.0;
  ProportionInterval bounds;
  double uniformity_p_value = 1.0;
  bool passed = false;
};

/// Per-test pass proportion and P-value uniformity over sequences. Every
/// inner vector must list the same tests in the same order.
inline std::vector<TestSummary> assess_sequences(const std::vector<std::vector<TestResult>>& per_sequence,
                                                 double alpha = kDefaultAlpha) {
  if (per_sequence.empty()) throw EmptyInput("no sequences to assess");
  const std::size_t tests = per_sequence.front().size();
  const std::size_t m = per_sequence.size();
  const ProportionInterval bounds = proportion_interval(alpha, m);
  std::vector<TestSummary> out;
  for (std::size_t t = 0; t < tests; ++t) {
    TestSummary s;
    s.name = per_sequence.front()[t].name;
    s.sequences = m;
    s.bounds = bounds;
    std::vector<double> ps;
    ps.reserve(m);
    for (const auto& seq : per_sequence) {
      if (seq.size() != tests || seq[t].name != s.name) {
        throw LengthMismatch("sequences report different test lists");
      }
      ps.push_back(seq[t].p_value);
      s.passes += seq[t].p_value >= alpha ? 1 : 0;
    }
    s.proportion = static_cast<double>(s.passes) / static_cast<double>(m);
    s.uniformity_p_value = pvalue_uniformity(ps).p_value;
    s.passed = s.proportion >= bounds.lo && (m < 2 || s.uniformity_p_value >= kUniformityThreshold);
    out.push_back(std::move(s));
  }
  return out;
}

struct BatteryReport {
  double alpha = kDefaultAlpha;
  std::size_t sequences = 0;
  std::size_t bits_per_sequence = 0;
  std::vector<TestResult> results;  // sequence-major
  std::vector<TestSummary> summaries;
  std::optional<EntReport> ent;
  // Pooled over every entry of `results`; absent when NIST was not run.
  std::optional<double> uniformity_p;
  std::optional<double> proportion;
  std::optional<ProportionInterval> proportion_bounds;
  bool passed = false;
};

/// Whole bytes only, MSB-first; a trailing partial byte is dropped.
inline std::vector<std::uint8_t> pack_whole_bytes(BitSpan bits) {
  std::vector<std::uint8_t> out(bits.size() / 8);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint8_t b = 0;
    for (std::size_t j = 0; j < 8; ++j) b = static_cast<std::uint8_t>((b << 1) | (bits[8 * i + j] & 1u));
    out[i] = b;
  }
  return out;
}

/// `bits` holds one 0/1 value per element. ENT runs on the whole buffer
/// packed MSB-first (a trailing partial byte is dropped).
inline BatteryReport run_battery(BitSpan bits, BatterySelection selection, double alpha = kDefaultAlpha,
                                 std::size_t sequences = 1, const NistSubsetConfig& cfg = {}) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (sequences < 1) throw InvalidArgument("need at least one sequence");
  BatteryReport report;
  report.alpha = alpha;
  bool ok = true;
  if (selection != BatterySelection::ent) {
    const std::size_t len = bits.size() / sequences;
    report.sequences = sequences;
    report.bits_per_sequence = len;
    std::vector<std::vector<TestResult>> per_sequence;
    per_sequence.reserve(sequences);
    for (std::size_t k = 0; k < sequences; ++k) {
      per_sequence.push_back(run_nist_subset(bits.subspan(k * len, len), alpha, cfg));
    }
    report.summaries = assess_sequences(per_sequence, alpha);
    std::vector<double> ps;
    std::size_t passes = 0;
    for (auto& seq : per_sequence) {
      for (auto& r : seq) {
        ps.push_back(r.p_value);
        passes += r.passed ? 1 : 0;
        report.results.push_back(std::move(r));
      }
    }
    report.uniformity_p = pvalue_uniformity(ps).p_value;
    report.proportion = static_cast<double>(passes) / static_cast<double>(ps.size());
    report.proportion_bounds = proportion_interval(alpha, ps.size());
    for (const auto& s : report.summaries) ok = ok && s.passed;
  }
  if (selection != BatterySelection::nist) {
    const auto bytes = pack_whole_bytes(bits);
    report.ent = ent_battery(bytes);
    ok = ok && report.ent->chi_square_exceed_percent >= alpha * 100.0;
  }
  report.passed = ok;
  return report;
}

inline nlohmann::json to_json(const EntReport& e) {
  return {{"bytes", e.bytes},
          {"entropy_bits_per_byte", e.entropy_bits_per_byte},
          {"optimum_compression_percent", e.optimum_compression_percent},
          {"chi_square", e.chi_square},
          {"chi_square_exceed_percent", e.chi_square_exceed_percent},
          {"arithmetic_mean", e.arithmetic_mean},
          {"monte_carlo_pi", e.monte_carlo_pi},
          {"pi_error_percent", e.pi_error_percent},
          {"serial_correlation", e.serial_correlation}};
}

inline nlohmann::json to_json(const BatteryReport& r) {
  nlohmann::json tests = nlohmann::json::array();
  const std::size_t per = r.summaries.empty() ? 0 : r.summaries.size();
  for (std::size_t i = 0; i < r.results.size(); ++i) {
    const auto& t = r.results[i];
    tests.push_back({{"name", t.name},
                     {"statistic", t.statistic},
                     {"p_value", t.p_value},
                     {"passed", t.passed},
                     {"sequence", per ? i / per : 0}});
  }
  nlohmann::json summary = nlohmann::json::array();
  for (const auto& s : r.summaries) {
    summary.push_back({{"name", s.name},
                       {"sequences", s.sequences},
                       {"passes", s.passes},
                       {"proportion", s.proportion},
                       {"proportion_lo", s.bounds.lo},
                       {"uniformity_p_value", s.uniformity_p_value},
                       {"passed", s.passed}});
  }
  nlohmann::json j{{"alpha", r.alpha},
                   {"sequences", r.sequences},
                   {"bits_per_sequence", r.bits_per_sequence},
                   {"tests", tests},
                   {"summary", summary},
                   {"passed", r.passed}};
  j["ent"] = r.ent ? to_json(*r.ent) : nlohmann::json(nullptr);
  j["uniformity_p_value"] = r.uniformity_p ? nlohmann::json(*r.uniformity_p) : nlohmann::json(nullptr);
  j["proportion"] = r.proportion ? nlohmann::json(*r.proportion) : nlohmann::json(nullptr);
  j["proportion_lo"] = r.proportion_bounds ? nlohmann::json(r.proportion_bounds->lo) : nlohmann::json(nullptr);
  return j;
}

}  // namespace chaos_prng
