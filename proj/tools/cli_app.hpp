// SPDX-License-Identifier: Apache-2.0

// Command-line front end. `run_cli` is the whole program minus process
// setup so tests can drive it in-process.
//
// Exit codes:
//   0   success (for `test`: every selected test passed)
//   1   I/O failure
//   2   invalid key or parameters (trajectory divergence)
//   3   `test`: at least one selected test failed
//   4   `test`: input too short or degenerate for a test
//   64  usage error

#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <CLI11.hpp>

#include "chaos_prng/battery.hpp"
#include "chaos_prng/bitgen.hpp"
#include "chaos_prng/errors.hpp"
#include "chaos_prng/formats.hpp"
#include "chaos_prng/rossler.hpp"

namespace chaos_prng::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitInvalidKey = 2;
inline constexpr int kExitTestsFailed = 3;
inline constexpr int kExitInputUnsuitable = 4;
inline constexpr int kExitUsage = 64;

inline constexpr const char* kProfileEnv = "CHAOS_PRNG_PROFILE";

/// Lowest and highest significance level accepted by `test`.
inline constexpr double kAlphaMin = 0.0001;
inline constexpr double kAlphaMax = 0.01;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decimal text to binary64, round to nearest.
inline double parse_real(const std::string& flag, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw UsageError(flag + ": not a finite decimal number: '" + text + "'");
  }
  return v;
}

inline std::string format17(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

struct DynamicsOptions {
  std::string x0 = "0.1";
  std::string y0 = "0.15";
  std::string z0 = "0.01";
  std::uint64_t burn_in = 2000;
  std::string a = "0.2";
  std::string b = "0.2";
  std::string c = "5.7";
  std::string h = "0.01";

  void add_to(CLI::App& cmd) {
    cmd.add_option("--x0", x0, "initial x")->capture_default_str();
    cmd.add_option("--y0", y0, "initial y")->capture_default_str();
    cmd.add_option("--z0", z0, "initial z")->capture_default_str();
    cmd.add_option("--a", a, "Rossler a")->capture_default_str();
    cmd.add_option("--b", b, "Rossler b")->capture_default_str();
    cmd.add_option("--c", c, "Rossler c")->capture_default_str();
    cmd.add_option("--h", h, "RK3 step size")->capture_default_str();
  }

  GeneratorKey key() const {
    return {parse_real("--x0", x0), parse_real("--y0", y0), parse_real("--z0", z0), burn_in};
  }

  SystemParams params() const {
    SystemParams p{parse_real("--a", a), parse_real("--b", b), parse_real("--c", c)};
    try {
      p.validate();
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    return p;
  }

  StepConfig step() const {
    StepConfig s{parse_real("--h", h)};
    try {
      s.validate();
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    return s;
  }
};

inline void write_output(const std::string& path, const std::string& data, std::ostream& out) {
  if (path.empty() || path == "-") {
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(data.data(), static_cast<std::streamsize>(data.size()));
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

inline std::string read_input(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") {
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("failed reading standard input");
    return data;
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for reading");
  std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  if (f.bad()) throw IoError("failed reading '" + path + "'");
  return data;
}

inline OutputFormat require_format(const std::string& name) {
  const auto f = parse_format(name);
  if (!f) throw UsageError("--format must be raw, ascii01 or hex");
  return *f;
}

inline DigitEncoding require_encoding(const std::string& name) {
  if (name == "bcd") return DigitEncoding::bcd;
  if (name == "parity") return DigitEncoding::parity;
  throw UsageError("--encoding must be bcd or parity");
}

struct GenerateArgs {
  std::uint64_t bits = 0;
  std::size_t digits = DigitConfig{}.digits_per_coordinate;
  std::string encoding = "bcd";
  std::string format = "raw";
  std::string out;
};

inline int cmd_generate(const DynamicsOptions& dyn, const GenerateArgs& args, std::ostream& out,
                        std::ostream& err) {
  if (args.bits == 0) throw UsageError("--bits must be positive");
  const OutputFormat format = require_format(args.format);
  DigitConfig cfg;
  cfg.digits_per_coordinate = args.digits;
  cfg.encoding = require_encoding(args.encoding);
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  const GeneratorKey key = dyn.key();
  const SystemParams params = dyn.params();
  const StepConfig step = dyn.step();
  err << "key x0=" << format17(key.x0) << " y0=" << format17(key.y0) << " z0=" << format17(key.z0)
      << " burn_in=" << key.burn_in << "\n";

  std::vector<std::uint8_t> packed;
  try {
    Generator gen(key, params, cfg, step);
    packed = gen.next_bytes(args.bits / 8);
    if (const auto rest = args.bits % 8; rest != 0) {
      std::uint8_t b = 0;
      for (std::uint64_t i = 0; i < rest; ++i) b = static_cast<std::uint8_t>((b << 1) | gen.next_bit());
      packed.push_back(static_cast<std::uint8_t>(b << (8 - rest)));
    }
  } catch (const DivergenceError& e) {
    err << "error: invalid key: " << e.what() << "\n";
    return kExitInvalidKey;
  }
  write_output(args.out, encode_packed(packed, args.bits, format), out);
  err << "bits=" << args.bits << "\n";
  return kExitOk;
}

struct TestArgs {
  std::string in;
  std::string format = "raw";
  std::string battery = "all";
  double alpha = kDefaultAlpha;
  std::size_t sequences = 1;
  bool json = false;
};

inline void print_human(const BatteryReport& r, std::ostream& out) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  if (!r.results.empty()) {
    out << "NIST subset: " << r.sequences << " sequence(s) of " << r.bits_per_sequence
        << " bits, alpha=" << r.alpha << "\n";
    if (r.sequences == 1) {
      for (const auto& t : r.results) {
        out << std::left << std::setw(26) << t.name << std::right << std::fixed << std::setprecision(6)
            << " statistic=" << std::setw(14) << t.statistic << " p=" << t.p_value << "  "
            << (t.passed ? "PASS" : "FAIL") << "\n";
      }
    } else {
      for (const auto& s : r.summaries) {
        out << std::left << std::setw(26) << s.name << std::right << std::fixed << std::setprecision(6)
            << " uniformity_p=" << s.uniformity_p_value << " pass=" << s.passes << "/" << s.sequences
            << " (lo " << s.bounds.lo << ")  " << (s.passed ? "PASS" : "FAIL") << "\n";
      }
    }
  }
  if (r.ent) {
    const auto& e = *r.ent;
    out << std::fixed << "ENT (" << e.bytes << " bytes)\n"
        << std::setprecision(6) << "  entropy              " << e.entropy_bits_per_byte << " bits per byte\n"
        << std::setprecision(0) << "  optimum compression  " << e.optimum_compression_percent << " %\n"
        << std::setprecision(2) << "  chi-square           " << e.chi_square << " (exceeded "
        << e.chi_square_exceed_percent << " % of the time)\n"
        << std::setprecision(4) << "  arithmetic mean      " << e.arithmetic_mean << " (127.5 = random)\n"
        << std::setprecision(9) << "  monte carlo pi       " << e.monte_carlo_pi << std::setprecision(2)
        << " (error " << e.pi_error_percent << " %)\n"
        << std::setprecision(6) << "  serial correlation   " << e.serial_correlation << "\n";
  }
  out << (r.passed ? "result: PASS" : "result: FAIL") << "\n";
  out.flags(flags);
  out.precision(prec);
}

inline int cmd_test(const TestArgs& args, std::istream& in, std::ostream& out, std::ostream& err) {
  if (!(args.alpha >= kAlphaMin && args.alpha <= kAlphaMax)) {
    throw UsageError("--alpha must lie in [0.0001, 0.01]");
  }
  BatterySelection selection;
  if (args.battery == "nist") {
    selection = BatterySelection::nist;
  } else if (args.battery == "ent") {
    selection = BatterySelection::ent;
  } else if (args.battery == "all") {
    selection = BatterySelection::all;
  } else {
    throw UsageError("--battery must be nist, ent or all");
  }
  if (args.sequences < 1) throw UsageError("--sequences must be positive");
  const OutputFormat format = require_format(args.format);
  const std::string data = read_input(args.in, in);
  std::vector<std::uint8_t> bits;
  try {
    bits = decode_bits(data, format);
  } catch (const InvalidArgument& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kExitInputUnsuitable;
  }
  BatteryReport report;
  try {
    report = run_battery(bits, selection, args.alpha, args.sequences);
  } catch (const TooShort& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputUnsuitable;
  } catch (const DegenerateInput& e) {
    err << "error: ENT: " << e.what() << "\n";
    return kExitInputUnsuitable;
  }
  if (args.json) {
    out << to_json(report).dump(2) << "\n";
  } else {
    print_human(report, out);
  }
  return report.passed ? kExitOk : kExitTestsFailed;
}

struct TrajectoryArgs {
  std::size_t steps = 10000;
  std::string out;
};

inline int cmd_trajectory(const DynamicsOptions& dyn, const TrajectoryArgs& args, std::ostream& out,
                          std::ostream& err) {
  if (args.steps < 1) throw UsageError("--steps must be at least 1");
  const GeneratorKey key = dyn.key();
  const SystemParams params = dyn.params();
  const StepConfig step = dyn.step();
  std::vector<TrajectoryPoint> points;
  try {
    if (!within_bound(key.seed())) throw DivergenceError("seed lies outside the admissible region", 0);
    points = trajectory(key.seed(), params, step.h, args.steps);
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidKey;
  }
  std::ostringstream csv;
  write_trajectory_csv(csv, points);
  write_output(args.out, csv.str(), out);
  return kExitOk;
}

struct KeyspaceArgs {
  std::size_t precision = 15;
  std::size_t l1_bits = 32;
};

inline int cmd_keyspace(const KeyspaceArgs& args, std::ostream& out) {
  if (args.precision < 1) throw UsageError("--precision must be at least 1");
  const double bits = keyspace_bits(args.precision, args.l1_bits);
  const auto flags = out.flags();
  out << std::fixed << std::setprecision(6) << "bits=" << bits
      << " threshold_met=" << (bits >= kKeyspaceThresholdBits ? "true" : "false") << "\n";
  out.flags(flags);
  return kExitOk;
}

inline int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rossler attractor / Maiorana bent function pseudorandom bit generator"};
  app.require_subcommand(1);
  // -h is the step size; help stays on --help. Subcommands inherit both settings.
  app.set_help_flag("--help", "print help and exit");
  app.fallthrough();

  std::string profile;
  app.add_option("--profile", profile, "named default profile; only 'paper' is defined")
      ->envname(kProfileEnv);

  DynamicsOptions gen_dyn;
  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "write a bit stream");
  gen_dyn.add_to(*gen);
  gen->add_option("--burn-in", gen_dyn.burn_in, "burn-in iterations L1")->capture_default_str();
  gen->add_option("--bits", gen_args.bits, "number of bits")->required();
  gen->add_option("--digits", gen_args.digits, "decimal digits per coordinate")->capture_default_str();
  gen->add_option("--encoding", gen_args.encoding, "digit encoding: bcd or parity")->capture_default_str();
  gen->add_option("--format", gen_args.format, "raw, ascii01 or hex")->capture_default_str();
  gen->add_option("--out", gen_args.out, "output path (default stdout)");

  TestArgs test_args;
  auto* test = app.add_subcommand("test", "run the native randomness battery on a file");
  test->add_option("--in", test_args.in, "input path (default stdin)");
  test->add_option("--format", test_args.format, "raw, ascii01 or hex")->capture_default_str();
  test->add_option("--battery", test_args.battery, "nist, ent or all")->capture_default_str();
  test->add_option("--alpha", test_args.alpha, "significance level in [0.0001, 0.01]")->capture_default_str();
  test->add_option("--sequences", test_args.sequences, "split the NIST input into this many sequences")
      ->capture_default_str();
  test->add_flag("--json", test_args.json, "emit a JSON report");

  DynamicsOptions traj_dyn;
  TrajectoryArgs traj_args;
  auto* traj = app.add_subcommand("trajectory", "dump the integrated trajectory as CSV");
  traj_dyn.add_to(*traj);
  traj->add_option("--steps", traj_args.steps, "RK3 steps")->capture_default_str();
  traj->add_option("--out", traj_args.out, "output path (default stdout)");

  KeyspaceArgs ks_args;
  auto* ks = app.add_subcommand("keyspace", "estimate the key-space size");
  ks->add_option("--precision", ks_args.precision, "decimal digits per real key component")
      ->capture_default_str();
  ks->add_option("--l1-bits", ks_args.l1_bits, "bits in the burn-in count")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (!profile.empty() && profile != "paper") throw UsageError("unknown profile '" + profile + "'");
    if (*gen) return cmd_generate(gen_dyn, gen_args, out, err);
    if (*test) return cmd_test(test_args, in, out, err);
    if (*traj) return cmd_trajectory(traj_dyn, traj_args, out, err);
    if (*ks) return cmd_keyspace(ks_args, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace chaos_prng::cli
