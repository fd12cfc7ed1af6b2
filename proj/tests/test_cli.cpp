// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "chaos_prng/bitgen.hpp"
#include "chaos_prng/formats.hpp"
#include "cli_app.hpp"

using namespace chaos_prng;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& stdin_data = "") {
  args.insert(args.begin(), "chaos_prng");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(stdin_data);
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("chaos_prng_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
  }

  fs::path dir_;
};

}  // namespace

TEST(CliGenerate, DefaultsAreTheReferenceKey) {
  const auto r = run({"generate", "--bits", "64", "--format", "hex"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "a8def846b6d1af5f");
  EXPECT_NE(r.err.find("x0=0.10000000000000001"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("burn_in=2000"), std::string::npos);
  EXPECT_EQ(run({"generate", "--bits", "64", "--format", "hex", "--profile", "paper"}).out, r.out);
}

TEST(CliGenerate, AsciiDeterministic) {
  const auto a = run({"generate", "--bits", "8", "--format", "ascii01"});
  const auto b = run({"generate", "--bits", "8", "--format", "ascii01"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out.size(), 8u);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, "10101000");  // 0xa8
}

TEST(CliGenerate, RawPadsAndReportsBitCount) {
  const auto r = run({"generate", "--bits", "12", "--format", "raw"});
  ASSERT_EQ(r.code, 0);
  ASSERT_EQ(r.out.size(), 2u);
  EXPECT_EQ(static_cast<unsigned char>(r.out[0]), 0xa8);
  EXPECT_EQ(static_cast<unsigned char>(r.out[1]), 0xd0);  // 1101 then four zero pad bits
  EXPECT_NE(r.err.find("bits=12"), std::string::npos);
}

TEST(CliGenerate, ParityEncodingFlag) {
  const auto r = run({"generate", "--bits", "64", "--format", "hex", "--digits", "8", "--encoding", "parity"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "24d97fa5ff7a6a6b");
}

TEST(CliGenerate, CustomKeyMatchesLibrary) {
  const auto r = run({"generate", "--bits", "256", "--format", "hex", "--x0", "0.37", "--y0", "-1.2", "--z0",
                      "0.05", "--burn-in", "123"});
  ASSERT_EQ(r.code, 0) << r.err;
  Generator g(GeneratorKey{0.37, -1.2, 0.05, 123});
  EXPECT_EQ(r.out, encode_bits(g.next_bits(256), OutputFormat::hex));
}

TEST(CliGenerate, Errors) {
  EXPECT_EQ(run({"generate", "--bits", "0"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"generate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"generate", "--bits", "8", "--format", "bin"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"generate", "--bits", "8", "--x0", "abc"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"generate", "--bits", "8", "--a", "-1"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"generate", "--bits", "8", "--profile", "other"}).code, cli::kExitUsage);
  const auto bad = run({"generate", "--bits", "8", "--x0", "1e9"});
  EXPECT_EQ(bad.code, cli::kExitInvalidKey);
  EXPECT_TRUE(bad.out.empty());
}

TEST_F(CliFiles, GenerateWritesFileOnlyOnSuccess) {
  const auto out = path("stream.bin");
  EXPECT_EQ(run({"generate", "--bits", "8", "--x0", "1e9", "--out", out}).code, cli::kExitInvalidKey);
  EXPECT_FALSE(fs::exists(out));
  ASSERT_EQ(run({"generate", "--bits", "8000", "--out", out}).code, 0);
  EXPECT_EQ(fs::file_size(out), 1000u);
}

TEST_F(CliFiles, IoFailure) {
  EXPECT_EQ(run({"generate", "--bits", "8", "--out", path("missing/dir/x.bin")}).code, cli::kExitIo);
  EXPECT_EQ(run({"test", "--in", path("nope.bin")}).code, cli::kExitIo);
}

TEST_F(CliFiles, TestEntOnCounterBytes) {
  std::string data;
  for (int r = 0; r < 4; ++r) {
    for (int b = 0; b < 256; ++b) data.push_back(static_cast<char>(b));
  }
  const auto in = path("counter.bin");
  std::ofstream(in, std::ios::binary) << data;
  const auto r = run({"test", "--in", in, "--battery", "ent", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["ent"]["entropy_bits_per_byte"], 8.0);
  EXPECT_EQ(j["ent"]["chi_square"], 0.0);
  EXPECT_EQ(j["ent"]["arithmetic_mean"], 127.5);
}

TEST_F(CliFiles, TestNistOnGeneratedStream) {
  const auto stream = path("stream.bin");
  ASSERT_EQ(run({"generate", "--bits", "1000000", "--out", stream}).code, 0);
  const auto r = run({"test", "--in", stream, "--battery", "nist", "--alpha", "0.01", "--json"});
  EXPECT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["tests"].size(), 9u);
  for (const auto& t : j["tests"]) EXPECT_TRUE(t["passed"].get<bool>()) << t.dump();
  // Matches the library on the same bits.
  Generator g(GeneratorKey::paper());
  const auto bits = g.next_bits(1000000);
  EXPECT_EQ(j["tests"][0]["p_value"], monobit(bits).p_value);
}

TEST_F(CliFiles, TestHumanOutputAndSequences) {
  const auto stream = path("stream.txt");
  ASSERT_EQ(run({"generate", "--bits", "200000", "--format", "ascii01", "--out", stream}).code, 0);
  const auto r = run({"test", "--in", stream, "--format", "ascii01", "--sequences", "2"});
  EXPECT_NE(r.out.find("2 sequence(s) of 100000 bits"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("ApproximateEntropy"), std::string::npos);
  EXPECT_NE(r.out.find("entropy"), std::string::npos);
  EXPECT_NE(r.out.find("result: "), std::string::npos);
}

TEST_F(CliFiles, TestFailingInputExitsThree) {
  const auto in = path("ones.txt");
  std::ofstream(in) << std::string(10000, '1');
  EXPECT_EQ(run({"test", "--in", in, "--format", "ascii01", "--battery", "nist"}).code, cli::kExitTestsFailed);
}

TEST_F(CliFiles, TestUnsuitableInputExitsFour) {
  const auto in = path("short.txt");
  std::ofstream(in) << "0101";
  const auto r = run({"test", "--in", in, "--format", "ascii01", "--battery", "nist"});
  EXPECT_EQ(r.code, cli::kExitInputUnsuitable);
  EXPECT_NE(r.err.find("Frequency"), std::string::npos) << r.err;

  const auto zeros = path("zeros.bin");
  std::ofstream(zeros, std::ios::binary) << std::string(100, '\0');
  const auto z = run({"test", "--in", zeros, "--battery", "ent"});
  EXPECT_EQ(z.code, cli::kExitInputUnsuitable);
  EXPECT_NE(z.err.find("ENT"), std::string::npos);
}

TEST(CliTest, AlphaOutsideRangeIsUsageError) {
  EXPECT_EQ(run({"test", "--alpha", "0.5"}, "abc").code, cli::kExitUsage);
  EXPECT_EQ(run({"test", "--alpha", "0.00001"}, "abc").code, cli::kExitUsage);
  EXPECT_EQ(run({"test", "--battery", "diehard"}, "abc").code, cli::kExitUsage);
}

TEST(CliTest, ReadsStdin) {
  std::string data;
  for (int b = 0; b < 256; ++b) data.push_back(static_cast<char>(b));
  const auto r = run({"test", "--battery", "ent"}, data);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("8.000000 bits per byte"), std::string::npos) << r.out;
}

TEST_F(CliFiles, Trajectory) {
  const auto r = run({"trajectory", "--steps", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], "t,x,y,z");
  EXPECT_EQ(rows[2], "0.01,0.098386457019199999,0.15129324986666667,0.011400346257614446");

  const auto a = path("a.csv"), b = path("b.csv");
  ASSERT_EQ(run({"trajectory", "--steps", "500", "--out", a}).code, 0);
  ASSERT_EQ(run({"trajectory", "--steps", "500", "--out", b}).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));

  EXPECT_EQ(run({"trajectory", "--steps", "0"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"trajectory", "--x0", "1e9"}).code, cli::kExitInvalidKey);
  EXPECT_EQ(run({"trajectory", "--h", "-0.01"}).code, cli::kExitUsage);
}

TEST(CliTrajectory, SensitivityBetweenRuns) {
  const auto a = run({"trajectory", "--x0", "1", "--steps", "10000"});
  const auto b = run({"trajectory", "--x0", "1.001", "--steps", "10000"});
  ASSERT_EQ(a.code, 0);
  std::istringstream sa(a.out), sb(b.out);
  std::string la, lb;
  std::getline(sa, la);
  std::getline(sb, lb);
  double max_dx = 0.0;
  while (std::getline(sa, la) && std::getline(sb, lb)) {
    const double xa = std::stod(la.substr(la.find(',') + 1));
    const double xb = std::stod(lb.substr(lb.find(',') + 1));
    max_dx = std::max(max_dx, std::fabs(xa - xb));
  }
  EXPECT_GT(max_dx, 1.0);
}

TEST(CliKeyspace, Output) {
  const auto d = run({"keyspace"});
  ASSERT_EQ(d.code, 0);
  EXPECT_EQ(d.out, "bits=181.486764 threshold_met=true\n");
  const auto small = run({"keyspace", "--precision", "1", "--l1-bits", "0"});
  EXPECT_EQ(small.out, "bits=9.965784 threshold_met=false\n");
  EXPECT_EQ(run({"keyspace", "--precision", "0"}).code, cli::kExitUsage);
}

TEST(CliProfile, EnvironmentFallback) {
  ::setenv(cli::kProfileEnv, "paper", 1);
  EXPECT_EQ(run({"keyspace"}).code, 0);
  ::setenv(cli::kProfileEnv, "bogus", 1);
  EXPECT_EQ(run({"keyspace"}).code, cli::kExitUsage);
  // An explicit flag wins over the environment.
  EXPECT_EQ(run({"--profile", "paper", "keyspace"}).code, 0);
  ::unsetenv(cli::kProfileEnv);
}

TEST(CliHelp, ExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("generate"), std::string::npos);
}
