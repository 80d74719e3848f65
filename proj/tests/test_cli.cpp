#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "fldr/distribution.hpp"

namespace fldr {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << contents;
  return path;
}

TEST(Cli, SampleFiveOutcomes) {
  const Result r = run({"sample", "fldr", "1 4", "5", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto out = lines(r.out);
  ASSERT_EQ(out.size(), 5u);
  for (const auto& line : out) EXPECT_TRUE(line == "1" || line == "2") << line;
  EXPECT_EQ(run({"--seed", "7", "sample", "fldr", "1 4", "5"}).out, r.out);
}

TEST(Cli, SampleFromReplayedBits) {
  const auto bits = temp_file("fldr_cli_bits.txt", "10100\n");
  const Result r = run({"sample", "ky", "3 7", "1", "--bits", bits.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "1\n");
  const Result dry = run({"sample", "ky", "3 7", "5", "--bits", bits.string()});
  EXPECT_NE(dry.code, 0);
  EXPECT_NE(dry.err.find("exhausted"), std::string::npos);
}

TEST(Cli, RejectsBadInput) {
  const Result zero = run({"sample", "fldr", "0 1", "1"});
  EXPECT_NE(zero.code, 0);
  EXPECT_NE(zero.err.find("nonpositive"), std::string::npos);
  EXPECT_NE(run({"sample", "nope", "1 1", "1"}).code, 0);
  EXPECT_NE(run({"depth-scan", "2"}).code, 0);
  EXPECT_NE(run({"gap-scan", "21"}).code, 0);
  EXPECT_NE(run({}).code, 0);
}

TEST(Cli, DepthScan) {
  const Result r = run({"depth-scan", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto out = lines(r.out);
  ASSERT_EQ(out.size(), 9u);
  EXPECT_EQ(out[0], "m,ky_depth,fldr_depth");
  EXPECT_EQ(out[3], "5,4,3");
  EXPECT_EQ(out[5], "7,3,3");
  EXPECT_EQ(out[6], "8,3,3");
  EXPECT_EQ(run({"--serial", "depth-scan", "10"}).out, r.out);
}

TEST(Cli, GapScan) {
  const Result r = run({"gap-scan", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto out = lines(r.out);
  ASSERT_EQ(out.size(), 5u);
  EXPECT_EQ(out[0], "m,term1,term2,term3,exact_gap");
  EXPECT_EQ(out[4].rfind("8,0,0,", 0), 0u) << out[4];
}

TEST(Cli, GofPassesForExactSampler) {
  const Result r = run({"gof", "fldr", "1 2 3 4", "-N", "50000", "--seed", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).size(), 3u);
}

TEST(Cli, GenDistsWritesParsableFile) {
  const auto path = std::filesystem::temp_directory_path() / "fldr_cli_dists.txt";
  const Result r = run({"gen-dists", "100", "40000", "20", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto dists = read_weight_file(path);
  ASSERT_EQ(dists.size(), 20u);
  for (const auto& d : dists) {
    EXPECT_EQ(d.size(), 100u);
    EXPECT_EQ(d.sum(), 40000u);
  }
}

TEST(Cli, BenchIsDeterministicApartFromTiming) {
  auto strip_timing = [](const std::string& csv) {
    std::string out;
    for (const auto& line : lines(csv)) {
      std::vector<std::string> cells;
      std::stringstream ss(line);
      for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
      cells[6] = cells[10] = "";  // elapsed_ns, preprocess_ns
      for (const auto& c : cells) out += c + ",";
      out += "\n";
    }
    return out;
  };
  const std::vector<std::string> args{"bench", "--gen-n", "10", "--gen-m", "1000", "--gen-count", "3",
                                      "-N", "20000", "--seed", "4"};
  const Result a = run(args);
  const Result b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(lines(a.out).size(), 1u + 3 * 6);
  EXPECT_EQ(strip_timing(a.out), strip_timing(b.out));
}

TEST(Cli, DumpTable) {
  const Result r = run({"dump-table", "fldr", "1 4"});
  EXPECT_EQ(r.out, "3 3\nh: 1 1 2\ncol 0: 2\ncol 1: 3\ncol 2: 1 3\n");
  EXPECT_EQ(run({"dump-table", "ky", "2 1 1"}).out, "level 1: [1]\nlevel 2: [2, 3]\nback-edge -> none\n");
  EXPECT_EQ(run({"dump-table", "rej-lookup", "3 7"}).out, "k 4\nT: 1 1 1 2 2 2 2 2 2 2\n");
}

}  // namespace
}  // namespace fldr
