#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fldr/distribution.hpp"
#include "fldr/sampler.hpp"

namespace fldr {

struct BenchConfig {
  std::vector<SamplerKind> samplers;
  std::vector<WeightedDistribution> distributions;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  /// When set, every row replays this bit script instead of the PRNG.
  std::optional<std::string> bit_script;
  /// Run rows one after another on the calling thread.
  bool serial = false;
  SamplerOptions options;
};

struct BenchRow {
  std::string sampler;
  std::size_t n = 0;
  std::uint64_t m = 0;
  double entropy = 0;
  double bits_per_sample = 0;
  std::uint64_t prng_calls = 0;
  std::uint64_t elapsed_ns = 0;
  std::optional<double> chi2;
  std::optional<double> p_value;
  std::size_t memory_bytes = 0;
  std::uint64_t preprocess_ns = 0;
  std::string status = "ok";
};

/// One row per (distribution, sampler), distribution-major. A lookup table
/// over the memory cap yields a row with status "skipped" and the run goes on.
std::vector<BenchRow> run_bench(const BenchConfig& config);

/// The report columns followed by memory_bytes,preprocess_ns,status.
std::string bench_csv_header();
std::string bench_csv_row(const BenchRow& row);

/// Entropy of (m-n+1, 1, ..., 1), the least any n-outcome instance with sum m can have.
double entropy_floor(std::size_t n, std::uint64_t m);

/// n positive weights summing to m whose entropy is within 0.1 bits of
/// `target`. Weights follow a power law a_i ~ i^-s with s found by bisection,
/// then single-unit moves repair what rounding left; outcome order is shuffled
/// with `rng_seed`. Throws std::invalid_argument if the target is infeasible.
WeightedDistribution generate_with_entropy(std::size_t n, std::uint64_t m, double target,
                                           std::uint64_t rng_seed);

/// `count` distributions with targets equally spaced over [h_min, h_max].
/// Defaults: h_min = entropy_floor(n, m), h_max = log2(n).
std::vector<WeightedDistribution> generate_distributions(std::size_t n, std::uint64_t m,
                                                         std::size_t count, std::uint64_t seed,
                                                         std::optional<double> h_min = {},
                                                         std::optional<double> h_max = {});

}  // namespace fldr
