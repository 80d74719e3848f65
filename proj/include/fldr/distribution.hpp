#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fldr {

/// n positive integer weights a_1..a_n summing to m; outcome i is drawn with
/// probability a_i/m. Outcomes are 1-based everywhere in this library.
class WeightedDistribution {
 public:
  /// Largest admissible weight sum.
  static constexpr std::uint64_t kMaxSum = std::uint64_t{1} << 63;

  /// Validates and takes ownership; throws std::invalid_argument on an empty
  /// list or a zero weight and std::overflow_error when the sum exceeds kMaxSum.
  explicit WeightedDistribution(std::vector<std::uint64_t> weights);

  std::span<const std::uint64_t> weights() const noexcept { return weights_; }
  /// Weight of outcome i, 1-based.
  std::uint64_t weight(std::size_t i) const { return weights_.at(i - 1); }
  std::uint64_t sum() const noexcept { return sum_; }
  std::size_t size() const noexcept { return weights_.size(); }
  std::uint64_t max_weight() const noexcept;

  friend bool operator==(const WeightedDistribution&, const WeightedDistribution&) = default;

 private:
  std::vector<std::uint64_t> weights_;
  std::uint64_t sum_ = 0;
};

/// Shannon entropy in bits.
double entropy(const WeightedDistribution& dist);
/// Same quantity in extended precision, for comparisons against exact values.
long double entropy_precise(const WeightedDistribution& dist);

/// lcm over i of m / gcd(a_i, m): every a_i/m is a multiple of 1/Z iff this divides Z.
std::uint64_t reduced_modulus(const WeightedDistribution& dist);

/// Whitespace- or comma-separated positive decimal integers.
WeightedDistribution parse_weights(std::string_view text);

/// One distribution per line; blank lines and lines starting with '#' are skipped.
std::vector<WeightedDistribution> parse_weight_file(std::string_view contents);
std::vector<WeightedDistribution> read_weight_file(const std::filesystem::path& path);

/// Inverse of parse_weights: space-separated.
std::string format_weights(const WeightedDistribution& dist);

}  // namespace fldr
