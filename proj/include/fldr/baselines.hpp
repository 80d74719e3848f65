#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fldr/bit_source.hpp"
#include "fldr/distribution.hpp"

namespace fldr {

/// Uniform over 1..n using the fewest flips on average (Lumbroso's Fast Dice Roller).
template <FlipSource S>
std::uint64_t fast_dice_roller(std::uint64_t n, S& source) {
  if (n == 0) throw std::invalid_argument("fast_dice_roller: n must be positive");
  if (n == 1) return 1;
  std::uint64_t v = 1;
  std::uint64_t c = 0;
  for (;;) {
    v <<= 1;
    c = (c << 1) | source.flip();
    if (v >= n) {
      if (c < n) return c + 1;
      v -= n;
      c -= n;
    }
  }
}

/// Returns 1 with probability a/b by comparing fresh flips against the
/// lazily generated binary digits of a/b. Expected flips are at most 2.
template <FlipSource S>
unsigned bernoulli(std::uint64_t a, std::uint64_t b, S& source) {
  if (b == 0 || a > b) throw std::invalid_argument("bernoulli: need 0 <= a <= b, b >= 1");
  if (a == 0) return 0;
  if (a == b) return 1;
  // a < b <= 2^63 keeps 2a in range.
  for (;;) {
    a <<= 1;
    const unsigned digit = a >= b ? 1u : 0u;
    if (digit) a -= b;
    const unsigned bit = source.flip();
    if (bit < digit) return 1;
    if (bit > digit) return 0;
    // Equal so far and no digits left: the uniform can only tie or exceed.
    if (a == 0) return 0;
  }
}

/// Thrown when a lookup table would exceed the configured entry cap.
class MemoryCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejection with a uniform proposal, accepting i with probability a_i / max(a).
class UniformRejectionSampler {
 public:
  explicit UniformRejectionSampler(const WeightedDistribution& dist)
      : weights_(dist.weights().begin(), dist.weights().end()), max_(dist.max_weight()) {}

  template <FlipSource S>
  std::uint32_t sample(S& source) const {
    for (;;) {
      const std::uint64_t i = fast_dice_roller(weights_.size(), source);
      if (bernoulli(weights_[i - 1], max_, source)) return static_cast<std::uint32_t>(i);
    }
  }

  std::uint64_t max_weight() const noexcept { return max_; }
  std::size_t memory_bytes() const noexcept {
    return (weights_.size() + 1) * sizeof(std::uint64_t);
  }

 private:
  std::vector<std::uint64_t> weights_;
  std::uint64_t max_;
};

/// Dyadic-proposal rejection through a size-m table holding a_i copies of i,
/// outcome i occupying positions [a_1 + .. + a_{i-1}, a_1 + .. + a_i).
class LookupTable {
 public:
  static constexpr std::uint64_t kDefaultCap = std::uint64_t{1} << 28;

  explicit LookupTable(const WeightedDistribution& dist, std::uint64_t max_entries = kDefaultCap);

  template <FlipSource S>
  std::uint32_t sample(S& source) const {
    for (;;) {
      const std::uint64_t w = draw_bits(source, k_);
      if (w < entries_.size()) return entries_[w];
    }
  }

  unsigned depth() const noexcept { return k_; }
  const std::vector<std::uint32_t>& entries() const noexcept { return entries_; }
  std::size_t memory_bytes() const noexcept { return entries_.size() * sizeof(std::uint32_t); }

 private:
  unsigned k_;
  std::vector<std::uint32_t> entries_;
};

/// Dyadic-proposal rejection with binary search over cumulative weights.
class CumulativeTable {
 public:
  explicit CumulativeTable(const WeightedDistribution& dist);

  template <FlipSource S>
  std::uint32_t sample(S& source) const {
    const std::uint64_t m = cumulative_.back();
    for (;;) {
      const std::uint64_t w = draw_bits(source, k_);
      if (w < m) return lookup(w);
    }
  }

  /// min { j : w < T[j] }, 1-based; requires w < m.
  std::uint32_t lookup(std::uint64_t w) const {
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), w);
    return static_cast<std::uint32_t>(it - cumulative_.begin()) + 1;
  }

  unsigned depth() const noexcept { return k_; }
  const std::vector<std::uint64_t>& cumulative() const noexcept { return cumulative_; }
  std::size_t memory_bytes() const noexcept { return cumulative_.size() * sizeof(std::uint64_t); }

 private:
  unsigned k_;
  std::vector<std::uint64_t> cumulative_;
};

/// Integer alias table over scaled weights n a_i with bucket capacity m.
/// Bucket u keeps u with probability keep[u]/m and otherwise yields alias[u].
class AliasTable {
 public:
  explicit AliasTable(const WeightedDistribution& dist);

  template <FlipSource S>
  std::uint32_t sample(S& source) const {
    const std::uint64_t u = fast_dice_roller(keep_.size(), source);
    return bernoulli(keep_[u - 1], m_, source) ? static_cast<std::uint32_t>(u) : alias_[u - 1];
  }

  std::uint64_t sum() const noexcept { return m_; }
  const std::vector<std::uint64_t>& keep() const noexcept { return keep_; }
  const std::vector<std::uint32_t>& alias() const noexcept { return alias_; }
  std::size_t memory_bytes() const noexcept {
    return keep_.size() * sizeof(std::uint64_t) + alias_.size() * sizeof(std::uint32_t);
  }

 private:
  std::uint64_t m_;
  std::vector<std::uint64_t> keep_;
  std::vector<std::uint32_t> alias_;
};

inline LookupTable lookup_build(const WeightedDistribution& dist,
                                std::uint64_t max_entries = LookupTable::kDefaultCap) {
  return LookupTable(dist, max_entries);
}
inline CumulativeTable cumulative_build(const WeightedDistribution& dist) {
  return CumulativeTable(dist);
}
inline AliasTable alias_build(const WeightedDistribution& dist) { return AliasTable(dist); }

template <FlipSource S>
std::uint32_t lookup_sample(const LookupTable& t, S& source) { return t.sample(source); }
template <FlipSource S>
std::uint32_t cumulative_sample(const CumulativeTable& t, S& source) { return t.sample(source); }
template <FlipSource S>
std::uint32_t alias_sample(const AliasTable& t, S& source) { return t.sample(source); }
template <FlipSource S>
std::uint32_t rejection_uniform_sample(const WeightedDistribution& dist, S& source) {
  return UniformRejectionSampler(dist).sample(source);
}

}  // namespace fldr
