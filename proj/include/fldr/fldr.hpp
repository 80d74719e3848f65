#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fldr/bit_source.hpp"
#include "fldr/ddg.hpp"
#include "fldr/distribution.hpp"
#include "fldr/rational.hpp"

namespace fldr {

/// Preprocessed Fast Loaded Dice Roller.
///
/// The proposal appends a reject outcome n+1 with weight 2^k - m so that the
/// weights sum to 2^k, k = ceil(log2 m). Column j of the label matrix lists,
/// in ascending order, the outcomes whose bit k-1-j is set; h[j] is the
/// column length. Unused cells hold 0.
class FldrTable {
 public:
  FldrTable(std::size_t outcomes, std::uint64_t sum, unsigned depth,
            std::vector<std::uint32_t> h, std::vector<std::uint32_t> labels);

  std::size_t outcomes() const noexcept { return n_; }
  std::uint64_t sum() const noexcept { return m_; }
  unsigned depth() const noexcept { return k_; }
  std::uint64_t reject_weight() const noexcept {
    return k_ == 0 ? 0 : (std::uint64_t{1} << k_) - m_;
  }
  std::span<const std::uint32_t> h() const noexcept { return h_; }
  /// H[d][j]; 0 for unused cells.
  std::uint32_t label(std::size_t d, std::size_t j) const { return labels_[d * k_ + j]; }
  /// The first h[j] entries of column j.
  std::vector<std::uint32_t> column(std::size_t j) const;
  std::size_t memory_bytes() const noexcept {
    return (h_.size() + labels_.size()) * sizeof(std::uint32_t);
  }

  template <FlipSource S>
  std::uint32_t sample(S& source) const;

  friend bool operator==(const FldrTable&, const FldrTable&) = default;

 private:
  std::size_t n_;
  std::uint64_t m_;
  unsigned k_;
  std::vector<std::uint32_t> h_;
  std::vector<std::uint32_t> labels_;  // (n+1) x k, row-major in d
};

/// Builds the (h, H) tables; levels are filled in parallel. Requires m <= 2^62.
/// A single-outcome distribution yields the depth-0 table, which draws no bits.
FldrTable fldr_preprocess(const WeightedDistribution& dist);
/// Single-threaded reference for fldr_preprocess.
FldrTable fldr_preprocess_serial(const WeightedDistribution& dist);

template <FlipSource S>
std::uint32_t fldr_sample(const FldrTable& table, S& source) {
  return table.sample(source);
}

/// Node count of the proposal tree, 2 * (sum of h) - 1.
std::uint64_t fldr_node_count(const FldrTable& table);
/// 2 (n+1) ceil(log2 m).
std::uint64_t fldr_node_bound(const FldrTable& table);

/// Explicit tree whose level j holds column j-1; reject leaves restart at the root.
DdgTree fldr_as_ddg(const FldrTable& table);

/// Entropy gap of FLDR split into its three analytic terms.
///
/// gap = term1 + term2 + term3, with term1 = log2(2^k/m),
/// term2 = (2^k-m)/m log2(2^k/(2^k-m)) and term3 = (2^k/m) t_q, where t_q is
/// the optimal proposal tree's excess over H(q). `expected_bits` is exact.
struct GapDecomposition {
  long double entropy = 0;
  long double term1 = 0;
  long double term2 = 0;
  long double term3_coeff = 0;
  long double proposal_excess = 0;  // t_q
  long double term3 = 0;
  Rational expected_bits;
  long double gap = 0;  // expected_bits - entropy
};

/// Requires n > 1.
GapDecomposition entropy_gap(const WeightedDistribution& dist);

/// `k reject_weight`, `h: ...`, then `col j: labels` per column.
std::string dump(const FldrTable& table);

template <FlipSource S>
std::uint32_t FldrTable::sample(S& source) const {
  if (k_ == 0) return 1;
  std::uint64_t d = 0;
  std::size_t c = 0;
  for (;;) {
    const unsigned b = source.flip();
    d = 2 * d + (1 - b);
    if (d < h_[c]) {
      const std::uint32_t x = labels_[d * k_ + c];
      if (x <= n_) return x;
      d = 0;
      c = 0;
    } else {
      d -= h_[c];
      ++c;
    }
  }
}

}  // namespace fldr
