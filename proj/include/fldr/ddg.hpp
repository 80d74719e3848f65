#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fldr/bit_source.hpp"
#include "fldr/distribution.hpp"
#include "fldr/rational.hpp"

namespace fldr {

/// A finitely encoded discrete distribution generating tree.
///
/// Level j (1..depth) lists the labels of the leaves at that level in
/// ascending order; they occupy the lowest node positions of the level and
/// the remaining nodes are internal. Label n+1 marks a restart leaf whose
/// edge returns to the root. When back_level < depth, the internal nodes
/// left over at the deepest level are back-edge stubs: stub s re-enters the
/// s-th internal node of level back_level. Walking uses 0 = left, 1 = right.
class DdgTree {
 public:
  /// Validates realizability, label ranges, one leaf per label per level and
  /// that stubs at the deepest level match the internal nodes they re-enter.
  /// Throws std::invalid_argument otherwise.
  DdgTree(std::size_t outcomes, std::vector<std::vector<std::uint32_t>> levels,
          std::size_t back_level);

  std::size_t outcomes() const noexcept { return n_; }
  std::size_t depth() const noexcept { return offsets_.size() - 1; }
  std::size_t back_level() const noexcept { return back_level_; }
  bool has_back_edge() const noexcept { return back_level_ < depth(); }
  std::uint32_t restart_label() const noexcept { return static_cast<std::uint32_t>(n_ + 1); }

  /// Leaf labels at level j, 1 <= j <= depth.
  std::span<const std::uint32_t> level(std::size_t j) const {
    return {labels_.data() + offsets_[j - 1], offsets_[j] - offsets_[j - 1]};
  }
  std::size_t leaf_count(std::size_t j) const { return offsets_[j] - offsets_[j - 1]; }
  /// Internal nodes at level j, 0 <= j <= depth (level 0 is the root).
  std::uint64_t internal_count(std::size_t j) const { return internal_[j]; }
  std::size_t total_leaves() const noexcept { return labels_.size(); }
  std::size_t memory_bytes() const noexcept;

  template <FlipSource S>
  std::uint32_t sample(S& source) const;

  friend bool operator==(const DdgTree&, const DdgTree&) = default;

 private:
  std::size_t n_;
  std::size_t back_level_;
  std::vector<std::uint32_t> labels_;
  std::vector<std::size_t> offsets_;    // depth+1 entries
  std::vector<std::uint64_t> internal_;  // depth+1 entries
};

/// Entropy-optimal (Knuth-Yao) tree built from the binary expansions of a_i/m.
/// n == 1 yields the depth-0 tree.
DdgTree ky_construct(const WeightedDistribution& dist);

/// Root walk over the encoded tree; returns a 1-based outcome.
template <FlipSource S>
std::uint32_t ky_sample(const DdgTree& tree, S& source) {
  return tree.sample(source);
}

/// Exact probability of each outcome, back-edge loops solved in closed form.
std::vector<Rational> output_distribution(const DdgTree& tree);

/// Exact expected number of flips per returned sample.
Rational expected_bits(const DdgTree& tree);

/// Nodes of the finite encoding, counting back-edge stubs as leaves: 2 s - 1.
std::uint64_t node_count(const DdgTree& tree);

/// `level j: [labels]` per level followed by `back-edge -> l` (or `none`).
std::string dump(const DdgTree& tree);

/// Digits 1..k of the binary expansion of a_i/m written as an l-digit prefix
/// and a repeating (k-l)-digit suffix, recovered from c = a_i Z_kl / m.
/// Exposed for tests.
std::vector<std::uint8_t> expansion_digits(const BigInt& c, std::uint64_t k, std::uint64_t l);

template <FlipSource S>
std::uint32_t DdgTree::sample(S& source) const {
  const std::size_t k = depth();
  if (k == 0) return 1;
  std::uint64_t internal_index = 0;
  std::size_t j = 0;
  for (;;) {
    const std::uint64_t pos = 2 * internal_index + source.flip();
    ++j;
    const std::size_t leaves = offsets_[j] - offsets_[j - 1];
    if (pos < leaves) {
      const std::uint32_t label = labels_[offsets_[j - 1] + pos];
      if (label <= n_) return label;
      internal_index = 0;
      j = 0;
      continue;
    }
    internal_index = pos - leaves;
    if (j == k) j = back_level_;
  }
}

}  // namespace fldr
