#pragma once

// Test-only reference computations. Nothing here calls into the closed-form
// analysis in ddg.cpp; they share only the DdgTree level lists.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "fldr/bit_source.hpp"
#include "fldr/ddg.hpp"
#include "fldr/distribution.hpp"
#include "fldr/rational.hpp"

namespace fldr::oracle {

/// Uniformly random composition of m into n positive parts.
inline WeightedDistribution random_composition(std::size_t n, std::uint64_t m, std::mt19937_64& rng) {
  std::vector<std::uint64_t> cuts;
  std::uniform_int_distribution<std::uint64_t> pick(1, m - 1);
  std::map<std::uint64_t, bool> seen;
  while (cuts.size() + 1 < n) {
    const std::uint64_t c = pick(rng);
    if (!seen[c]) {
      seen[c] = true;
      cuts.push_back(c);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::uint64_t> w;
  std::uint64_t prev = 0;
  for (std::uint64_t c : cuts) {
    w.push_back(c - prev);
    prev = c;
  }
  w.push_back(m - prev);
  return WeightedDistribution(std::move(w));
}

/// Random distributions with n in [2, max_n] and m <= max_m.
inline std::vector<WeightedDistribution> random_corpus(std::size_t count, std::size_t max_n,
                                                       std::uint64_t max_m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<WeightedDistribution> out;
  out.reserve(count);
  while (out.size() < count) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, max_n)(rng);
    if (n > max_m) continue;
    const std::uint64_t m = std::uniform_int_distribution<std::uint64_t>(n, max_m)(rng);
    out.push_back(random_composition(n, m, rng));
  }
  return out;
}

/// Explicit node graph of a DdgTree: every node is a struct with child
/// links; back-edges and restarts are links to earlier nodes.
class ExplicitTree {
 public:
  struct Node {
    bool leaf = false;
    std::uint32_t label = 0;
    std::array<int, 2> child{-1, -1};
  };

  explicit ExplicitTree(const DdgTree& tree) : n_(tree.outcomes()) {
    nodes_.push_back({});  // root
    if (tree.depth() == 0) {
      nodes_[0].leaf = true;
      nodes_[0].label = 1;
      return;
    }
    std::vector<std::vector<int>> internal_by_level(tree.depth() + 1);
    internal_by_level[0] = {0};
    std::vector<std::pair<int, int>> pending_stubs;  // (parent, side) at the last level
    for (std::size_t j = 1; j <= tree.depth(); ++j) {
      const auto labels = tree.level(j);
      std::size_t pos = 0;
      for (int parent : internal_by_level[j - 1]) {
        for (int side = 0; side < 2; ++side, ++pos) {
          if (pos < labels.size()) {
            if (labels[pos] == tree.restart_label()) {
              nodes_[parent].child[side] = 0;
              restart_links_.push_back({parent, side});
              continue;
            }
            Node leaf;
            leaf.leaf = true;
            leaf.label = labels[pos];
            nodes_.push_back(leaf);
            nodes_[parent].child[side] = static_cast<int>(nodes_.size() - 1);
          } else if (j == tree.depth()) {
            pending_stubs.push_back({parent, side});
          } else {
            nodes_.push_back({});
            nodes_[parent].child[side] = static_cast<int>(nodes_.size() - 1);
            internal_by_level[j].push_back(static_cast<int>(nodes_.size() - 1));
          }
        }
      }
    }
    const auto& targets = internal_by_level[tree.back_level()];
    if (pending_stubs.size() != (tree.has_back_edge() ? targets.size() : 0)) {
      throw std::logic_error("oracle: stub count mismatch");
    }
    for (std::size_t s = 0; s < pending_stubs.size(); ++s) {
      nodes_[pending_stubs[s].first].child[pending_stubs[s].second] = targets[s];
      back_links_.push_back({pending_stubs[s].first, pending_stubs[s].second});
    }
  }

  const std::vector<Node>& nodes() const { return nodes_; }

  /// Outcome probabilities and expected flips. Paths are enumerated by DFS
  /// from each re-entry node until they hit a leaf or a back link; the
  /// resulting linear system over re-entry nodes is solved by Gauss-Jordan.
  std::pair<std::vector<Rational>, Rational> solve() const {
    if (nodes_[0].leaf) return {{Rational(1)}, Rational(0)};
    std::vector<int> entries{0};
    std::map<int, std::size_t> entry_index{{0, 0}};
    for (auto [parent, side] : back_links_) {
      const int t = nodes_[parent].child[side];
      if (!entry_index.count(t)) {
        entry_index[t] = entries.size();
        entries.push_back(t);
      }
    }
    const std::size_t e = entries.size();
    const std::size_t cols = e + n_ + 1;  // unknown coefficients | outcome rhs | cost rhs
    // Row r: x_r - sum_t T[r][t] x_t = out_r (vector of outcome masses and cost).
    std::vector<std::vector<Rational>> rows(e, std::vector<Rational>(cols));
    for (std::size_t r = 0; r < e; ++r) {
      rows[r][r] += 1;
      std::function<void(int, unsigned, const Rational&)> walk = [&](int node, unsigned len,
                                                                      const Rational& mass) {
        for (int side = 0; side < 2; ++side) {
          const int c = nodes_[node].child[side];
          const Rational child_mass = mass / 2;
          const bool is_link = is_back(node, side);
          if (is_link) {
            rows[r][entry_index.at(c)] -= child_mass;
            rows[r][cols - 1] += child_mass * (len + 1);
          } else if (nodes_[c].leaf) {
            rows[r][e + nodes_[c].label - 1] += child_mass;
            rows[r][cols - 1] += child_mass * (len + 1);
          } else {
            walk(c, len + 1, child_mass);
          }
        }
      };
      walk(entries[r], 0, Rational(1));
    }
    for (std::size_t col = 0; col < e; ++col) {
      std::size_t piv = col;
      while (rows[piv][col] == 0) ++piv;
      std::swap(rows[piv], rows[col]);
      const Rational inv = 1 / rows[col][col];
      for (auto& v : rows[col]) v *= inv;
      for (std::size_t r = 0; r < e; ++r) {
        if (r == col || rows[r][col] == 0) continue;
        const Rational f = rows[r][col];
        for (std::size_t c = 0; c < cols; ++c) rows[r][c] -= f * rows[col][c];
      }
    }
    std::vector<Rational> probs(rows[0].begin() + static_cast<std::ptrdiff_t>(e),
                                rows[0].begin() + static_cast<std::ptrdiff_t>(e + n_));
    return {probs, rows[0][cols - 1]};
  }

 private:
  bool is_back(int node, int side) const {
    for (auto [p, s] : back_links_) {
      if (p == node && s == side) return true;
    }
    for (auto [p, s] : restart_links_) {
      if (p == node && s == side) return true;
    }
    return false;
  }

  std::size_t n_;
  std::vector<Node> nodes_;
  std::vector<std::pair<int, int>> back_links_;
  std::vector<std::pair<int, int>> restart_links_;
};

/// Runs `draw` on every bit string of length `length` through a replay
/// source. resolved[i-1] is the mass of strings that returned i before
/// running out; `open` is the mass that ran out. Exact lower/upper bounds.
struct PathMass {
  std::vector<Rational> resolved;
  Rational open;
};

template <typename Draw>
PathMass enumerate_paths(std::size_t n, unsigned length, Draw draw) {
  PathMass pm{std::vector<Rational>(n), Rational(0)};
  const Rational unit = ratio(1, pow2(length));
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << length); ++s) {
    std::vector<std::uint8_t> bits(length);
    for (unsigned b = 0; b < length; ++b) bits[b] = (s >> (length - 1 - b)) & 1;
    ReplayBitSource src(std::move(bits));
    try {
      pm.resolved[draw(src) - 1] += unit;
    } catch (const ScriptExhausted&) {
      pm.open += unit;
    }
  }
  return pm;
}

/// First `count` binary digits of a/m by long division.
inline std::vector<std::uint8_t> long_division_digits(std::uint64_t a, std::uint64_t m,
                                                      std::size_t count) {
  std::vector<std::uint8_t> out;
  unsigned __int128 r = a;
  for (std::size_t j = 0; j < count; ++j) {
    r *= 2;
    out.push_back(r >= m ? 1 : 0);
    if (r >= m) r -= m;
  }
  return out;
}

/// Smallest k and, at that k, the largest l with M | Z_kl, by direct scan
/// over k ascending and l = k, k-1, ..., 0.
inline std::pair<std::uint64_t, std::uint64_t> scan_minimal_depth(std::uint64_t modulus) {
  std::vector<std::uint64_t> pw{1 % modulus};  // pw[j] = 2^j mod M
  for (std::uint64_t k = 1;; ++k) {
    pw.push_back(pw.back() * 2 % modulus);
    if (pw[k] == 0) return {k, k};
    for (std::uint64_t l = k; l-- > 0;) {
      if ((pw[k] + modulus - pw[l]) % modulus == 0) return {k, l};
    }
  }
}

}  // namespace fldr::oracle
