#include "fldr/ddg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fldr/number_theory.hpp"

namespace fldr {

long double to_long_double(const Rational& q) {
  const BigInt& num = q.get_num();
  const BigInt& den = q.get_den();
  if (num == 0) return 0.0L;
  // Scale so the integer quotient carries about 70 significant bits.
  const long shift = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) -
                     static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) + 70;
  BigInt scaled = num;
  if (shift > 0) scaled <<= static_cast<unsigned long>(shift);
  else scaled >>= static_cast<unsigned long>(-shift);
  BigInt quotient = scaled / den;
  const bool negative = quotient < 0;
  if (negative) quotient = -quotient;
  const BigInt high = quotient >> 64;
  const BigInt low = quotient - (high << 64);
  long double value = std::ldexp(static_cast<long double>(high.get_ui()), 64) +
                      static_cast<long double>(low.get_ui());
  if (negative) value = -value;
  return std::ldexp(value, static_cast<int>(-shift));
}

DdgTree::DdgTree(std::size_t outcomes, std::vector<std::vector<std::uint32_t>> levels,
                 std::size_t back_level)
    : n_(outcomes), back_level_(back_level) {
  if (n_ == 0) throw std::invalid_argument("DdgTree: no outcomes");
  const std::size_t k = levels.size();
  if (back_level_ > k) throw std::invalid_argument("DdgTree: back-edge level beyond depth");
  offsets_.reserve(k + 1);
  internal_.reserve(k + 1);
  offsets_.push_back(0);
  internal_.push_back(1);
  constexpr std::uint64_t kCap = std::uint64_t{1} << 62;
  for (std::size_t j = 1; j <= k; ++j) {
    const auto& lvl = levels[j - 1];
    for (std::size_t t = 0; t < lvl.size(); ++t) {
      if (lvl[t] == 0 || lvl[t] > n_ + 1) {
        throw std::invalid_argument("DdgTree: label out of range at level " + std::to_string(j));
      }
      if (t > 0 && lvl[t] <= lvl[t - 1]) {
        throw std::invalid_argument("DdgTree: labels not strictly ascending at level " +
                                    std::to_string(j));
      }
    }
    const std::uint64_t prev = internal_.back();
    if (prev > kCap) throw std::invalid_argument("DdgTree: level too wide");
    const std::uint64_t nodes = 2 * prev;
    if (lvl.size() > nodes) {
      throw std::invalid_argument("DdgTree: more leaves than nodes at level " + std::to_string(j));
    }
    internal_.push_back(nodes - lvl.size());
    labels_.insert(labels_.end(), lvl.begin(), lvl.end());
    offsets_.push_back(labels_.size());
  }
  if (k == 0) {
    if (n_ != 1) throw std::invalid_argument("DdgTree: depth 0 requires a single outcome");
    return;
  }
  const std::uint64_t stubs = internal_[k];
  if (back_level_ == k) {
    if (stubs != 0) throw std::invalid_argument("DdgTree: dangling internal nodes at last level");
  } else if (stubs == 0 || stubs != internal_[back_level_]) {
    throw std::invalid_argument("DdgTree: back-edge stubs do not match internal nodes of level " +
                                std::to_string(back_level_));
  }
}

std::size_t DdgTree::memory_bytes() const noexcept {
  return labels_.size() * sizeof(std::uint32_t) + offsets_.size() * sizeof(std::size_t) +
         internal_.size() * sizeof(std::uint64_t);
}

std::vector<std::uint8_t> expansion_digits(const BigInt& c, std::uint64_t k, std::uint64_t l) {
  BigInt digits;
  if (l == k) {
    digits = c;
  } else {
    // c = P (2^(k-l) - 1) + S with S < 2^(k-l) - 1; the digit string is P.S.
    const BigInt period = pow2(k - l) - 1;
    BigInt prefix, suffix;
    mpz_fdiv_qr(prefix.get_mpz_t(), suffix.get_mpz_t(), c.get_mpz_t(), period.get_mpz_t());
    if (prefix >= pow2(l)) throw std::logic_error("expansion_digits: prefix overflows l digits");
    digits = (prefix << static_cast<unsigned long>(k - l)) + suffix;
  }
  if (mpz_sizeinbase(digits.get_mpz_t(), 2) > k && digits != 0) {
    throw std::logic_error("expansion_digits: value exceeds k digits");
  }
  std::vector<std::uint8_t> out(k);
  for (std::uint64_t j = 1; j <= k; ++j) {
    out[j - 1] = static_cast<std::uint8_t>(mpz_tstbit(digits.get_mpz_t(), k - j));
  }
  return out;
}

DdgTree ky_construct(const WeightedDistribution& dist) {
  const std::size_t n = dist.size();
  if (n == 1) return DdgTree(1, {}, 0);
  const DepthWitness w = minimal_depth(reduced_modulus(dist));
  const std::uint64_t k = w.k;
  const std::uint64_t l = w.l;
  const BigInt z = l == k ? pow2(k) : pow2(k) - pow2(l);
  const BigInt m = big_from_u64(dist.sum());
  std::vector<std::vector<std::uint32_t>> levels(k);
  for (std::size_t i = 1; i <= n; ++i) {
    BigInt c = big_from_u64(dist.weight(i)) * z;
    BigInt rem;
    mpz_tdiv_qr(c.get_mpz_t(), rem.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (rem != 0) throw std::logic_error("ky_construct: a_i Z / m is not an integer");
    const auto digits = expansion_digits(c, k, l);
    for (std::uint64_t j = 1; j <= k; ++j) {
      if (digits[j - 1]) levels[j - 1].push_back(static_cast<std::uint32_t>(i));
    }
  }
  return DdgTree(n, std::move(levels), l);
}

namespace {

/// Sum over levels lo..hi of coeff(d) * 2^-d, by Horner's rule in integers.
template <typename Coeff>
Rational dyadic_sum(std::size_t lo, std::size_t hi, Coeff coeff) {
  if (lo > hi) return 0;
  BigInt acc = 0;
  for (std::size_t d = lo; d <= hi; ++d) {
    acc <<= 1;
    acc += coeff(d);
  }
  return ratio(acc, pow2(hi));
}

bool has_label(const DdgTree& tree, std::size_t d, std::uint32_t label) {
  const auto lvl = tree.level(d);
  return std::binary_search(lvl.begin(), lvl.end(), label);
}

}  // namespace

std::vector<Rational> output_distribution(const DdgTree& tree) {
  const std::size_t n = tree.outcomes();
  const std::size_t k = tree.depth();
  if (k == 0) return {Rational(1)};
  const std::size_t l = tree.back_level();
  const std::uint32_t restart = tree.restart_label();

  auto mass = [&](std::uint32_t label, std::size_t lo, std::size_t hi) {
    return dyadic_sum(lo, hi, [&](std::size_t d) { return has_label(tree, d, label) ? 1 : 0; });
  };

  // Leaf masses of one pass from the root, split at the back-edge level.
  const Rational restart_low = mass(restart, 1, l);
  const Rational restart_high = mass(restart, l + 1, k);
  std::vector<Rational> out(n);
  if (!tree.has_back_edge()) {
    const Rational accept = 1 - restart_low;
    for (std::size_t i = 1; i <= n; ++i) {
      out[i - 1] = mass(static_cast<std::uint32_t>(i), 1, k) / accept;
    }
    return out;
  }
  // Stub mass S re-enters level l, whose internal nodes carry mass lambda.
  const Rational stub = ratio(big_from_u64(tree.internal_count(k)), pow2(k));
  const Rational lambda = ratio(big_from_u64(tree.internal_count(l)), pow2(l));
  const Rational loop = stub / (lambda - stub);
  const Rational denom = 1 - restart_low - restart_high - loop * restart_high;
  for (std::size_t i = 1; i <= n; ++i) {
    const auto label = static_cast<std::uint32_t>(i);
    const Rational high = mass(label, l + 1, k);
    out[i - 1] = (mass(label, 1, l) + high + loop * high) / denom;
  }
  return out;
}

Rational expected_bits(const DdgTree& tree) {
  const std::size_t k = tree.depth();
  if (k == 0) return 0;
  const std::size_t l = tree.back_level();
  const std::uint32_t restart = tree.restart_label();

  auto count_at = [&](std::size_t d) { return BigInt(static_cast<unsigned long>(tree.leaf_count(d))); };
  auto restarts_at = [&](std::size_t d) { return has_label(tree, d, restart) ? 1 : 0; };

  const Rational stub = tree.has_back_edge()
                            ? ratio(big_from_u64(tree.internal_count(k)), pow2(k))
                            : Rational(0);
  // Cost of one pass from the root, and restart mass over the whole pass.
  const Rational pass_cost =
      dyadic_sum(1, k, [&](std::size_t d) -> BigInt { return count_at(d) * static_cast<unsigned long>(d); }) +
      stub * static_cast<unsigned long>(k);
  const Rational restart_all = dyadic_sum(1, k, restarts_at);
  if (!tree.has_back_edge()) return pass_cost / (1 - restart_all);

  const Rational lambda = ratio(big_from_u64(tree.internal_count(l)), pow2(l));
  // Cost of one pass from level l onward and restart mass below level l.
  const Rational tail_cost =
      dyadic_sum(l + 1, k,
                 [&](std::size_t d) -> BigInt { return count_at(d) * static_cast<unsigned long>(d - l); }) +
      stub * static_cast<unsigned long>(k - l);
  const Rational restart_tail = dyadic_sum(l + 1, k, restarts_at);
  const Rational loop = stub / (lambda - stub);
  return (pass_cost + loop * tail_cost) / (1 - restart_all - loop * restart_tail);
}

std::uint64_t node_count(const DdgTree& tree) {
  if (tree.depth() == 0) return 1;
  const std::uint64_t stubs = tree.has_back_edge() ? tree.internal_count(tree.depth()) : 0;
  return 2 * (tree.total_leaves() + stubs) - 1;
}

std::string dump(const DdgTree& tree) {
  std::ostringstream out;
  for (std::size_t j = 1; j <= tree.depth(); ++j) {
    out << "level " << j << ": [";
    const auto lvl = tree.level(j);
    for (std::size_t t = 0; t < lvl.size(); ++t) out << (t ? ", " : "") << lvl[t];
    out << "]\n";
  }
  out << "back-edge -> ";
  if (tree.has_back_edge()) out << tree.back_level();
  else out << "none";
  out << '\n';
  return out.str();
}

}  // namespace fldr
