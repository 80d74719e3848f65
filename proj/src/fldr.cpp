#include "fldr/fldr.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fldr {

FldrTable::FldrTable(std::size_t outcomes, std::uint64_t sum, unsigned depth,
                     std::vector<std::uint32_t> h, std::vector<std::uint32_t> labels)
    : n_(outcomes), m_(sum), k_(depth), h_(std::move(h)), labels_(std::move(labels)) {
  if (h_.size() != k_ || labels_.size() != (n_ + 1) * k_) {
    throw std::invalid_argument("FldrTable: table shape does not match (n+1) x k");
  }
}

std::vector<std::uint32_t> FldrTable::column(std::size_t j) const {
  std::vector<std::uint32_t> out(h_.at(j));
  for (std::size_t d = 0; d < out.size(); ++d) out[d] = label(d, j);
  return out;
}

namespace {

struct Shape {
  std::size_t n;
  unsigned k;
  std::vector<std::uint64_t> weights;  // a_1..a_n, a_{n+1}
};

Shape proposal_shape(const WeightedDistribution& dist) {
  constexpr std::uint64_t kMax = std::uint64_t{1} << 62;
  const std::uint64_t m = dist.sum();
  if (m > kMax) throw std::overflow_error("fldr_preprocess: m exceeds 2^62");
  if (dist.size() >= std::numeric_limits<std::uint32_t>::max()) {
    throw std::overflow_error("fldr_preprocess: too many outcomes for 32-bit labels");
  }
  Shape s;
  s.n = dist.size();
  // A single outcome needs no bits; otherwise every a_i < m <= 2^k fits in k bits.
  s.k = s.n == 1 ? 0 : static_cast<unsigned>(std::bit_width(m - 1));
  s.weights.assign(dist.weights().begin(), dist.weights().end());
  s.weights.push_back((std::uint64_t{1} << s.k) - m);
  return s;
}

// One column of the label matrix: outcomes whose bit (k-1-j) is set.
void fill_level(const Shape& s, std::size_t j, std::vector<std::uint32_t>& h,
                std::vector<std::uint32_t>& labels) {
  std::uint32_t d = 0;
  for (std::size_t i = 1; i <= s.n + 1; ++i) {
    const bool w = (s.weights[i - 1] >> ((s.k - 1) - j)) & 1u;
    if (w) {
      labels[d * s.k + j] = static_cast<std::uint32_t>(i);
      ++d;
    }
  }
  h[j] = d;
}

}  // namespace

FldrTable fldr_preprocess_serial(const WeightedDistribution& dist) {
  const Shape s = proposal_shape(dist);
  std::vector<std::uint32_t> h(s.k, 0);
  std::vector<std::uint32_t> labels((s.n + 1) * s.k, 0);
  for (std::size_t j = 0; j < s.k; ++j) fill_level(s, j, h, labels);
  return FldrTable(s.n, dist.sum(), s.k, std::move(h), std::move(labels));
}

FldrTable fldr_preprocess(const WeightedDistribution& dist) {
  const Shape s = proposal_shape(dist);
  std::vector<std::uint32_t> h(s.k, 0);
  std::vector<std::uint32_t> labels((s.n + 1) * s.k, 0);
  const auto levels = static_cast<std::int64_t>(s.k);
  // Columns are disjoint, so levels fill independently.
#pragma omp parallel for schedule(static) if (s.n * s.k > 1 << 14)
  for (std::int64_t j = 0; j < levels; ++j) {
    fill_level(s, static_cast<std::size_t>(j), h, labels);
  }
  return FldrTable(s.n, dist.sum(), s.k, std::move(h), std::move(labels));
}

std::uint64_t fldr_node_count(const FldrTable& table) {
  std::uint64_t leaves = 0;
  for (std::uint32_t c : table.h()) leaves += c;
  return leaves == 0 ? 1 : 2 * leaves - 1;
}

std::uint64_t fldr_node_bound(const FldrTable& table) {
  return 2 * (table.outcomes() + 1) * table.depth();
}

namespace {

std::vector<std::vector<std::uint32_t>> table_levels(const FldrTable& table) {
  std::vector<std::vector<std::uint32_t>> levels(table.depth());
  for (std::size_t j = 0; j < table.depth(); ++j) levels[j] = table.column(j);
  return levels;
}

}  // namespace

DdgTree fldr_as_ddg(const FldrTable& table) {
  if (table.depth() == 0) return DdgTree(1, {}, 0);
  return DdgTree(table.outcomes(), table_levels(table), table.depth());
}

GapDecomposition entropy_gap(const WeightedDistribution& dist) {
  if (dist.size() < 2) throw std::invalid_argument("entropy_gap: needs at least two outcomes");
  const FldrTable table = fldr_preprocess(dist);
  const unsigned k = table.depth();
  const long double m = static_cast<long double>(dist.sum());
  const long double top = std::ldexp(1.0L, static_cast<int>(k));
  const long double reject = static_cast<long double>(table.reject_weight());

  GapDecomposition g;
  g.entropy = entropy_precise(dist);
  g.term1 = std::log2(top / m);
  g.term2 = reject == 0 ? 0.0L : (reject / m) * std::log2(top / reject);
  g.term3_coeff = top / m;

  // The proposal tree alone: outcome n+1 is an ordinary leaf there.
  const DdgTree proposal(table.outcomes() + 1, table_levels(table), k);
  long double proposal_entropy = 0;
  for (std::uint64_t a : dist.weights()) {
    proposal_entropy += static_cast<long double>(a) / top * std::log2(top / static_cast<long double>(a));
  }
  if (reject > 0) proposal_entropy += reject / top * std::log2(top / reject);
  g.proposal_excess = to_long_double(expected_bits(proposal)) - proposal_entropy;
  g.term3 = g.term3_coeff * g.proposal_excess;

  g.expected_bits = expected_bits(fldr_as_ddg(table));
  g.gap = to_long_double(g.expected_bits) - g.entropy;
  return g;
}

std::string dump(const FldrTable& table) {
  std::ostringstream out;
  out << table.depth() << ' ' << table.reject_weight() << '\n';
  out << "h:";
  for (std::uint32_t c : table.h()) out << ' ' << c;
  out << '\n';
  for (std::size_t j = 0; j < table.depth(); ++j) {
    out << "col " << j << ':';
    for (std::uint32_t x : table.column(j)) out << ' ' << x;
    out << '\n';
  }
  return out.str();
}

}  // namespace fldr
