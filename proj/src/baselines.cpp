#include "fldr/baselines.hpp"

#include <string>

namespace fldr {

LookupTable::LookupTable(const WeightedDistribution& dist, std::uint64_t max_entries)
    : k_(static_cast<unsigned>(std::bit_width(dist.sum() - 1))) {
  if (dist.sum() > max_entries) {
    throw MemoryCapExceeded("lookup table needs " + std::to_string(dist.sum()) +
                            " entries, cap is " + std::to_string(max_entries));
  }
  entries_.reserve(dist.sum());
  for (std::size_t i = 1; i <= dist.size(); ++i) {
    entries_.insert(entries_.end(), dist.weight(i), static_cast<std::uint32_t>(i));
  }
}

CumulativeTable::CumulativeTable(const WeightedDistribution& dist)
    : k_(static_cast<unsigned>(std::bit_width(dist.sum() - 1))) {
  cumulative_.reserve(dist.size());
  std::uint64_t running = 0;
  for (std::uint64_t a : dist.weights()) {
    running += a;
    cumulative_.push_back(running);
  }
}

AliasTable::AliasTable(const WeightedDistribution& dist)
    : m_(dist.sum()), keep_(dist.size(), 0), alias_(dist.size(), 0) {
  using Wide = unsigned __int128;
  const std::size_t n = dist.size();
  std::vector<Wide> scaled(n);
  std::vector<std::uint32_t> small, large;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = static_cast<Wide>(dist.weights()[i]) * n;
    (scaled[i] < m_ ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back();
    small.pop_back();
    const std::uint32_t g = large.back();
    keep_[s] = static_cast<std::uint64_t>(scaled[s]);
    alias_[s] = g + 1;
    scaled[g] -= m_ - scaled[s];
    if (scaled[g] < m_) {
      large.pop_back();
      small.push_back(g);
    }
  }
  // Leftovers are full buckets: integer arithmetic leaves them at exactly m.
  for (std::uint32_t i : large) {
    keep_[i] = m_;
    alias_[i] = i + 1;
  }
  for (std::uint32_t i : small) {
    keep_[i] = m_;
    alias_[i] = i + 1;
  }
}

}  // namespace fldr
