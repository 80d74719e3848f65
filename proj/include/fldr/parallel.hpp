#pragma once

#include <cstdint>
#include <vector>

#include "fldr/sampler.hpp"
#include "fldr/stats.hpp"

namespace fldr {

// OpenMP kernels. Each has a *_serial twin that computes the identical
// result on one thread; the tests hold the two equal.

/// Seed of chunk `index` derived from a run seed.
std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t index);

/// Splits `count` draws into `chunks` fixed slices, each with its own
/// BitSource seeded by chunk_seed, and merges the tallies. The result depends
/// only on (seed, chunks), never on the thread count.
SampleReport sample_chunked(const Sampler& sampler, std::uint64_t count, std::uint64_t seed,
                            std::uint64_t chunks);
SampleReport sample_chunked_serial(const Sampler& sampler, std::uint64_t count,
                                   std::uint64_t seed, std::uint64_t chunks);

/// Depth of the entropy-optimal and FLDR trees for (1, m-1).
struct DepthRow {
  std::uint64_t m = 0;
  std::uint64_t ky_depth = 0;
  std::uint64_t fldr_depth = 0;

  friend bool operator==(const DepthRow&, const DepthRow&) = default;
};

/// Rows for m = 3..m_max. Requires 3 <= m_max <= 10^5 unless `unbounded`.
std::vector<DepthRow> depth_scan(std::uint64_t m_max, bool unbounded = false);
std::vector<DepthRow> depth_scan_serial(std::uint64_t m_max, bool unbounded = false);

/// Gap terms for (1, m-1) with m in (2^(k-1), 2^k].
struct GapRow {
  std::uint64_t m = 0;
  long double term1 = 0;
  long double term2 = 0;
  long double term3 = 0;
  Rational expected_bits;
  long double exact_gap = 0;

  friend bool operator==(const GapRow&, const GapRow&) = default;
};

/// Requires 2 <= k <= 20.
std::vector<GapRow> gap_scan(unsigned k);
std::vector<GapRow> gap_scan_serial(unsigned k);

}  // namespace fldr
