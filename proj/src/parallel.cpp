#include "fldr/parallel.hpp"

#include <array>
#include <bit>
#include <exception>
#include <random>
#include <stdexcept>
#include <string>

#include "fldr/number_theory.hpp"

namespace fldr {

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  const std::uint64_t s = (std::uint64_t{out[0]} << 32) | out[1];
  return s == 0 ? 1 : s;
}

namespace {

std::uint64_t slice(std::uint64_t count, std::uint64_t chunks, std::uint64_t c) {
  return count / chunks + (c < count % chunks ? 1 : 0);
}

SampleReport run_chunk(const Sampler& sampler, std::uint64_t count, std::uint64_t seed,
                       std::uint64_t chunks, std::uint64_t c) {
  BitSource source(chunk_seed(seed, c));
  return run_sampler(sampler, slice(count, chunks, c), source);
}

void check_chunks(std::uint64_t chunks) {
  if (chunks == 0) throw std::invalid_argument("sample_chunked: chunks must be positive");
}

// Rethrows the first exception raised inside an OpenMP region.
class ErrorSlot {
 public:
  template <typename F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
#pragma omp critical(fldr_error_slot)
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

}  // namespace

SampleReport sample_chunked_serial(const Sampler& sampler, std::uint64_t count,
                                   std::uint64_t seed, std::uint64_t chunks) {
  check_chunks(chunks);
  SampleReport total;
  total.counts.assign(sampler.outcomes(), 0);
  for (std::uint64_t c = 0; c < chunks; ++c) total.merge(run_chunk(sampler, count, seed, chunks, c));
  return total;
}

SampleReport sample_chunked(const Sampler& sampler, std::uint64_t count, std::uint64_t seed,
                            std::uint64_t chunks) {
  check_chunks(chunks);
  std::vector<SampleReport> parts(chunks);
  ErrorSlot errors;
  const auto n_chunks = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < n_chunks; ++c) {
    errors.run([&] {
      parts[static_cast<std::size_t>(c)] =
          run_chunk(sampler, count, seed, chunks, static_cast<std::uint64_t>(c));
    });
  }
  errors.rethrow();
  SampleReport total;
  total.counts.assign(sampler.outcomes(), 0);
  for (const auto& p : parts) total.merge(p);
  return total;
}

namespace {

void check_depth_range(std::uint64_t m_max, bool unbounded) {
  if (m_max < 3 || (!unbounded && m_max > 100000)) {
    throw std::out_of_range("depth_scan: m_max must lie in [3, 100000]");
  }
}

DepthRow depth_row(std::uint64_t m) {
  const WeightedDistribution dist({1, m - 1});
  return {m, minimal_depth(reduced_modulus(dist)).k, fldr_preprocess_serial(dist).depth()};
}

void check_gap_k(unsigned k) {
  if (k < 2 || k > 20) throw std::out_of_range("gap_scan: k must lie in [2, 20]");
}

GapRow gap_row(std::uint64_t m) {
  const GapDecomposition g = entropy_gap(WeightedDistribution({1, m - 1}));
  return {m, g.term1, g.term2, g.term3, g.expected_bits, g.gap};
}

}  // namespace

std::vector<DepthRow> depth_scan_serial(std::uint64_t m_max, bool unbounded) {
  check_depth_range(m_max, unbounded);
  std::vector<DepthRow> rows;
  rows.reserve(m_max - 2);
  for (std::uint64_t m = 3; m <= m_max; ++m) rows.push_back(depth_row(m));
  return rows;
}

std::vector<DepthRow> depth_scan(std::uint64_t m_max, bool unbounded) {
  check_depth_range(m_max, unbounded);
  std::vector<DepthRow> rows(m_max - 2);
  const auto count = static_cast<std::int64_t>(rows.size());
  ErrorSlot errors;
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t t = 0; t < count; ++t) {
    errors.run([&] { rows[static_cast<std::size_t>(t)] = depth_row(static_cast<std::uint64_t>(t) + 3); });
  }
  errors.rethrow();
  return rows;
}

std::vector<GapRow> gap_scan_serial(unsigned k) {
  check_gap_k(k);
  const std::uint64_t lo = (std::uint64_t{1} << (k - 1)) + 1;
  const std::uint64_t hi = std::uint64_t{1} << k;
  std::vector<GapRow> rows;
  rows.reserve(hi - lo + 1);
  for (std::uint64_t m = lo; m <= hi; ++m) rows.push_back(gap_row(m));
  return rows;
}

std::vector<GapRow> gap_scan(unsigned k) {
  check_gap_k(k);
  const std::uint64_t lo = (std::uint64_t{1} << (k - 1)) + 1;
  const std::uint64_t hi = std::uint64_t{1} << k;
  std::vector<GapRow> rows(hi - lo + 1);
  const auto count = static_cast<std::int64_t>(rows.size());
  ErrorSlot errors;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t t = 0; t < count; ++t) {
    errors.run([&] { rows[static_cast<std::size_t>(t)] = gap_row(lo + static_cast<std::uint64_t>(t)); });
  }
  errors.rethrow();
  return rows;
}

}  // namespace fldr
