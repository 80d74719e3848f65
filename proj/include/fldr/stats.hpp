#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "fldr/distribution.hpp"
#include "fldr/fldr.hpp"
#include "fldr/rational.hpp"
#include "fldr/sampler.hpp"

namespace fldr {

/// Tallies of one sampling run. counts[i-1] is the tally of outcome i.
struct SampleReport {
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  std::uint64_t bits_consumed = 0;
  std::uint64_t prng_calls = 0;
  std::uint64_t elapsed_ns = 0;

  double bits_per_sample() const {
    return total == 0 ? 0.0 : static_cast<double>(bits_consumed) / static_cast<double>(total);
  }
  /// Adds another report's tallies and counters.
  void merge(const SampleReport& other);
};

/// Draws `count` samples, reading the source's counters before and after.
template <FlipSource S>
SampleReport run_sampler(const Sampler& sampler, std::uint64_t count, S& source) {
  SampleReport report;
  report.counts.assign(sampler.outcomes(), 0);
  report.total = count;
  const std::uint64_t bits_before = source.bits_consumed();
  const std::uint64_t calls_before = source.prng_calls();
  const auto start = std::chrono::steady_clock::now();
  sampler.visit([&](const auto& impl) {
    for (std::uint64_t t = 0; t < count; ++t) ++report.counts[impl.sample(source) - 1];
  });
  const auto stop = std::chrono::steady_clock::now();
  report.elapsed_ns = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
  report.bits_consumed = source.bits_consumed() - bits_before;
  report.prng_calls = source.prng_calls() - calls_before;
  return report;
}

struct GofResult {
  double statistic = 0;
  unsigned df = 0;
  double p_value = 1;
};

/// Upper tail of the chi-square distribution, Q(df/2, x/2).
double chi_square_survival(double statistic, unsigned df);

/// Pearson goodness of fit against a_i/m. Throws std::domain_error when an
/// expected count is below 5 or the report does not match the distribution.
GofResult chi_square_gof(const SampleReport& report, const WeightedDistribution& dist);

/// A sampler fails only when both independent runs reject at `alpha`.
bool gof_vote_passes(const GofResult& first, const GofResult& second, double alpha);

struct GapReportRow {
  long double entropy = 0;
  Rational ky_expected_bits;
  long double ky_gap = 0;
  GapDecomposition fldr;
};

/// Entropy, exact Knuth-Yao gap and the FLDR gap decomposition. n > 1.
GapReportRow entropy_gap_report(const WeightedDistribution& dist);

/// sampler,n,m,H,entropy_bits_per_sample,prng_calls,elapsed_ns,chi2,p_value
std::string report_csv_header();
std::string report_csv_row(std::string_view sampler, const WeightedDistribution& dist,
                           const SampleReport& report, const GofResult* gof);

}  // namespace fldr
