#include "fldr/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fldr {

void SampleReport::merge(const SampleReport& other) {
  if (counts.empty()) counts.assign(other.counts.size(), 0);
  if (counts.size() != other.counts.size()) {
    throw std::invalid_argument("SampleReport::merge: outcome counts differ");
  }
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  total += other.total;
  bits_consumed += other.bits_consumed;
  prng_calls += other.prng_calls;
  elapsed_ns += other.elapsed_ns;
}

double chi_square_survival(double statistic, unsigned df) {
  if (df == 0) throw std::domain_error("chi-square needs df >= 1");
  if (statistic <= 0) return 1.0;
  return boost::math::gamma_q(0.5 * df, 0.5 * statistic);
}

GofResult chi_square_gof(const SampleReport& report, const WeightedDistribution& dist) {
  if (report.counts.size() != dist.size()) {
    throw std::domain_error("chi_square_gof: report has " + std::to_string(report.counts.size()) +
                            " outcomes, distribution has " + std::to_string(dist.size()));
  }
  if (dist.size() < 2) throw std::domain_error("chi_square_gof: needs at least two outcomes");
  const long double n_total = static_cast<long double>(report.total);
  const long double m = static_cast<long double>(dist.sum());
  long double stat = 0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const long double expected = n_total * static_cast<long double>(dist.weights()[i]) / m;
    if (expected < 5) {
      throw std::domain_error("chi_square_gof: expected count of outcome " + std::to_string(i + 1) +
                              " is below 5");
    }
    const long double diff = static_cast<long double>(report.counts[i]) - expected;
    stat += diff * diff / expected;
  }
  GofResult r;
  r.statistic = static_cast<double>(stat);
  r.df = static_cast<unsigned>(dist.size() - 1);
  r.p_value = chi_square_survival(r.statistic, r.df);
  return r;
}

bool gof_vote_passes(const GofResult& first, const GofResult& second, double alpha) {
  return first.p_value >= alpha || second.p_value >= alpha;
}

GapReportRow entropy_gap_report(const WeightedDistribution& dist) {
  GapReportRow row;
  row.fldr = entropy_gap(dist);
  row.entropy = row.fldr.entropy;
  row.ky_expected_bits = expected_bits(ky_construct(dist));
  row.ky_gap = to_long_double(row.ky_expected_bits) - row.entropy;
  return row;
}

std::string report_csv_header() {
  return "sampler,n,m,H,entropy_bits_per_sample,prng_calls,elapsed_ns,chi2,p_value";
}

std::string report_csv_row(std::string_view sampler, const WeightedDistribution& dist,
                           const SampleReport& report, const GofResult* gof) {
  std::ostringstream out;
  out.precision(10);
  out << sampler << ',' << dist.size() << ',' << dist.sum() << ',' << entropy(dist) << ','
      << report.bits_per_sample() << ',' << report.prng_calls << ',' << report.elapsed_ns << ',';
  if (gof) out << gof->statistic << ',' << gof->p_value;
  else out << ',';
  return out.str();
}

}  // namespace fldr
