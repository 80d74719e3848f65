#include "fldr/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fldr/parallel.hpp"
#include "fldr/stats.hpp"

namespace fldr {

namespace {

std::uint64_t nanos_since(std::chrono::steady_clock::time_point start) {
  return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                        std::chrono::steady_clock::now() - start)
                                        .count());
}

BenchRow bench_one(const BenchConfig& config, const WeightedDistribution& dist, SamplerKind kind,
                   std::uint64_t row_index) {
  BenchRow row;
  row.sampler = std::string(sampler_name(kind));
  row.n = dist.size();
  row.m = dist.sum();
  row.entropy = entropy(dist);

  const auto start = std::chrono::steady_clock::now();
  std::optional<Sampler> sampler;
  try {
    sampler.emplace(Sampler::build(kind, dist, config.options));
  } catch (const MemoryCapExceeded& e) {
    row.status = std::string("skipped: ") + e.what();
    return row;
  }
  row.preprocess_ns = nanos_since(start);
  row.memory_bytes = sampler->memory_bytes();

  SampleReport report;
  try {
    if (config.bit_script) {
      auto source = ReplayBitSource::from_text(*config.bit_script);
      report = run_sampler(*sampler, config.samples, source);
    } else {
      BitSource source(chunk_seed(config.seed, row_index));
      report = run_sampler(*sampler, config.samples, source);
    }
  } catch (const ScriptExhausted& e) {
    row.status = std::string("error: ") + e.what();
    return row;
  }
  row.bits_per_sample = report.bits_per_sample();
  row.prng_calls = report.prng_calls;
  row.elapsed_ns = report.elapsed_ns;
  if (dist.size() >= 2) {
    try {
      const GofResult gof = chi_square_gof(report, dist);
      row.chi2 = gof.statistic;
      row.p_value = gof.p_value;
    } catch (const std::domain_error&) {
      // Too few samples per outcome for the chi-square approximation.
    }
  }
  return row;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  if (config.samplers.empty()) throw std::invalid_argument("bench: no samplers selected");
  if (config.samples == 0) throw std::invalid_argument("bench: sample count must be positive");
  const std::size_t per_dist = config.samplers.size();
  std::vector<BenchRow> rows(config.distributions.size() * per_dist);
  const auto count = static_cast<std::int64_t>(rows.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) if (!config.serial)
  for (std::int64_t t = 0; t < count; ++t) {
    const auto idx = static_cast<std::size_t>(t);
    try {
      rows[idx] = bench_one(config, config.distributions[idx / per_dist],
                            config.samplers[idx % per_dist], idx);
    } catch (...) {
#pragma omp critical(fldr_bench_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return rows;
}

std::string bench_csv_header() {
  return report_csv_header() + ",memory_bytes,preprocess_ns,status";
}

std::string bench_csv_row(const BenchRow& row) {
  std::ostringstream out;
  out.precision(10);
  out << row.sampler << ',' << row.n << ',' << row.m << ',' << row.entropy << ','
      << row.bits_per_sample << ',' << row.prng_calls << ',' << row.elapsed_ns << ',';
  if (row.chi2) out << *row.chi2;
  out << ',';
  if (row.p_value) out << *row.p_value;
  out << ',' << row.memory_bytes << ',' << row.preprocess_ns << ',' << row.status;
  return out.str();
}

double entropy_floor(std::size_t n, std::uint64_t m) {
  if (n == 0 || m < n) throw std::invalid_argument("entropy_floor: need 1 <= n <= m");
  std::vector<std::uint64_t> w(n, 1);
  w[0] = m - n + 1;
  return entropy(WeightedDistribution(std::move(w)));
}

namespace {

// Weights 1 + floor((m - n) p_i) with p_i ~ i^-s; the rounding remainder goes
// to the heaviest outcomes so the sum is exactly m.
std::vector<std::uint64_t> power_law_weights(std::size_t n, std::uint64_t m, double s) {
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = std::pow(static_cast<double>(i + 1), -s);
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  const std::uint64_t spare = m - n;
  std::vector<std::uint64_t> w(n);
  std::uint64_t used = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto extra = static_cast<std::uint64_t>(std::floor(static_cast<double>(spare) * p[i] / total));
    w[i] = 1 + std::min(extra, spare - used);
    used += w[i] - 1;
  }
  for (std::size_t i = 0; used < spare; i = (i + 1) % n, ++used) ++w[i];
  return w;
}

// H = log2 m - (1/m) sum a log2 a, tracked through single-unit moves.
class EntropyTracker {
 public:
  EntropyTracker(std::vector<std::uint64_t>& w, std::uint64_t m) : w_(w), m_(static_cast<double>(m)) {
    for (std::uint64_t a : w_) sum_ += term(a);
  }
  double value() const { return std::log2(m_) - sum_ / m_; }
  void move_unit(std::size_t from, std::size_t to) {
    sum_ -= term(w_[from]) + term(w_[to]);
    --w_[from];
    ++w_[to];
    sum_ += term(w_[from]) + term(w_[to]);
  }

 private:
  static double term(std::uint64_t a) {
    const double x = static_cast<double>(a);
    return x * std::log2(x);
  }
  std::vector<std::uint64_t>& w_;
  double m_;
  double sum_ = 0;
};

}  // namespace

WeightedDistribution generate_with_entropy(std::size_t n, std::uint64_t m, double target,
                                           std::uint64_t rng_seed) {
  if (n < 2 || m < n) throw std::invalid_argument("gen-dists: need n >= 2 and m >= n");
  const double floor_h = entropy_floor(n, m);
  const double ceil_h = std::log2(static_cast<double>(n));
  if (target < floor_h - 0.1 || target > ceil_h + 1e-9) {
    throw std::invalid_argument("gen-dists: target entropy " + std::to_string(target) +
                                " outside the feasible range [" + std::to_string(floor_h) + ", " +
                                std::to_string(ceil_h) + "]");
  }
  auto h_of = [&](double s) { return entropy(WeightedDistribution(power_law_weights(n, m, s))); };
  double lo = 0.0;
  double hi = 256.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h_of(mid) > target ? lo : hi) = mid;
  }
  std::vector<std::uint64_t> w = power_law_weights(n, m, 0.5 * (lo + hi));

  // Local repair: shift single units toward or away from the heaviest outcome.
  EntropyTracker tracker(w, m);
  for (int it = 0; it < 1'000'000 && std::abs(tracker.value() - target) > 0.01; ++it) {
    const auto heaviest = static_cast<std::size_t>(std::max_element(w.begin(), w.end()) - w.begin());
    if (tracker.value() < target) {
      const auto lightest = static_cast<std::size_t>(std::min_element(w.begin(), w.end()) - w.begin());
      if (w[heaviest] <= w[lightest] + 1) break;
      tracker.move_unit(heaviest, lightest);
    } else {
      std::size_t donor = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (i != heaviest && w[i] > 1 && (donor == n || w[i] < w[donor])) donor = i;
      }
      if (donor == n) break;
      tracker.move_unit(donor, heaviest);
    }
  }
  std::mt19937_64 rng(rng_seed);
  std::shuffle(w.begin(), w.end(), rng);
  return WeightedDistribution(std::move(w));
}

std::vector<WeightedDistribution> generate_distributions(std::size_t n, std::uint64_t m,
                                                         std::size_t count, std::uint64_t seed,
                                                         std::optional<double> h_min,
                                                         std::optional<double> h_max) {
  if (count == 0) throw std::invalid_argument("gen-dists: count must be positive");
  if (n < 2 || m < n) throw std::invalid_argument("gen-dists: need n >= 2 and m >= n");
  const double lo = h_min.value_or(entropy_floor(n, m));
  const double hi = h_max.value_or(std::log2(static_cast<double>(n)));
  std::vector<WeightedDistribution> out;
  out.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    const double target =
        count == 1 ? hi : lo + (hi - lo) * static_cast<double>(t) / static_cast<double>(count - 1);
    out.push_back(generate_with_entropy(n, m, target, chunk_seed(seed, t)));
  }
  return out;
}

}  // namespace fldr
