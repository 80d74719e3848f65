#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

#include "fldr/bench.hpp"
#include "fldr/parallel.hpp"
#include "fldr/sampler.hpp"
#include "fldr/stats.hpp"

namespace fldr::cli {

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::string bits;
  std::string out;
  bool serial = false;
};

SamplerKind sampler_arg(const std::string& name) {
  if (auto kind = parse_sampler(name)) return *kind;
  throw std::invalid_argument("unknown sampler '" + name +
                              "' (expected fldr, ky, rej-uniform, rej-lookup, rej-binsearch or alias)");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Calls f with a replay source when --bits is set, else with a seeded PRNG source.
template <typename F>
void with_source(const Globals& g, std::uint64_t seed, F&& f) {
  if (!g.bits.empty()) {
    auto source = ReplayBitSource::from_file(g.bits);
    f(source);
  } else {
    BitSource source(seed);
    f(source);
  }
}

void describe(std::ostream& out, const Sampler& sampler) {
  sampler.visit([&](const auto& impl) {
    using T = std::decay_t<decltype(impl)>;
    if constexpr (std::is_same_v<T, FldrTable> || std::is_same_v<T, DdgTree>) {
      out << dump(impl);
    } else if constexpr (std::is_same_v<T, UniformRejectionSampler>) {
      out << "max_weight " << impl.max_weight() << '\n';
    } else if constexpr (std::is_same_v<T, LookupTable>) {
      out << "k " << impl.depth() << "\nT:";
      for (auto x : impl.entries()) out << ' ' << x;
      out << '\n';
    } else if constexpr (std::is_same_v<T, CumulativeTable>) {
      out << "k " << impl.depth() << "\nT:";
      for (auto x : impl.cumulative()) out << ' ' << x;
      out << '\n';
    } else {
      out << "m " << impl.sum() << "\nkeep:";
      for (auto x : impl.keep()) out << ' ' << x;
      out << "\nalias:";
      for (auto x : impl.alias()) out << ' ' << x;
      out << '\n';
    }
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fast Loaded Dice Roller: exact discrete sampling from integer weights", "fldr"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "PRNG seed (0 selects the default seed)");
  app.add_option("--bits", g.bits, "replay bits ('0'/'1' characters) from this file instead of the PRNG")
      ->check(CLI::ExistingFile);
  app.add_option("--out", g.out, "write output to this file");
  app.add_flag("--serial", g.serial, "run benchmark rows one at a time on one thread");

  // sample
  std::string s_sampler;
  std::string s_weights;
  std::uint64_t s_count = 0;
  auto* sample = app.add_subcommand("sample", "print N outcomes, one per line");
  sample->add_option("sampler", s_sampler)->required();
  sample->add_option("weights", s_weights, "positive integer weights, e.g. \"1 4\"")->required();
  sample->add_option("N", s_count)->required();

  // bench
  std::string b_samplers = "fldr,ky,rej-uniform,rej-lookup,rej-binsearch,alias";
  std::string b_file;
  std::vector<std::string> b_weights;
  std::size_t b_n = 100;
  std::uint64_t b_m = 40000;
  std::size_t b_count = 20;
  std::uint64_t b_samples = 1'000'000;
  std::uint64_t b_cap = LookupTable::kDefaultCap;
  auto* bench = app.add_subcommand("bench", "CSV of bits, PRNG calls, time, GOF and memory per sampler");
  bench->add_option("--samplers", b_samplers, "comma-separated sampler names")->capture_default_str();
  auto* file_opt = bench->add_option("--weights-file", b_file, "one distribution per line")
                       ->check(CLI::ExistingFile);
  auto* weights_opt = bench->add_option("--weights", b_weights, "a distribution (repeatable)");
  file_opt->excludes(weights_opt);
  bench->add_option("--gen-n", b_n, "outcomes per generated distribution")->capture_default_str();
  bench->add_option("--gen-m", b_m, "weight sum of generated distributions")->capture_default_str();
  bench->add_option("--gen-count", b_count, "number of generated distributions")->capture_default_str();
  bench->add_option("-N,--samples", b_samples, "samples per row")->capture_default_str();
  bench->add_option("--lookup-cap", b_cap, "largest rej-lookup table, in entries")->capture_default_str();

  // depth-scan
  std::uint64_t d_max = 0;
  bool d_unbounded = false;
  auto* depth = app.add_subcommand("depth-scan", "CSV of tree depths for (1, m-1), m = 3..m_max");
  depth->add_option("m_max", d_max)->required();
  depth->add_flag("--unbounded", d_unbounded, "allow m_max above 100000");

  // gap-scan
  unsigned k_bits = 0;
  auto* gap = app.add_subcommand("gap-scan", "CSV of FLDR entropy-gap terms for (1, m-1), 2^(k-1) < m <= 2^k");
  gap->add_option("k", k_bits)->required();

  // gof
  std::string f_sampler;
  std::string f_weights;
  std::uint64_t f_samples = 1'000'000;
  double f_alpha = 1e-3;
  auto* gof = app.add_subcommand("gof", "two chi-square runs; exits 1 when both reject");
  gof->add_option("sampler", f_sampler)->required();
  gof->add_option("weights", f_weights)->required();
  gof->add_option("-N,--samples", f_samples, "samples per run")->capture_default_str();
  gof->add_option("--alpha", f_alpha, "significance level")->capture_default_str()->check(CLI::Range(0.0, 1.0));

  // gen-dists
  std::size_t g_n = 0;
  std::uint64_t g_m = 0;
  std::size_t g_count = 0;
  std::optional<double> g_hmin;
  std::optional<double> g_hmax;
  auto* gen = app.add_subcommand("gen-dists", "weight lines with equally spaced entropies");
  gen->add_option("n", g_n)->required();
  gen->add_option("m", g_m)->required();
  gen->add_option("count", g_count)->required();
  gen->add_option("--h-min", g_hmin, "lowest target entropy (default: the feasible floor)");
  gen->add_option("--h-max", g_hmax, "highest target entropy (default: log2 n)");

  // dump-table
  std::string t_sampler;
  std::string t_weights;
  auto* table = app.add_subcommand("dump-table", "print the preprocessed structure");
  table->add_option("sampler", t_sampler)->required();
  table->add_option("weights", t_weights)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  std::ofstream file;
  if (!g.out.empty()) {
    file.open(g.out);
    if (!file) {
      err << "error: cannot write " << g.out << '\n';
      return 1;
    }
  }
  std::ostream& os = g.out.empty() ? out : file;
  os.precision(17);

  try {
    if (*sample) {
      const WeightedDistribution dist = parse_weights(s_weights);
      const Sampler sampler = Sampler::build(sampler_arg(s_sampler), dist);
      with_source(g, g.seed, [&](auto& source) {
        for (std::uint64_t t = 0; t < s_count; ++t) os << sampler.sample(source) << '\n';
      });
    } else if (*bench) {
      BenchConfig config;
      std::stringstream names(b_samplers);
      for (std::string name; std::getline(names, name, ',');) {
        if (!name.empty()) config.samplers.push_back(sampler_arg(name));
      }
      if (!b_file.empty()) {
        config.distributions = read_weight_file(b_file);
      } else if (!b_weights.empty()) {
        for (const auto& w : b_weights) config.distributions.push_back(parse_weights(w));
      } else {
        config.distributions = generate_distributions(b_n, b_m, b_count, g.seed);
      }
      config.samples = b_samples;
      config.seed = g.seed;
      config.serial = g.serial;
      config.options.lookup_cap = b_cap;
      if (!g.bits.empty()) config.bit_script = read_text(g.bits);
      const auto rows = run_bench(config);
      os << bench_csv_header() << '\n';
      for (const auto& row : rows) os << bench_csv_row(row) << '\n';
    } else if (*depth) {
      const auto rows = g.serial ? depth_scan_serial(d_max, d_unbounded) : depth_scan(d_max, d_unbounded);
      os << "m,ky_depth,fldr_depth\n";
      for (const auto& r : rows) os << r.m << ',' << r.ky_depth << ',' << r.fldr_depth << '\n';
    } else if (*gap) {
      const auto rows = g.serial ? gap_scan_serial(k_bits) : gap_scan(k_bits);
      os << "m,term1,term2,term3,exact_gap\n";
      for (const auto& r : rows) {
        os << r.m << ',' << r.term1 << ',' << r.term2 << ',' << r.term3 << ',' << r.exact_gap << '\n';
      }
    } else if (*gof) {
      const WeightedDistribution dist = parse_weights(f_weights);
      const Sampler sampler = Sampler::build(sampler_arg(f_sampler), dist);
      std::vector<GofResult> results;
      os << report_csv_header() << '\n';
      auto one_run = [&](auto& source) {
        const SampleReport report = run_sampler(sampler, f_samples, source);
        results.push_back(chi_square_gof(report, dist));
        os << report_csv_row(f_sampler, dist, report, &results.back()) << '\n';
      };
      if (!g.bits.empty()) {
        // Both runs read consecutive stretches of the same script.
        with_source(g, 0, [&](auto& source) {
          one_run(source);
          one_run(source);
        });
      } else {
        with_source(g, chunk_seed(g.seed, 0), one_run);
        with_source(g, chunk_seed(g.seed, 1), one_run);
      }
      if (!gof_vote_passes(results[0], results[1], f_alpha)) {
        err << "gof: both runs reject at alpha=" << f_alpha << '\n';
        return 1;
      }
    } else if (*gen) {
      const auto dists = generate_distributions(g_n, g_m, g_count, g.seed, g_hmin, g_hmax);
      os << "# n=" << g_n << " m=" << g_m << " count=" << g_count << " seed=" << g.seed << '\n';
      for (const auto& d : dists) os << format_weights(d) << '\n';
    } else if (*table) {
      describe(os, Sampler::build(sampler_arg(t_sampler), parse_weights(t_weights)));
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace fldr::cli
