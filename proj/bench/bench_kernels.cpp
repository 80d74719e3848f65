#include <benchmark/benchmark.h>

#include <random>

#include "fldr/bench.hpp"
#include "fldr/parallel.hpp"

namespace {

using namespace fldr;

WeightedDistribution wide_distribution() {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint64_t> pick(1, std::uint64_t{1} << 30);
  std::vector<std::uint64_t> w(1000);
  for (auto& a : w) a = pick(rng);
  return WeightedDistribution(std::move(w));
}

// Per-draw cost of each sampler on a mid-entropy n = 100, m = 40000 instance.
void BM_Sample(benchmark::State& state) {
  const auto kind = static_cast<SamplerKind>(state.range(0));
  static const WeightedDistribution dist = generate_with_entropy(100, 40000, 3.5, 1);
  const Sampler sampler = Sampler::build(kind, dist);
  BitSource source(7);
  sampler.visit([&](const auto& impl) {
    for (auto _ : state) benchmark::DoNotOptimize(impl.sample(source));
  });
  state.SetLabel(std::string(sampler_name(kind)));
  state.counters["bits/sample"] =
      benchmark::Counter(static_cast<double>(source.bits_consumed()), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_Sample)->DenseRange(0, static_cast<int>(kAllSamplers.size()) - 1);

void BM_FldrPreprocess(benchmark::State& state) {
  static const WeightedDistribution dist = wide_distribution();
  for (auto _ : state) benchmark::DoNotOptimize(fldr_preprocess(dist));
}
BENCHMARK(BM_FldrPreprocess)->Unit(benchmark::kMicrosecond);

void BM_FldrPreprocessSerial(benchmark::State& state) {
  static const WeightedDistribution dist = wide_distribution();
  for (auto _ : state) benchmark::DoNotOptimize(fldr_preprocess_serial(dist));
}
BENCHMARK(BM_FldrPreprocessSerial)->Unit(benchmark::kMicrosecond);

void BM_SampleChunked(benchmark::State& state) {
  const Sampler sampler = Sampler::build(SamplerKind::kFldr, wide_distribution());
  for (auto _ : state) benchmark::DoNotOptimize(sample_chunked(sampler, 1'000'000, 3, 16));
}
BENCHMARK(BM_SampleChunked)->Unit(benchmark::kMillisecond);

void BM_SampleChunkedSerial(benchmark::State& state) {
  const Sampler sampler = Sampler::build(SamplerKind::kFldr, wide_distribution());
  for (auto _ : state) benchmark::DoNotOptimize(sample_chunked_serial(sampler, 1'000'000, 3, 16));
}
BENCHMARK(BM_SampleChunkedSerial)->Unit(benchmark::kMillisecond);

void BM_DepthScan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(depth_scan(20000));
}
BENCHMARK(BM_DepthScan)->Unit(benchmark::kMillisecond);

void BM_DepthScanSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(depth_scan_serial(20000));
}
BENCHMARK(BM_DepthScanSerial)->Unit(benchmark::kMillisecond);

void BM_GapScan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gap_scan(12));
}
BENCHMARK(BM_GapScan)->Unit(benchmark::kMillisecond);

void BM_GapScanSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gap_scan_serial(12));
}
BENCHMARK(BM_GapScanSerial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
