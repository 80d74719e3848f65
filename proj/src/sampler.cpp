#include "fldr/sampler.hpp"

namespace fldr {

std::string_view sampler_name(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::kFldr: return "fldr";
    case SamplerKind::kKy: return "ky";
    case SamplerKind::kRejUniform: return "rej-uniform";
    case SamplerKind::kRejLookup: return "rej-lookup";
    case SamplerKind::kRejBinsearch: return "rej-binsearch";
    case SamplerKind::kAlias: return "alias";
  }
  return "?";
}

std::optional<SamplerKind> parse_sampler(std::string_view name) {
  for (SamplerKind kind : kAllSamplers) {
    if (sampler_name(kind) == name) return kind;
  }
  return std::nullopt;
}

Sampler Sampler::build(SamplerKind kind, const WeightedDistribution& dist,
                       const SamplerOptions& options) {
  const std::size_t n = dist.size();
  switch (kind) {
    case SamplerKind::kFldr: return Sampler(kind, n, fldr_preprocess(dist));
    case SamplerKind::kKy: return Sampler(kind, n, ky_construct(dist));
    case SamplerKind::kRejUniform: return Sampler(kind, n, UniformRejectionSampler(dist));
    case SamplerKind::kRejLookup: return Sampler(kind, n, LookupTable(dist, options.lookup_cap));
    case SamplerKind::kRejBinsearch: return Sampler(kind, n, CumulativeTable(dist));
    case SamplerKind::kAlias: return Sampler(kind, n, AliasTable(dist));
  }
  throw std::invalid_argument("unknown sampler kind");
}

std::size_t Sampler::memory_bytes() const {
  return visit([](const auto& s) { return s.memory_bytes(); });
}

}  // namespace fldr
