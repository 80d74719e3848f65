#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

#include "fldr/baselines.hpp"
#include "fldr/ddg.hpp"
#include "fldr/distribution.hpp"
#include "fldr/fldr.hpp"

namespace fldr {

enum class SamplerKind { kFldr, kKy, kRejUniform, kRejLookup, kRejBinsearch, kAlias };

inline constexpr std::array<SamplerKind, 6> kAllSamplers = {
    SamplerKind::kFldr,      SamplerKind::kKy,           SamplerKind::kRejUniform,
    SamplerKind::kRejLookup, SamplerKind::kRejBinsearch, SamplerKind::kAlias};

std::string_view sampler_name(SamplerKind kind);
std::optional<SamplerKind> parse_sampler(std::string_view name);

struct SamplerOptions {
  std::uint64_t lookup_cap = LookupTable::kDefaultCap;
};

/// Any of the six samplers behind one value type. Preprocessing happens in
/// build(); the built sampler is immutable and may be shared across threads.
class Sampler {
 public:
  using Impl = std::variant<FldrTable, DdgTree, UniformRejectionSampler, LookupTable,
                            CumulativeTable, AliasTable>;

  /// Throws MemoryCapExceeded for lookup tables over the cap.
  static Sampler build(SamplerKind kind, const WeightedDistribution& dist,
                       const SamplerOptions& options = {});

  SamplerKind kind() const noexcept { return kind_; }
  std::size_t outcomes() const noexcept { return n_; }
  std::size_t memory_bytes() const;

  /// Calls f with the concrete sampler so hot loops avoid per-draw dispatch.
  template <typename F>
  decltype(auto) visit(F&& f) const {
    return std::visit(std::forward<F>(f), impl_);
  }

  template <FlipSource S>
  std::uint32_t sample(S& source) const {
    return visit([&](const auto& s) { return s.sample(source); });
  }

 private:
  Sampler(SamplerKind kind, std::size_t n, Impl impl)
      : kind_(kind), n_(n), impl_(std::move(impl)) {}

  SamplerKind kind_;
  std::size_t n_;
  Impl impl_;
};

}  // namespace fldr
