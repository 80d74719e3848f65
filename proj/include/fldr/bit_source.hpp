#pragma once

#include <concepts>
#include <cstdint>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace fldr {

/// Anything that hands out fair bits one at a time and counts them.
template <typename S>
concept FlipSource = requires(S& s, const S& cs) {
  { s.flip() } -> std::convertible_to<unsigned>;
  { cs.bits_consumed() } -> std::convertible_to<std::uint64_t>;
  { cs.prng_calls() } -> std::convertible_to<std::uint64_t>;
};

/// Thrown when a ReplayBitSource runs past the end of its script.
class ScriptExhausted : public std::runtime_error {
 public:
  ScriptExhausted() : std::runtime_error("replay bit script exhausted") {}
};

/// Lazily drawn unbiased bits backed by a 64-bit PRNG.
///
/// One generator word is buffered at a time and drained most significant bit
/// first. Every flip bumps bits_consumed; every word refill bumps prng_calls.
/// Not thread-safe: each sampling thread owns its own source.
class BitSource {
 public:
  using Generator = std::mt19937_64;

  /// Seed 0 selects the library default seed.
  static constexpr std::uint64_t kDefaultSeed = 0x5DEECE66Dull;

  explicit BitSource(std::uint64_t seed = 0)
      : generator_(seed == 0 ? kDefaultSeed : seed) {}

  unsigned flip() {
    if (remaining_ == 0) {
      buffer_ = generator_();
      remaining_ = 64;
      ++prng_calls_;
    }
    --remaining_;
    ++bits_consumed_;
    return static_cast<unsigned>((buffer_ >> remaining_) & 1u);
  }

  /// Zeroes the counters; the buffered word is kept.
  void reset_counters() noexcept {
    bits_consumed_ = 0;
    prng_calls_ = 0;
  }

  std::uint64_t bits_consumed() const noexcept { return bits_consumed_; }
  std::uint64_t prng_calls() const noexcept { return prng_calls_; }
  unsigned buffered_bits() const noexcept { return remaining_; }

 private:
  Generator generator_;
  std::uint64_t buffer_ = 0;
  unsigned remaining_ = 0;
  std::uint64_t bits_consumed_ = 0;
  std::uint64_t prng_calls_ = 0;
};

/// Replays an explicit bit script; running out is an error.
class ReplayBitSource {
 public:
  explicit ReplayBitSource(std::vector<std::uint8_t> script)
      : script_(std::move(script)) {}

  /// Parses ASCII '0'/'1' characters, skipping whitespace.
  static ReplayBitSource from_text(std::string_view text);
  static ReplayBitSource from_file(const std::filesystem::path& path);

  unsigned flip() {
    if (cursor_ >= script_.size()) throw ScriptExhausted();
    ++bits_consumed_;
    return script_[cursor_++];
  }

  void reset_counters() noexcept { bits_consumed_ = 0; }

  std::uint64_t bits_consumed() const noexcept { return bits_consumed_; }
  std::uint64_t prng_calls() const noexcept { return 0; }
  std::size_t remaining() const noexcept { return script_.size() - cursor_; }

 private:
  std::vector<std::uint8_t> script_;
  std::size_t cursor_ = 0;
  std::uint64_t bits_consumed_ = 0;
};

static_assert(FlipSource<BitSource>);
static_assert(FlipSource<ReplayBitSource>);

/// Assembles `width` flips MSB-first into an integer.
template <FlipSource S>
std::uint64_t draw_bits(S& source, unsigned width) {
  std::uint64_t w = 0;
  for (unsigned i = 0; i < width; ++i) w = (w << 1) | source.flip();
  return w;
}

}  // namespace fldr
