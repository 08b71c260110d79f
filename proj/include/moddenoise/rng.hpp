#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace moddenoise {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for the (sigma_index, trial_index) stream of an experiment:
///   splitmix64(base ^ splitmix64((sigma_index << 32) | trial_index)).
/// Distinct index pairs map to distinct inner words, and both mixing steps
/// are bijections, so distinct pairs never share a seed for a given base.
constexpr std::uint64_t derive_stream_seed(std::uint64_t base_seed, std::uint32_t sigma_index,
                                           std::uint32_t trial_index) noexcept {
  const std::uint64_t stream = (static_cast<std::uint64_t>(sigma_index) << 32) | trial_index;
  return splitmix64(base_seed ^ splitmix64(stream));
}

/// Gaussian stream: std::mt19937_64 (its output sequence is fixed by the C++
/// standard) feeding a Box-Muller transform on 53-bit uniforms.
/// Both Box-Muller outputs are used; the second is cached for the next call.
/// Replays are bit-identical for a given seed and libm.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal draw.
  double normal();

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

}  // namespace moddenoise
