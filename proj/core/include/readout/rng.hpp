#pragma once

#include <cstdint>
#include <string_view>

namespace readout {

/// Counter-based generator: output k of stream `key` is splitmix64's
/// finalizer applied to key + k * golden_gamma. Streams are addressed by
/// (seed, stream id) so any block of trials can be replayed independently.
class CounterRng {
 public:
  static constexpr std::string_view kAlgorithm = "splitmix64-counter/v1";

  CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix(mix(seed) ^ mix(stream + kGamma))) {}

  std::uint64_t next() { return mix(key_ + (++counter_) * kGamma); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace readout
