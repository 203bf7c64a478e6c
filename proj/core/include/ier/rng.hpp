#pragma once

#include <cstdint>
#include <limits>

namespace ier {

/// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Order-independent hash of a counter tuple.
std::uint64_t hash_counter(std::uint64_t seed, std::uint64_t stream, std::uint64_t i, std::uint64_t j) noexcept;

/// U(seed, stream, i, j) in [0, 1) with 53 random bits. The same tuple always
/// yields the same value, regardless of evaluation order or thread.
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t i, std::uint64_t j) noexcept;

/// Streams reserved for the different random quantities of one seed.
namespace streams {
inline constexpr std::uint64_t edges = 0x45444745ULL;
inline constexpr std::uint64_t weights = 0x57474854ULL;
inline constexpr std::uint64_t degrees = 0x44454752ULL;
inline constexpr std::uint64_t monte_carlo = 0x4d434d43ULL;
inline constexpr std::uint64_t checks = 0x43484b53ULL;
}  // namespace streams

/// Sequential generator over a counter stream; models
/// UniformRandomBitGenerator so it also plugs into <random> distributions.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t key = 0) noexcept
      : seed_(seed), stream_(stream), key_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return hash_counter(seed_, stream_, key_, counter_++); }
  double uniform() noexcept { return counter_uniform(seed_, stream_, key_, counter_++); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace ier
