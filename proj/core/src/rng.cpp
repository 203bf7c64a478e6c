#include "ier/rng.hpp"

namespace ier {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_counter(std::uint64_t seed, std::uint64_t stream, std::uint64_t i, std::uint64_t j) noexcept {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ stream);
  h = mix64(h ^ i);
  return mix64(h ^ j);
}

double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t i, std::uint64_t j) noexcept {
  return static_cast<double>(hash_counter(seed, stream, i, j) >> 11) * 0x1.0p-53;
}

}  // namespace ier
