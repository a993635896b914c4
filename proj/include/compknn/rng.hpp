#pragma once

#include <cstdint>
#include <random>

namespace compknn {

/// SplitMix64 finaliser; used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Deterministic random stream for one replication.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. It is seeded with splitmix64(splitmix64(seed) ^ index) so that
/// replication b gets the same draws no matter which thread runs it. Bounded
/// draws use rejection sampling rather than std::uniform_int_distribution,
/// whose algorithm differs between standard libraries.
class ReplicationStream {
 public:
  ReplicationStream(std::uint64_t seed, std::uint64_t replication_index)
      : engine_(splitmix64(splitmix64(seed) ^ replication_index)) {}

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return r % bound;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace compknn
