#pragma once

#include <cstdint>
#include <random>

namespace mlo {

/// Stream ids are grouped so that adding an entity of one kind never shifts
/// the ids of another.
enum class StreamKind : std::uint64_t { kTraffic = 1, kDcf = 2 };

constexpr std::uint64_t stream_id(StreamKind kind, std::uint64_t bss,
                                  std::uint64_t link = 0) {
  return (static_cast<std::uint64_t>(kind) << 48) | (bss << 16) | link;
}

/// Deterministic per-entity random stream. The engine is mt19937_64 (whose
/// output sequence is fixed by the standard); the seed is derived from
/// (seed, stream id) with splitmix64. Distributions are implemented here
/// rather than via <random> because the standard distributions are
/// implementation-defined.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform01();
  /// Uniform integer in [0, bound - 1]; bound must be > 0.
  std::uint64_t uniform_below(std::uint64_t bound);
  /// Exponential variate with the given mean, by inverse transform.
  double exponential(double mean);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace mlo
