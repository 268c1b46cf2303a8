#pragma once

#include <array>
#include <cstdint>

namespace radoforge {

/// Splittable PRNG: xoshiro256** seeded through SplitMix64 from a
/// (seed, stream) pair. Identical (seed, stream) gives an identical output
/// sequence; distinct streams under one seed are statistically independent.
/// Generating values mutates internal state, so callers that need
/// reproducibility take a Prng by value (a 6-word copy).
class Prng {
  public:
    explicit Prng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    std::uint64_t next_u64();

    /// One fair bit, drawn from an internal 64-bit buffer.
    bool next_bit();

    /// Uniform value in [0, bound), unbiased. bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    /// Independent child stream derived from (seed, stream, substream).
    /// Does not disturb this generator's state.
    Prng split(std::uint64_t substream) const;

  private:
    std::uint64_t seed_, stream_;
    std::array<std::uint64_t, 4> s_;
    std::uint64_t bit_buffer_ = 0;
    int bits_left_ = 0;
};

/// SplitMix64 finalizer, also usable as a 64-bit mixing hash.
std::uint64_t splitmix64(std::uint64_t& state);

} // namespace radoforge
