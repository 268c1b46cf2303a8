#include "radoforge/prng.hpp"

#include <bit>
#include <stdexcept>

namespace radoforge {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Prng::Prng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
    // Mix seed and stream through two SplitMix64 rounds before expanding to
    // the four xoshiro words; all-zero states are impossible this way.
    std::uint64_t sm = seed;
    std::uint64_t mixed = splitmix64(sm) ^ stream;
    for (auto& word : s_) word = splitmix64(mixed);
}

std::uint64_t Prng::next_u64() {
    const std::uint64_t result = std::rotl(s_[1] * 5ULL, 7) * 9ULL;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

bool Prng::next_bit() {
    if (bits_left_ == 0) {
        bit_buffer_ = next_u64();
        bits_left_ = 64;
    }
    const bool b = bit_buffer_ & 1u;
    bit_buffer_ >>= 1;
    --bits_left_;
    return b;
}

std::uint64_t Prng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Prng::below: bound must be positive");
    const std::uint64_t threshold = -bound % bound;
    for (;;) {
        const std::uint64_t x = next_u64();
        if (x >= threshold) return x % bound;
    }
}

Prng Prng::split(std::uint64_t substream) const {
    std::uint64_t sm = stream_ ^ 0xA3EC647659359ACDULL;
    const std::uint64_t child = splitmix64(sm) + substream;
    return Prng(seed_, child);
}

} // namespace radoforge
