// rng.hpp — deterministic seeded randomness with derivable substreams.
//
// The generator is PCG32 (Melissa O'Neill's pcg32_random_r), fixed for
// reproducibility: a given (seed, stream) pair yields the same sequence on
// every platform.  Substreams are derived by splitmix64 hashing of the parent
// stream id and a child index, so Monte Carlo trials can draw from disjoint
// streams indexed by trial number.

#pragma once

#include <cstdint>

namespace chainring {

namespace detail {
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace detail

class Rng {
  public:
    explicit Rng(uint64_t seed, uint64_t stream = 0) : seed_(seed), stream_(stream) {
        state_ = 0;
        inc_ = (stream << 1u) | 1u;
        next_u32();
        state_ += seed;
        next_u32();
    }

    uint64_t seed() const { return seed_; }
    uint64_t stream() const { return stream_; }

    // A generator with an independent stream, derived from this generator's
    // stream id and the child index (not from its mutable state).
    Rng substream(uint64_t index) const {
        uint64_t child = detail::splitmix64(stream_ ^ detail::splitmix64(index + 0x51ed2701ULL));
        return Rng(seed_, child);
    }

    uint32_t next_u32() {
        uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        uint32_t xorshifted = static_cast<uint32_t>(((old >> 18u) ^ old) >> 27u);
        uint32_t rot = static_cast<uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
    }

    uint64_t next_u64() {
        uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    // Unbiased uniform draw from [0, bound); bound >= 1.
    uint32_t uniform_below(uint32_t bound) {
        uint32_t threshold = (-bound) % bound;
        for (;;) {
            uint32_t r = next_u32();
            if (r >= threshold) return r % bound;
        }
    }

    double next_double() {  // uniform in [0, 1)
        return static_cast<double>(next_u32()) * (1.0 / 4294967296.0);
    }

  private:
    uint64_t seed_;
    uint64_t stream_;
    uint64_t state_;
    uint64_t inc_;
};

}  // namespace chainring
