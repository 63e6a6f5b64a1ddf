#pragma once

#include <cstdint>

namespace m2s {

// Counter-based 64-bit stream (splitmix64 output function over an
// incrementing counter). Streams derived from the same seed are
// platform-independent and order-independent, so parallel dataset
// generation stays bit-reproducible.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed), counter_(0) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() {
        std::uint64_t z = seed_ + (++counter_) * 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound). Lemire rejection keeps the draw unbiased.
    std::uint64_t next_below(std::uint64_t bound) {
        __uint128_t m = static_cast<__uint128_t>(next_u64()) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            std::uint64_t threshold = (0 - bound) % bound;
            while (lo < threshold) {
                m = static_cast<__uint128_t>(next_u64()) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool next_bool() { return (next_u64() >> 63) != 0; }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

// Mixes (seed, n, attempt) into one stream seed; used so each dataset
// attempt owns an independent deterministic stream.
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t a,
                                 std::uint64_t b);

// FNV-1a over bytes; stable across platforms. Used for config/dataset hashes.
std::uint64_t fnv1a(const void* data, std::size_t size,
                    std::uint64_t state = 0xcbf29ce484222325ull);

}  // namespace m2s
