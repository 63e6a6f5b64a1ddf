#include "m2s/rng.hpp"

namespace m2s {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t a,
                                 std::uint64_t b) {
    std::uint64_t h = mix64(master_seed + 0x9e3779b97f4a7c15ull);
    h = mix64(h ^ (a + 0x9e3779b97f4a7c15ull));
    h = mix64(h ^ (b + 0x9e3779b97f4a7c15ull));
    return h;
}

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t state) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
        state ^= p[i];
        state *= 0x100000001b3ull;
    }
    return state;
}

}  // namespace m2s
