#include "isle/rng.hpp"

namespace isle {

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    // Each stage is a bijection of the running state for fixed earlier
    // arguments, so distinct (a, b) never collide for a fixed seed.
    std::uint64_t x = seed;
    std::uint64_t h = detail::splitmix64(x);
    x = h ^ (a * 0x9E3779B97F4A7C15ULL + 0x1BD11BDAA9FC1A22ULL);
    h = detail::splitmix64(x);
    x = h ^ (b * 0xD1342543DE82EF95ULL + 0x2545F4914F6CDD1DULL);
    return detail::splitmix64(x);
}

Rng derive_island_rng(std::uint64_t seed, std::uint64_t island, std::uint64_t replication) {
    return Rng(stream_key(seed, island, replication));
}

unsigned poisson1_sample(Rng& rng) {
    constexpr double kInvE = 0.36787944117144233;  // e^-1
    unsigned k = 0;
    double p = rng.uniform01();
    while (p > kInvE) {
        p *= rng.uniform01();
        ++k;
    }
    return k;
}

}  // namespace isle
