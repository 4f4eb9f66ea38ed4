#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace isle {

namespace detail {

// SplitMix64 step; used for seeding and stream derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace detail

// xoshiro256++ generator. Self-contained so that sampled trajectories are
// identical across platforms and standard library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) {
            word = detail::splitmix64(sm);
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1), 53 random bits.
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Unbiased uniform in [0, bound); bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) {
            throw std::invalid_argument("Rng::below: bound must be positive");
        }
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) {
                return r % bound;
            }
        }
    }

    bool coin() { return (next() & 1) != 0; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_;
};

// Mixes (seed, a, b) into one stream key. Each argument passes through a
// SplitMix64 round, so nearby indices land on unrelated streams.
std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

// Reproducible per-island stream. Depends only on the triple, never on the
// island count, worker count, or scheduling order.
Rng derive_island_rng(std::uint64_t seed, std::uint64_t island, std::uint64_t replication);

// Exact Poisson(1) sample (Knuth's product method).
unsigned poisson1_sample(Rng& rng);

}  // namespace isle
