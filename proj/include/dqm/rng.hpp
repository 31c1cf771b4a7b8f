#ifndef DQM_RNG_HPP
#define DQM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>

// Deterministic random streams. Every consumer derives its own stream from
// (master seed, structural tags), so results do not depend on evaluation
// order or thread count, and adding more vectors per iteration reuses the
// streams of the earlier ones unchanged.

namespace dqm::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Collapse a tag tuple into one 64-bit stream id.
inline std::uint64_t derive(std::initializer_list<std::uint64_t> tags) {
    std::uint64_t acc = 0x6a09e667f3bcc908ULL;
    for (std::uint64_t t : tags) {
        std::uint64_t s = acc ^ (t + 0x9e3779b97f4a7c15ULL);
        acc = splitmix64(s);
    }
    return acc;
}

// Stream roles; keeps the sampling, projection, and synthesis draws of one
// run on non-overlapping streams.
enum : std::uint64_t {
    kTagSample = 0xA1,
    kTagVector = 0xA2,
    kTagAnchor = 0xA3,
    kTagSynth  = 0xA4,
};

/// xoshiro256** with splitmix-expanded seeding.
class Stream {
public:
    explicit Stream(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0,1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Unbiased uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    /// Standard normal via Marsaglia's polar method; spare value cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double k = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * k;
        has_spare_ = true;
        return u * k;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4]{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline Stream stream_for(std::initializer_list<std::uint64_t> tags) {
    return Stream(derive(tags));
}

}  // namespace dqm::rng

#endif  // DQM_RNG_HPP
