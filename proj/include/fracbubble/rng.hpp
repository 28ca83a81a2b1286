#pragma once

#include <cmath>
#include <cstdint>

#include "fracbubble/common.hpp"

namespace fracbubble {

// Deterministic, platform-independent RNG. std::mt19937 + distributions are
// not pinned down by the standard (distribution outputs may differ across
// library versions), so sampling is done by hand on top of xoshiro256++.

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Stable per-shard seed derivation: mixes a base seed with a shard index so
// shard streams are uncorrelated and independent of how work is scheduled.
inline uint64_t derive_seed(uint64_t base, uint64_t index) {
    uint64_t s = base ^ (0x9e3779b97f4a7c15ull * (index + 1));
    splitmix64(s);
    return splitmix64(s);
}

class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (int i = 0; i < 4; ++i) s_[i] = splitmix64(sm);
        have_cached_normal_ = false;
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Box-Muller; caches the second draw
    double normal() {
        if (have_cached_normal_) {
            have_cached_normal_ = false;
            return cached_normal_;
        }
        double u1 = 0.0;
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double th = 6.283185307179586476925286766559 * u2;
        cached_normal_ = r * std::sin(th);
        have_cached_normal_ = true;
        return r * std::cos(th);
    }

    // uniform direction on the unit sphere in R^n (first n slots of a Vec)
    Vec sphere_direction(int n) {
        Vec v = zero_vec();
        double nn = 0.0;
        while (nn < 1e-12) {
            for (int i = 0; i < n; ++i) v[i] = normal();
            nn = std::sqrt(dot(v, v, n));
        }
        for (int i = 0; i < n; ++i) v[i] /= nn;
        return v;
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
    bool have_cached_normal_;
    double cached_normal_ = 0.0;
};

}  // namespace fracbubble
