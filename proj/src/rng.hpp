#pragma once

#include <cstdint>

namespace hypercount {

inline uint64_t splitmix64(uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// xoshiro256** seeded through splitmix64. Trial-level determinism comes from
// deriving one generator per (master seed, stream index) pair, so results do
// not depend on thread scheduling.
class Rng {
  public:
    explicit Rng(uint64_t seed) {
        uint64_t x = seed;
        for (auto& w : s_) w = splitmix64(x);
    }
    static Rng for_stream(uint64_t master_seed, uint64_t stream) {
        uint64_t x = master_seed;
        uint64_t a = splitmix64(x);
        return Rng(a ^ (stream * 0xD1342543DE82EF95ull + 0x63652362ull));
    }

    uint64_t next() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0,1)
    double u01() { return (next() >> 11) * 0x1p-53; }
    // uniform in (0,1]; safe as argument to log()
    double u01_pos() { return ((next() >> 11) + 1) * 0x1p-53; }
    // uniform integer in [0, n), n >= 1
    uint64_t below(uint64_t n) {
        // Lemire rejection-free-ish bounded draw
        unsigned __int128 m = (unsigned __int128)next() * n;
        uint64_t lo = (uint64_t)m;
        if (lo < n) {
            uint64_t t = (0 - n) % n;
            while (lo < t) {
                m = (unsigned __int128)next() * n;
                lo = (uint64_t)m;
            }
        }
        return (uint64_t)(m >> 64);
    }
    bool bernoulli(double p) { return u01() < p; }

  private:
    static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
    uint64_t s_[4];
};

}  // namespace hypercount
