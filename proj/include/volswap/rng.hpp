#pragma once

#include <cmath>
#include <cstdint>

namespace volswap {

// splitmix64: seed expander (Steele, Lea, Flood 2014 public-domain constants)
struct SplitMix64 {
    uint64_t state;
    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

// xoshiro256++ (Blackman & Vigna); small, fast, and the output stream is
// fixed by the standard regardless of platform or standard library.
struct Xoshiro256pp {
    uint64_t s[4];

    static Xoshiro256pp seeded(uint64_t seed) {
        SplitMix64 sm{seed};
        Xoshiro256pp g;
        for (uint64_t& w : g.s) w = sm.next();
        if ((g.s[0] | g.s[1] | g.s[2] | g.s[3]) == 0) g.s[0] = 1;
        return g;
    }

    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t next() {
        const uint64_t result = rotl(s[0] + s[3], 23) + s[0];
        const uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }
};

// Per-path random stream: uniforms on (0,1], Marsaglia polar normals,
// exact small-mean Poisson by inversion. `negate` flips the sign of normal
// draws only (antithetic twin consumes the identical uniform sequence).
class PathRng {
public:
    PathRng(uint64_t root_seed, uint64_t path_index, bool negate = false)
        : eng_(Xoshiro256pp::seeded(mix(root_seed, path_index))), negate_(negate) {}

    double uniform() { // (0, 1]
        return static_cast<double>((eng_.next() >> 11) + 1) * 0x1.0p-53;
    }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return negate_ ? -spare_ : spare_;
        }
        double a, b, s2;
        do {
            a = 2.0 * uniform() - 1.0;
            b = 2.0 * uniform() - 1.0;
            s2 = a * a + b * b;
        } while (s2 >= 1.0 || s2 == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s2) / s2);
        spare_ = b * f;
        has_spare_ = true;
        const double z = a * f;
        return negate_ ? -z : z;
    }

    // One uniform on the overwhelmingly common K = 0 branch; the early return
    // agrees exactly with the full inversion because mean >= 1 - e^{-mean}.
    long poisson(double mean) {
        if (mean <= 0.0) return 0;
        if (mean > 50.0) return poisson(0.5 * mean) + poisson(0.5 * mean);
        const double u = uniform();
        if (u >= mean) return 0;
        const double up = 1.0 - u;
        double p = std::exp(-mean), cum = p;
        long k = 0;
        while (cum < up && k < 10000) {
            ++k;
            p *= mean / static_cast<double>(k);
            cum += p;
        }
        return k;
    }

    double exponential(double mean) { return -std::log(uniform()) * mean; }

private:
    static uint64_t mix(uint64_t root, uint64_t path) {
        SplitMix64 sm{root + 0x9E3779B97F4A7C15ull * (path + 1)};
        return sm.next();
    }

    Xoshiro256pp eng_;
    bool negate_ = false;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace volswap
