#pragma once

// Deterministic 64-bit random number generation.
//
// Engine: xoshiro256** seeded through splitmix64. Replicate streams are
// derived by hashing (master seed, stream tag, replicate index), so adding
// replicates never perturbs existing ones and independent streams can be
// consumed in parallel.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string_view>

namespace rwalks {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// FNV-1a, used to fold experiment-kind tags into stream seeds.
inline std::uint64_t hash_tag(std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
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

    // Uniform in [0, 1) with 53 random mantissa bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1), safe under log().
    double uniform_open() {
        double u = uniform01();
        return u > 0.0 ? u : std::numeric_limits<double>::min();
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    double normal() {
        const double u1 = uniform_open();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    // log of a Gamma(shape, 1) sample; stays finite for tiny shapes where the
    // sample itself would underflow. Marsaglia-Tsang for shape >= 1, boosted
    // by U^(1/shape) below 1.
    double log_gamma_sample(double shape) {
        if (shape < 1.0) {
            return log_gamma_sample(shape + 1.0) + std::log(uniform_open()) / shape;
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / (3.0 * std::sqrt(d));
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            const double u = uniform_open();
            if (u < 1.0 - 0.0331 * x * x * x * x) return std::log(d * v);
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return std::log(d * v);
        }
    }

    double gamma_sample(double shape) { return std::exp(log_gamma_sample(shape)); }

    // Beta(a, b) sampled as X/(X+Y) in log space; robust for extreme shapes.
    double beta(double a, double b) {
        const double lx = log_gamma_sample(a);
        const double ly = log_gamma_sample(b);
        return 1.0 / (1.0 + std::exp(ly - lx));
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
};

// Stream seed for (master, tag, index); used for per-replicate streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t index) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64(s);
    s ^= hash_tag(tag);
    std::uint64_t b = splitmix64(s);
    s ^= index * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL;
    std::uint64_t c = splitmix64(s);
    return a ^ (b + 0x9e3779b97f4a7c15ULL) ^ (c << 1);
}

inline Rng derive_stream(std::uint64_t master, std::string_view tag, std::uint64_t index) {
    return Rng(derive_seed(master, tag, index));
}

} // namespace rwalks
