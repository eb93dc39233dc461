#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace jmfar {

// Seeded random source with hand-rolled distributions. std::mt19937 output is
// specified by the standard, but the std distributions are not; rolling our own
// keeps generated corpora and trained models identical for a given seed on any
// platform.
class Rng {
public:
    explicit Rng(uint32_t seed) : gen_(seed) {}

    uint32_t next_u32() { return gen_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() {
        const uint64_t hi = gen_() >> 5;   // 27 bits
        const uint64_t lo = gen_() >> 6;   // 26 bits
        return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // [0, n)
    int uniform_int(int n) {
        return n > 0 ? static_cast<int>(uniform() * n) : 0;
    }

    // Standard normal via Box-Muller; pairs are cached.
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        cached_ = r * std::sin(theta);
        has_cached_ = true;
        return r * std::cos(theta);
    }

    double normal(double mu, double sigma) { return mu + sigma * normal(); }

    double exponential(double mean) {
        double u = uniform();
        while (u <= 0.0) u = uniform();
        return -mean * std::log(u);
    }

private:
    std::mt19937 gen_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

// Order-independent seed mixing for derived streams (e.g. one stream per
// recording or per fitness evaluation).
inline uint32_t mix_seed(uint32_t a, uint32_t b) {
    uint64_t x = (static_cast<uint64_t>(a) << 32) | (b ^ 0x9e3779b9u);
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return static_cast<uint32_t>(x);
}

}  // namespace jmfar
