#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace fracpoly {

// xorshift64* generator. Experiment reports quote the seed, so coefficient
// streams are reproducible across runs and platforms.
struct Xorshift64Star {
    std::uint64_t state;

    explicit Xorshift64Star(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next() {
        std::uint64_t x = state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state = x;
        return x * 0x2545f4914f6cdd1dull;
    }

    // Dyadic rational in [0,1) with denominator 2^32; exact in double.
    std::uint32_t next_u32() { return static_cast<std::uint32_t>(next() >> 32); }

    double next_unit() { return next_u32() / 4294967296.0; }

    std::complex<double> next_phase() {
        double t = next_unit();
        return {std::cos(6.283185307179586476925286766559 * t),
                std::sin(6.283185307179586476925286766559 * t)};
    }
};

}  // namespace fracpoly
