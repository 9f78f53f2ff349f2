#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace tbh::rng {

// PCG32 (XSH-RR variant).  Small, seedable, and bit-exact within a build;
// independent streams come from the sequence selector.
struct pcg32 {
    std::uint64_t state = 0;
    std::uint64_t inc = 0;
    bool has_spare = false;
    double spare = 0.0;

    explicit pcg32(std::uint64_t seed, std::uint64_t stream = 0) {
        inc = (stream << 1u) | 1u;
        state = 0;
        next();
        state += seed;
        next();
    }

    std::uint32_t next() {
        std::uint64_t old = state;
        state = old * 6364136223846793005ULL + inc;
        std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
    }

    // Uniform on (0,1); never returns 0, so it is safe under log().
    double uniform() { return (static_cast<double>(next()) + 0.5) * 0x1p-32; }

    // Standard normal via Box-Muller, pairwise.
    double gaussian() {
        if (has_spare) {
            has_spare = false;
            return spare;
        }
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare = r * std::sin(a);
        has_spare = true;
        return r * std::cos(a);
    }

    // Re and Im each standard normal.
    std::complex<double> complex_gaussian() {
        double re = gaussian();
        double im = gaussian();
        return {re, im};
    }
};

} // namespace tbh::rng
