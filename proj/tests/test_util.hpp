#pragma once

#include "tbh/field.hpp"
#include "tbh/rng.hpp"

#include <cmath>

namespace tbh::test {

inline SpectralField1D random_field(int lambda, rng::pcg32& gen, double scale = 1.0,
                                    bool zero_mean = false) {
    SpectralField1D u(lambda);
    if (!zero_mean) u.set_coeff(0, cd(scale * gen.gaussian(), 0.0));
    for (int k = 1; k <= lambda; ++k) u.set_coeff(k, scale * gen.complex_gaussian());
    return u;
}

inline double max_coeff_diff(const SpectralField1D& a, const SpectralField1D& b) {
    double m = 0.0;
    for (int k = 0; k <= a.cutoff(); ++k)
        m = std::max(m, std::abs(a.coeffs()[k] - b.coeffs()[k]));
    return m;
}

// u = 2 cos x: the first-mode unit field used throughout the examples.
inline SpectralField1D two_cos_x(int lambda) {
    SpectralField1D u(lambda);
    u.set_coeff(1, cd(1.0, 0.0));
    return u;
}

} // namespace tbh::test
