#pragma once

#include "tbh/field.hpp"

#include <vector>

namespace tbh::detail {

// Classical fixed-step RK4 on a flat complex state vector.
template <class Rhs>
void rk4_step(std::vector<cd>& y, double t, double dt, Rhs&& f) {
    const size_t n = y.size();
    std::vector<cd> k1 = f(y, t);
    std::vector<cd> tmp(n);
    for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    std::vector<cd> k2 = f(tmp, t + 0.5 * dt);
    for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    std::vector<cd> k3 = f(tmp, t + 0.5 * dt);
    for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
    std::vector<cd> k4 = f(tmp, t + dt);
    for (size_t i = 0; i < n; ++i)
        y[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

// Same scheme on a flat real state vector (characteristics, Madelung grids).
template <class Rhs>
void rk4_step_real(std::vector<double>& y, double t, double dt, Rhs&& f) {
    const size_t n = y.size();
    std::vector<double> k1 = f(y, t);
    std::vector<double> tmp(n);
    for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    std::vector<double> k2 = f(tmp, t + 0.5 * dt);
    for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    std::vector<double> k3 = f(tmp, t + 0.5 * dt);
    for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
    std::vector<double> k4 = f(tmp, t + dt);
    for (size_t i = 0; i < n; ++i)
        y[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

} // namespace tbh::detail
