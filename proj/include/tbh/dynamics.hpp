#pragma once

#include "tbh/field.hpp"
#include "tbh/invariants.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace tbh {

struct IntegratorConfig {
    double dt = 1e-3;
    double t_final = 1.0;
    int sample_interval = 100; // steps between emitted records
    bool backward = false;     // integrate toward decreasing t
};

// CFL-like default step: min(1e-3, 0.5/(lambda * max|u|)).
double default_dt(const SpectralField1D& u);

struct BlowupError : std::runtime_error {
    double t;
    double max_modulus;
    BlowupError(double t_, double m);
};

// External body force, given as a truncated field per time.
using Force = std::function<SpectralField1D(double t)>;

// du_k/dt = (-ik/2) [P_L(u^2)]_k; the k = 0 component is exactly zero.
SpectralField1D rhs(const SpectralField1D& u);

struct TrajectorySample {
    double t;
    SpectralField1D field;
    DiagnosticRecord diag;
};

struct TrajectoryRecord {
    std::vector<TrajectorySample> samples;
    const TrajectorySample& front() const { return samples.front(); }
    const TrajectorySample& back() const { return samples.back(); }
    // Field linearly interpolated in time between stored samples.
    double evaluate(double x, double t) const;
};

TrajectoryRecord integrate(const SpectralField1D& u0, const IntegratorConfig& cfg,
                           const Force* force = nullptr);

struct ReversalReport {
    SpectralField1D forward_final;
    SpectralField1D recovered;
    double max_error; // max-modulus coefficient error vs. the initial state
};

ReversalReport time_reverse_run(const SpectralField1D& u0, const IntegratorConfig& cfg);

// Characteristic curve dx/dt = u(x(t), t) with u evaluated spectrally.
struct CharacteristicPath {
    std::vector<double> t;
    std::vector<double> x; // unwrapped (not reduced mod 2 pi)
};

// Integrates from traj.front().t over t_final; the trajectory must cover the
// requested times (a single stored sample means a static field).
CharacteristicPath characteristic(const TrajectoryRecord& traj, double x0, double dt,
                                  double t_final, int sample_stride = 1);

// Ensemble version, parallel over starting points.
std::vector<CharacteristicPath> characteristics(const TrajectoryRecord& traj,
                                                const std::vector<double>& x0, double dt,
                                                double t_final, int sample_stride = 1);

// (1/2) d/dx (1 - P_L)(u^2) evaluated at x: the high-frequency force a
// characteristic feels from the truncation.
double truncation_force(const SpectralField1D& u, double x);

struct SubspaceReport {
    std::vector<double> t;
    std::vector<double> leakage; // max modulus over modes not multiples of k0
    double max_leakage = 0.0;
    // For k0 > lambda/2 the dynamics is linear; max-modulus error against
    // u_k(t) = u_k(0) e^{-ik u_0 t}.
    std::optional<double> traveling_wave_error;
    TrajectoryRecord traj;
};

SubspaceReport subspace_run(const SpectralField1D& u0, int k0, const IntegratorConfig& cfg);

} // namespace tbh
