#pragma once

#include "tbh/dynamics.hpp"
#include "tbh/field.hpp"
#include "tbh/rng.hpp"
#include "tbh/soliton.hpp"

#include <stdexcept>
#include <vector>

namespace tbh {

struct ExperimentConfig {
    std::string name;
    int lambda = 50;
    double sigma = 0.0;         // noise scale
    std::uint64_t seed = 1;
    std::uint64_t stream = 0;   // RNG substream for sweep workers
    double soliton_scale = 1.0; // sigma_s
    double displacement = M_PI; // d
    IntegratorConfig integ;
    std::string out_dir;
};

struct NoPeakError : std::runtime_error {
    explicit NoPeakError(const std::string& what) : std::runtime_error(what) {}
};

// u_k = (sigma/sqrt 2) X_k for k = 1..lambda, u_0 = 0; X_k complex normal
// with unit-variance real and imaginary parts.
SpectralField1D noise_field(int lambda, double sigma, rng::pcg32& gen);

// Velocity extremum on a 16*lambda grid with derivative-root polishing.
// Near-constant fields have no peak.
double peak_position(const SpectralField1D& u);

// Best displacement of a template against a field, and the normalized inner
// product there.  corr(d) = <u, s(.-d)> is itself band-limited, so the search
// reuses the dense-grid + polish machinery.
struct TemplateMatch {
    double shift = 0.0;
    double correlation = 0.0;
};
TemplateMatch template_match(const SpectralField1D& u, const SpectralField1D& tmpl);

// Full width of the template spike at half its depth.
double template_fwhm(const SpectralField1D& tmpl);

struct PeakTrack {
    std::vector<double> t;
    std::vector<double> position;    // unwrapped by nearest-image continuation
    std::vector<double> residual;    // position minus the linear drift fit
    std::vector<double> correlation; // template correlation per sample
    double drift_speed = 0.0;
    double drift_intercept = 0.0;
    std::vector<double> spectrum_freq;  // cycles per unit time
    std::vector<double> spectrum_power; // unnormalized |DFT(residual)|^2
};

struct DiffusionResult {
    PeakTrack track;
    TrajectoryRecord traj;
    SpectralField1D soliton_template;
    bool soliton_destroyed = false;
    double min_correlation = 1.0;
    // Time-averaged |u_k - s_k e^{-ik x_peak}|^2 for k = 1..lambda: the
    // background spectrum after subtracting the tracked template.
    std::vector<double> background_power;
};

DiffusionResult run_diffusion(const ExperimentConfig& cfg);

struct CollisionResult {
    TrajectoryRecord traj;
    double damage_rel = 0.0;     // L2 distance to best two-soliton fit / soliton norm
    double fit_d1 = 0.0, fit_d2 = 0.0;
    double reversal_error = 0.0; // relative max-modulus error after time reversal
};

CollisionResult run_collision(const ExperimentConfig& cfg);

struct AttractionResult {
    TrajectoryRecord traj;
    std::vector<double> t;
    std::vector<double> separation; // unwrapped peak separation until merger
    bool merged = false;
    double merge_time = 0.0;
    double fwhm = 0.0;
    // Piecewise model: plateau s0 up to t_b, then s0 - accel/2 (t-t_b)^2.
    double plateau_end = 0.0;
    double plateau_value = 0.0;
    double accel = 0.0;
    double r_squared = 0.0; // of the acceleration segment fit
};

AttractionResult run_attraction(const ExperimentConfig& cfg);

} // namespace tbh
