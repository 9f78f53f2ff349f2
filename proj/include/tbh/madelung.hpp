#pragma once

#include "tbh/field.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace tbh::mad {

// Density and phase on a uniform periodic grid x_j = 2 pi j / n.  The
// stored phase samples are the continuous branch within one period; the
// full phase is S(x) = s[j] + winding * kappa * x / (2 pi), so S gains
// winding * kappa per period.  Integer winding <=> quantized circulation.
struct MadelungState {
    int n = 0;
    std::vector<double> rho;
    std::vector<double> s;
    double winding = 0.0;
    double kappa = 2.0 * M_PI;
};

struct CirculationReport {
    double value = 0.0;    // contour integral of u dx = 2 pi u_0
    long nearest = 0;      // nearest integer N
    double deviation = 0.0; // value - N kappa
};

CirculationReport circulation(const SpectralField1D& u, double kappa);

struct MultivaluedError : std::runtime_error {
    double phase_mismatch; // seam mismatch of arg(Psi), radians
    explicit MultivaluedError(double mismatch);
};

// Psi_j = exp(R + i 2 pi S / kappa), rho = e^{2R}.  Throws MultivaluedError
// unless the winding is integral (quantized circulation).
std::vector<cd> wavefunction(const MadelungState& st);

// V = (1/2)(kappa/2 pi)^2 Lap(sqrt rho)/sqrt rho, spectral Laplacian.
// Densities below the 1e-12 positivity floor are a domain error.
std::vector<double> quantum_potential(const std::vector<double>& rho, double kappa);

// Spectral derivative of periodic samples.
std::vector<double> spectral_derivative(const std::vector<double>& g, int order);
std::vector<cd> spectral_derivative(const std::vector<cd>& g, int order);

struct ResidualReport {
    double schrodinger_max = 0.0;     // [-(hbar^2/2) Lap + V] Psi - i hbar dPsi/dt
    double continuity_max = 0.0;      // drho/dt + d(rho S_x)/dx
    double hamilton_jacobi_max = 0.0; // dS/dt + S_x^2/2, spatial mean removed
    double split_consistency = 0.0;   // complex residual vs the two real ones
};

// Residuals from uniformly spaced snapshots (>= 3), central time differences.
ResidualReport schrodinger_residual(const std::vector<MadelungState>& snaps, double dt_snap);

struct MadelungTrajectory {
    double dt_snap = 0.0;
    std::vector<MadelungState> states;
};

// RK4 on (rho, s) with spectral derivatives: drho/dt = -(rho S_x)_x,
// ds/dt = -S_x^2/2.  Snapshots are uniformly spaced by dt_snap.
MadelungTrajectory evolve_madelung(const MadelungState& st, double dt, double t_final,
                                   int n_snaps);

struct ShockReport {
    bool shock_detected = false;
    double shock_time = 0.0;        // extrapolated 1/max|u_x| zero crossing
    double shock_time_oracle = 0.0; // 1/max(-u0') from the characteristics
    std::vector<double> t_burgers, maxgrad_burgers;
    std::vector<double> t_schrod, maxgrad_schrod;
    double max_schrod_grad = 0.0;
    bool schrod_finite = true;
};

// Evolves u0 = S_x two ways: high-resolution Galerkin Burgers until the
// gradient blows up, and the free linear equation by exact spectral
// propagation of Psi over [0, horizon].
ShockReport shock_suppression_demo(const std::function<double(double)>& u0, double kappa,
                                   int grid_n = 2048, double horizon = 5.0);

struct RadiationReport {
    double classical = 0.0; // integral rho dV/dx dx (zero by parts)
    double quantum = 0.0;   // integral rho (dV/dx)^2 dx
    double scale = 0.0;     // integral rho |dV/dx| dx
};

RadiationReport radiation_integrals(const std::vector<double>& rho, double kappa);

} // namespace tbh::mad
