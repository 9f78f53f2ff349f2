#pragma once

#include "tbh/field.hpp"

#include <optional>
#include <vector>

namespace tbh {

struct DiagnosticRecord {
    double t = 0.0;
    double u0 = 0.0;
    double energy = 0.0;       // mean energy density, |u_0|^2/2 + sum_{k>=1} |u_k|^2
    double energy_total = 0.0; // rest-frame total, 2 pi sum_{k>=1} |u_k|^2
    double hamiltonian = 0.0;
    std::optional<double> f_integral;   // integral of a co-evolved passive scalar
    std::optional<double> fu_integral;  // integral of f u
    std::optional<double> fu2_integral; // integral of f u^2, tracked but not conserved
};

double energy(const SpectralField1D& u);
double energy_total(const SpectralField1D& u);

// Cubic invariant H = (1/6) sum over triads k1+k2+k3=0 of u_{k1}u_{k2}u_{k3}.
// Dispatches to the triad sum below the given cutoff and to the collocation
// identity H = (1/12 pi) integral P_L(u^3) dx above it.
double hamiltonian(const SpectralField1D& u);
double hamiltonian_collocation(const SpectralField1D& u);
inline constexpr int hamiltonian_triads_max_cutoff = 64;

// Triad enumeration, O(lambda^2).  Per-k1 partial sums are reduced in index
// order, so the parallel and serial paths agree bitwise.
double hamiltonian_triads(const SpectralField1D& u);
namespace ref {
double hamiltonian_triads_serial(const SpectralField1D& u);
}

// lambda = -3H/(2E), valid in the u_0 = 0 frame.  E must be positive.
double lagrange_multiplier(double e, double h);

DiagnosticRecord diagnostics(double t, const SpectralField1D& u);

// Integrals of a passive scalar co-evolved with u by P_L[df/dt + d(fu)/dx]=0.
struct PassiveSeries {
    std::vector<double> t;
    std::vector<double> f_integral;
    std::vector<double> fu_integral;
    std::vector<double> fu2_integral;
};

struct IntegratorConfig; // dynamics.hpp

PassiveSeries passive_invariants(const SpectralField1D& u0, const SpectralField1D& f0,
                                 const IntegratorConfig& cfg);

} // namespace tbh
