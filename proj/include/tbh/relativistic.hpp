#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace tbh::rel {

// Contravariant 4-velocity sample, signature (+,-,-,-), U^alpha U_alpha = 1.
using Vec4 = std::array<double, 4>;

struct FourVelocityField {
    std::function<Vec4(double t, double x, double y, double z)> u;
    Vec4 operator()(double t, double x, double y, double z) const { return u(t, x, y, z); }
};

FourVelocityField constant_boost(double theta); // (cosh th, sinh th, 0, 0)

// U = (sqrt(1 + f(y)^2), f(y), 0, 0): x-flow sheared in y, time independent.
FourVelocityField stationary_shear(std::function<double(double)> f);

// Exact dust solution with straight characteristics: U^x(t,x) = w where
// x = w (1 + t / sqrt(1 + w^2)); reduces to the rarefaction profile
// u = x/(1+tau) in proper time.
FourVelocityField rarefaction_lift();

// Sample points for residual scans.  Differences use their own stencil
// spacing h, independent of the sampling density.
struct Grid4 {
    std::array<int, 4> n{1, 1, 1, 1};
    std::array<double, 4> lo{0.0, 0.0, 0.0, 0.0};
    std::array<double, 4> hi{0.0, 0.0, 0.0, 0.0};
    size_t points() const { return size_t(n[0]) * n[1] * n[2] * n[3]; }
    std::array<double, 4> point(size_t flat) const;
};

// max over the grid and nu of |U^alpha d_alpha U^nu|, central differences.
double dust_residual(const FourVelocityField& f, const Grid4& g, double h);
namespace ref {
double dust_residual_serial(const FourVelocityField& f, const Grid4& g, double h);
}

struct ProperTimePath {
    std::vector<double> t, x, y, z, tau;
    bool truncated = false;         // left the allowed x-range
    double max_norm_violation = 0.0; // max |U.U - 1| along the path
};

std::vector<ProperTimePath> proper_time_map(
    const FourVelocityField& f, double t_final, double dt,
    const std::vector<std::array<double, 3>>& seeds, int sample_stride = 1,
    std::optional<std::array<double, 2>> x_bounds = std::nullopt);

struct EquivalenceReport {
    double max_residual = 0.0;            // d_tau U + (U.grad)U via the chain rule
    double max_normalization_error = 0.0; // |U^0 - sqrt(1 + U.U)|
};

EquivalenceReport burgers_equivalence(const FourVelocityField& f, const Grid4& g, double h);

struct VorticityReport {
    double max_transversality = 0.0; // max |U^mu omega_{mu nu}|
    double max_abs_pfaffian = 0.0;
    double max_abs_det = 0.0;
    double max_det_minus_pf2 = 0.0;
    double max_dual_contraction = 0.0; // eps^{mu nu a b} omega_{ab} omega_{mu nu}
    int max_rank = 0;                  // numerical rank of omega over the grid
};

VorticityReport vorticity_checks(const FourVelocityField& f, const Grid4& g, double h);

// max |det(omega) - Pf(omega)^2| over random antisymmetric 4x4 matrices.
double antisymmetric_det_pf_gap(int samples, std::uint64_t seed);

// hbar*c in MeV*fm: the exact value, and the rounded one the published
// quark-gluon estimates are quoted with (T L / (eta/s) ~ 48 pi needs
// T L = 6 in natural units, i.e. hbar*c ~ 200).
constexpr double hbar_c_mev_fm = 197.327;
constexpr double hbar_c_mev_fm_round = 200.0;

struct ReynoldsEstimate {
    double re_local = 0.0;  // T L / (eta/s)
    double re_scaled = 0.0; // (L / L_ref) * Re_local(L_ref)
};

// T in MeV, lengths in fm; eta/s dimensionless.  Nonpositive inputs are
// domain errors.
ReynoldsEstimate reynolds_estimate(double t_mev, double l_fm, double eta_over_s,
                                   double l_ref_fm, double hbar_c = hbar_c_mev_fm_round);

} // namespace tbh::rel
