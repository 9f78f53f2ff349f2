#pragma once

#include "tbh/dynamics.hpp"
#include "tbh/field.hpp"
#include "tbh/rng.hpp"
#include "tbh/soliton.hpp"

#include <array>
#include <vector>

namespace tbh {

// Cube-truncated 3D velocity field: one complex coefficient array per
// component over k in [-L, L]^3, Hermitian so the field is real.  Cutoffs
// are capped at 32 (verification scale).
class SpectralField3D {
  public:
    static constexpr int max_cutoff = 32;

    explicit SpectralField3D(int lambda);

    int cutoff() const { return lambda_; }
    int side() const { return 2 * lambda_ + 1; }
    size_t volume() const { return static_cast<size_t>(side()) * side() * side(); }

    cd& at(int comp, int kx, int ky, int kz);
    const cd& at(int comp, int kx, int ky, int kz) const;

    std::array<std::vector<cd>, 3>& data() { return c_; }
    const std::array<std::vector<cd>, 3>& data() const { return c_; }

    double max_modulus() const;
    void enforce_hermitian(); // u(-k) <- conj(u(k)) from the kx > 0 half

  private:
    int lambda_;
    std::array<std::vector<cd>, 3> c_;
};

struct ScalarField3D {
    int lambda = 0;
    std::vector<cd> c;

    explicit ScalarField3D(int lambda_);
    int side() const { return 2 * lambda + 1; }
    cd& at(int kx, int ky, int kz);
    const cd& at(int kx, int ky, int kz) const;
    void enforce_hermitian();
};

// -P_L[(u . grad) u] via padded collocation products (>= 3L+1 per axis).
SpectralField3D rhs3d(const SpectralField3D& u);

namespace ref {
SpectralField3D rhs3d_serial(const SpectralField3D& u);
// Direct coefficient-space convolution, O(L^6); small cutoffs only.
SpectralField3D rhs3d_direct(const SpectralField3D& u);
} // namespace ref

// Transverse profile g(y, z), band-limited at the cube cutoff.
struct TransverseProfile {
    int lambda = 0;
    std::vector<cd> c; // (2L+1)^2, ky-major
    explicit TransverseProfile(int lambda_);
    cd& at(int ky, int kz);
    const cd& at(int ky, int kz) const;
};

TransverseProfile uniform_profile(int lambda);              // g == 1
TransverseProfile dirichlet_profile(int lambda);            // delta_L(y) delta_L(z)
TransverseProfile random_profile(int lambda, rng::pcg32& gen, double scale = 1.0);

// u = u_s(x) g(y,z) x_hat; the 1D soliton must be solved at the cube cutoff.
SpectralField3D factorized_soliton(const SolitonSolution& sol, const TransverseProfile& g);

struct Trajectory3D {
    std::vector<double> t;
    std::vector<SpectralField3D> fields;
};

Trajectory3D integrate3d(const SpectralField3D& u0, const IntegratorConfig& cfg);

struct Passive3DSeries {
    std::vector<double> t;
    std::vector<double> f_integral;
    std::array<std::vector<double>, 3> fu_integral;
};

// Co-evolves f by P_L[df/dt + div(f u)] = 0 alongside u and reports the
// invariant integrals (2 pi)^3-normalized.
Passive3DSeries passive_invariants_3d(const SpectralField3D& u0, const ScalarField3D& f0,
                                      const IntegratorConfig& cfg);

// Triad-style cubic diagnostic, reported but not conserved in 3D.
double hamiltonian_like_3d(const SpectralField3D& u);

} // namespace tbh
