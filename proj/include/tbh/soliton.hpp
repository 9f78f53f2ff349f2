#pragma once

#include "tbh/field.hpp"

#include <stdexcept>
#include <vector>

namespace tbh {

struct NonConvergenceError : std::runtime_error {
    int iterations;
    double last_change;
    NonConvergenceError(int it, double change);
};

struct DegenerateSeedError : std::runtime_error {
    explicit DegenerateSeedError(const std::string& what) : std::runtime_error(what) {}
};

// Converged static soliton in its co-moving frame (u_0 = 1), centered so the
// velocity extremum sits at x = 0.
struct SolitonSolution {
    SpectralField1D field;
    double residual = 0.0; // max modulus of the static-condition right side
    int iterations = 0;
    double alpha = 0.0;          // converged regularization factor
    double energy = 0.0;         // Eq-38-style density of the u_0 = 1 field
    double energy_total = 0.0;   // 2 pi sum_{k>=1} |u_k|^2 (frame independent)
    double hamiltonian = 0.0;    // of the u_0 = 0 frame field
    double lambda_multiplier = 0.0; // -3H/(2E) in the u_0 = 0 frame
};

struct SolveOptions {
    double tol = 1e-12;
    int max_iter = 100000;
    bool center = true;
};

// Regularized fixed-point iteration
//   f_k <- -alpha(f) (1/2) sum_{k',k-k' != 0} f_{k-k'} f_{k'},
// alpha = 1/max_k(map value) for real iterates, 1/max_k|map value| for
// complex ones; recovery u_k = alpha f_k with u_0 = 1.
SolitonSolution solve_static(int lambda, const std::vector<cd>& seed,
                             const SolveOptions& opts = {});

std::vector<cd> ones_seed(int lambda);

// Seed coefficients of sol plus translate(sol, d), for feeding back into
// solve_static (double-soliton experiments).
std::vector<cd> double_soliton_seed(const SolitonSolution& sol, double d);

// Max modulus of (-ik/2)[P_L(u^2)]_k over all retained modes: zero exactly
// for a static solution.
double static_residual(const SpectralField1D& u);

// Scale by sigma and boost to the u_0 = 0 frame; the result propagates at
// velocity -sigma there.
SpectralField1D make_traveling(const SolitonSolution& sol, double sigma);

// Empirical model u_k = a + b sin(2 pi k/(lambda d) + c) for k = 1..lambda.
struct FitParams {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
    double residual_norm = 0.0;
    bool converged = false;
};

FitParams fit_empirical(const SolitonSolution& sol);
double empirical_model(const FitParams& p, int lambda, int k);

struct EnergyScalingRow {
    int lambda;
    double e_total;
    double e_total_times_lambda;
};

// Fixed-velocity (sigma = 1) soliton energies across cutoffs.
std::vector<EnergyScalingRow> energy_scaling(const std::vector<int>& lambdas,
                                             const SolveOptions& opts = {});

struct CompletenessError : std::runtime_error {
    explicit CompletenessError(const std::string& what) : std::runtime_error(what) {}
};

// Circulant matrix C_{jk} = u_s(x_j - x_k) on x_j = 2 pi j/(2 lambda + 1) and
// the expansion of fields in translated solitons.
struct CirculantBasis {
    int lambda = 0;
    std::vector<double> grid;           // x_j
    std::vector<double> first_row;      // C_{0j}
    std::vector<cd> eigenvalues;        // DFT of the first row
    double min_eigenvalue_modulus = 0.0;

    // Solve C a = u(x_j); throws CompletenessError when some DFT component
    // vanishes.
    std::vector<double> expand(const SpectralField1D& u) const;
    // Dense reconstruction sum_j a_j u_s(x - x_j) at the grid points.
    std::vector<double> reconstruct(const std::vector<double>& a) const;
};

CirculantBasis basis_matrix(const SolitonSolution& sol);

} // namespace tbh
