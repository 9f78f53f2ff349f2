#include "tbh/soliton.hpp"

#include "tbh/dynamics.hpp"
#include "tbh/fft.hpp"
#include "tbh/invariants.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tbh {

NonConvergenceError::NonConvergenceError(int it, double change)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "fixed-point iteration did not converge in " << it
             << " iterations (last change " << change << ")";
          return os.str();
      }()),
      iterations(it), last_change(change) {}

std::vector<cd> ones_seed(int lambda) { return std::vector<cd>(lambda, cd(1.0, 0.0)); }

std::vector<cd> double_soliton_seed(const SolitonSolution& sol, double d) {
    int la = sol.field.cutoff();
    std::vector<cd> seed(la);
    for (int k = 1; k <= la; ++k)
        seed[k - 1] = sol.field.coeffs()[k] * (1.0 + std::polar(1.0, -k * d));
    return seed;
}

double static_residual(const SpectralField1D& u) {
    SpectralField1D r = rhs(u);
    double m = 0.0;
    for (int k = 1; k <= u.cutoff(); ++k) m = std::max(m, std::abs(r.coeffs()[k]));
    return m;
}

namespace {

// One application of the map m_k = -(1/2) sum_{k',k-k' != 0} f_{k-k'} f_{k'}.
// Embedding f with a zero mean mode makes the excluded terms vanish, so the
// plain dealiased product applies.
std::vector<cd> iteration_map(int lambda, const std::vector<cd>& f) {
    std::vector<cd> c(lambda + 1, cd(0.0, 0.0));
    for (int k = 1; k <= lambda; ++k) c[k] = f[k - 1];
    SpectralField1D p = quadratic_product(SpectralField1D(lambda, std::move(c)));
    std::vector<cd> m(lambda);
    for (int k = 1; k <= lambda; ++k) m[k - 1] = -0.5 * p.coeffs()[k];
    return m;
}

// Real iterates use the signed max of the map values; complex ones have no
// order, so the modulus takes over.  With Hermitian storage the k < 0 half
// repeats the k > 0 half (conjugated), so scanning k >= 1 suffices.  Modes
// whose map value is numerically zero are outside the support (the
// invariant-subspace case) and do not take part in the signed max, matching
// the reduced-cutoff form of the iteration.
double regularization_denominator(const std::vector<cd>& m, bool real_mode) {
    double mmax = 0.0;
    for (const cd& v : m) mmax = std::max(mmax, std::abs(v));
    if (!real_mode) return mmax;
    if (mmax == 0.0 || !std::isfinite(mmax)) return 0.0;
    double denom = -std::numeric_limits<double>::infinity();
    for (const cd& v : m)
        if (std::abs(v) > 1e-13 * mmax) denom = std::max(denom, v.real());
    return denom;
}

} // namespace

SolitonSolution solve_static(int lambda, const std::vector<cd>& seed, const SolveOptions& opts) {
    if (lambda < 1) throw std::invalid_argument("cutoff must be >= 1");
    if (seed.size() != static_cast<size_t>(lambda))
        throw std::invalid_argument("seed must cover k = 1..lambda");
    double smax = 0.0;
    for (const cd& v : seed) smax = std::max(smax, std::abs(v));
    if (smax == 0.0) throw DegenerateSeedError("seed must be nonzero");

    bool real_mode = true;
    for (const cd& v : seed)
        if (std::abs(v.imag()) > 1e-13 * smax) real_mode = false;

    std::vector<cd> f = seed;
    double alpha = 0.0;
    int iterations = 0;
    double change = std::numeric_limits<double>::infinity();
    bool converged = false;

    for (iterations = 1; iterations <= opts.max_iter; ++iterations) {
        std::vector<cd> m = iteration_map(lambda, f);
        double denom = regularization_denominator(m, real_mode);
        if (!std::isfinite(denom) || denom == 0.0)
            throw DegenerateSeedError("regularization denominator vanished or is not finite");
        alpha = 1.0 / denom;
        change = 0.0;
        for (int i = 0; i < lambda; ++i) {
            cd next = alpha * m[i];
            change = std::max(change, std::abs(next - f[i]));
            f[i] = next;
        }
        if (change < opts.tol) {
            converged = true;
            break;
        }
    }
    if (!converged) throw NonConvergenceError(opts.max_iter, change);

    // Recover u_k = alpha f_k with u_0 = 1, using alpha evaluated at the
    // converged iterate.
    {
        std::vector<cd> m = iteration_map(lambda, f);
        double denom = regularization_denominator(m, real_mode);
        if (!std::isfinite(denom) || denom == 0.0)
            throw DegenerateSeedError("regularization denominator vanished or is not finite");
        alpha = 1.0 / denom;
    }
    std::vector<cd> c(lambda + 1);
    c[0] = cd(1.0, 0.0);
    for (int k = 1; k <= lambda; ++k) c[k] = alpha * f[k - 1];
    SpectralField1D u(lambda, std::move(c));

    if (opts.center) {
        double xp = extremum_position(u);
        u = translate(u, -xp);
        double imax = 0.0;
        for (int k = 1; k <= lambda; ++k)
            imax = std::max(imax, std::abs(u.coeffs()[k].imag()));
        if (imax < 1e-9 * std::max(1.0, u.max_modulus()))
            for (int k = 1; k <= lambda; ++k)
                u.set_coeff(k, cd(u.coeffs()[k].real(), 0.0));
    }

    SolitonSolution sol{u};
    sol.iterations = iterations;
    sol.alpha = alpha;
    sol.residual = static_residual(u);
    sol.energy = energy(u);
    sol.energy_total = energy_total(u);
    SpectralField1D rest = galilean(u, u.mean(), 0.0);
    sol.hamiltonian = hamiltonian(rest);
    sol.lambda_multiplier = lagrange_multiplier(energy(rest), sol.hamiltonian);
    return sol;
}

SpectralField1D make_traveling(const SolitonSolution& sol, double sigma) {
    SpectralField1D out(sol.field.cutoff());
    for (int k = 0; k <= sol.field.cutoff(); ++k)
        out.set_coeff(k, sigma * sol.field.coeffs()[k]);
    return galilean(out, out.mean(), 0.0);
}

double empirical_model(const FitParams& p, int lambda, int k) {
    return p.a + p.b * std::sin(2.0 * M_PI * k / (lambda * p.d) + p.c);
}

FitParams fit_empirical(const SolitonSolution& sol) {
    const int la = sol.field.cutoff();
    double scale = std::max(1e-30, sol.field.max_modulus());
    for (int k = 1; k <= la; ++k)
        if (std::abs(sol.field.coeffs()[k].imag()) > 1e-9 * scale)
            throw std::invalid_argument("empirical fit needs a centered real-coefficient soliton");

    Eigen::VectorXd y(la);
    for (int k = 1; k <= la; ++k) y[k - 1] = sol.field.coeffs()[k].real();

    // Levenberg-style least squares, seeded from the large-lambda trends
    // a ~ -0.84/lambda, b ~ 0.80/lambda, c ~ 4.95, d ~ 4.32.
    Eigen::Vector4d p(-0.84 / la, 0.80 / la, 4.95, 4.32);
    auto residual = [&](const Eigen::Vector4d& q, Eigen::VectorXd& r) {
        for (int k = 1; k <= la; ++k) {
            double th = 2.0 * M_PI * k / (la * q[3]) + q[2];
            r[k - 1] = y[k - 1] - (q[0] + q[1] * std::sin(th));
        }
    };

    Eigen::VectorXd r(la), rt(la);
    residual(p, r);
    double sse = r.squaredNorm();
    double mu = 1e-3;
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
        Eigen::MatrixXd jac(la, 4);
        for (int k = 1; k <= la; ++k) {
            double th = 2.0 * M_PI * k / (la * p[3]) + p[2];
            jac(k - 1, 0) = -1.0;
            jac(k - 1, 1) = -std::sin(th);
            jac(k - 1, 2) = -p[1] * std::cos(th);
            jac(k - 1, 3) = p[1] * std::cos(th) * 2.0 * M_PI * k / (la * p[3] * p[3]);
        }
        Eigen::Matrix4d jtj = jac.transpose() * jac;
        Eigen::Vector4d jtr = jac.transpose() * r;
        bool stepped = false;
        for (int tries = 0; tries < 25; ++tries) {
            Eigen::Matrix4d lhs = jtj;
            for (int i = 0; i < 4; ++i) lhs(i, i) += mu * std::max(jtj(i, i), 1e-30);
            Eigen::Vector4d delta = lhs.ldlt().solve(-jtr);
            Eigen::Vector4d pt = p + delta;
            residual(pt, rt);
            double sset = rt.squaredNorm();
            if (std::isfinite(sset) && sset <= sse) {
                if (std::abs(sse - sset) < 1e-30 + 1e-14 * sse || delta.norm() < 1e-14)
                    converged = true;
                p = pt;
                r = rt;
                sse = sset;
                mu = std::max(mu * 0.3, 1e-12);
                stepped = true;
                break;
            }
            mu *= 4.0;
        }
        if (!stepped || converged) {
            converged = converged || stepped;
            break;
        }
    }

    FitParams out;
    out.a = p[0];
    out.b = p[1];
    out.c = p[2];
    out.d = p[3];
    out.residual_norm = std::sqrt(sse);
    out.converged = converged;
    return out;
}

std::vector<EnergyScalingRow> energy_scaling(const std::vector<int>& lambdas,
                                             const SolveOptions& opts) {
    std::vector<EnergyScalingRow> rows;
    for (int la : lambdas) {
        SolitonSolution sol = solve_static(la, ones_seed(la), opts);
        rows.push_back({la, sol.energy_total, sol.energy_total * la});
    }
    return rows;
}

std::vector<double> CirculantBasis::expand(const SpectralField1D& u) const {
    const int n = static_cast<int>(first_row.size());
    double lmax = 0.0;
    for (const cd& ev : eigenvalues) lmax = std::max(lmax, std::abs(ev));
    for (const cd& ev : eigenvalues)
        if (std::abs(ev) < 1e-12 * lmax)
            throw CompletenessError("circulant matrix is singular: a DFT component vanishes");

    std::vector<double> b = collocate(u, n);
    std::vector<cd> buf(n);
    for (int j = 0; j < n; ++j) buf[j] = cd(b[j], 0.0);
    fft::transform(buf, -1); // B_m = n A_m lambda_m
    for (int m = 0; m < n; ++m) buf[m] /= double(n) * eigenvalues[m];
    fft::transform(buf, +1);
    std::vector<double> a(n);
    for (int j = 0; j < n; ++j) a[j] = buf[j].real();
    return a;
}

std::vector<double> CirculantBasis::reconstruct(const std::vector<double>& a) const {
    const int n = static_cast<int>(first_row.size());
    std::vector<double> out(n, 0.0);
    // Dense circulant product, kept as an independent route: C_{jk} = c_{(k-j) mod n}.
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) out[j] += first_row[((k - j) % n + n) % n] * a[k];
    return out;
}

CirculantBasis basis_matrix(const SolitonSolution& sol) {
    const int la = sol.field.cutoff();
    const int n = 2 * la + 1;
    CirculantBasis basis;
    basis.lambda = la;
    basis.grid.resize(n);
    for (int j = 0; j < n; ++j) basis.grid[j] = 2.0 * M_PI * j / n;

    std::vector<double> samples = collocate(sol.field, n); // u_s(x_j)
    basis.first_row.resize(n);
    basis.first_row[0] = samples[0];
    for (int j = 1; j < n; ++j) basis.first_row[j] = samples[n - j]; // u_s(-x_j)

    std::vector<cd> buf(n);
    for (int j = 0; j < n; ++j) buf[j] = cd(basis.first_row[j], 0.0);
    fft::transform(buf, +1); // eigenvalue for eigenvector e^{2 pi i j m / n}
    basis.eigenvalues = buf;
    double mn = std::numeric_limits<double>::infinity();
    for (const cd& ev : basis.eigenvalues) mn = std::min(mn, std::abs(ev));
    basis.min_eigenvalue_modulus = mn;
    return basis;
}

} // namespace tbh
