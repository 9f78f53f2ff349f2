#include "tbh/burgers3d.hpp"

#include "tbh/fft.hpp"
#include "tbh/parallel.hpp"
#include "tbh/stepper.hpp"

#include <cmath>
#include <stdexcept>

namespace tbh {

namespace {

size_t cube_index(int side, int l, int kx, int ky, int kz) {
    return (static_cast<size_t>(kx + l) * side + (ky + l)) * side + (kz + l);
}

int pad_size(int lambda) { return fft::next_fast_size(3 * lambda + 1); }

size_t pad_index(int m, int kx, int ky, int kz) {
    auto w = [m](int k) { return ((k % m) + m) % m; };
    return (static_cast<size_t>(w(kx)) * m + w(ky)) * m + w(kz);
}

} // namespace

SpectralField3D::SpectralField3D(int lambda) : lambda_(lambda) {
    if (lambda < 1 || lambda > max_cutoff)
        throw std::invalid_argument("3D cutoff must be in [1, 32]");
    for (auto& v : c_) v.assign(volume(), cd(0.0, 0.0));
}

cd& SpectralField3D::at(int comp, int kx, int ky, int kz) {
    return c_[comp][cube_index(side(), lambda_, kx, ky, kz)];
}

const cd& SpectralField3D::at(int comp, int kx, int ky, int kz) const {
    return c_[comp][cube_index(side(), lambda_, kx, ky, kz)];
}

double SpectralField3D::max_modulus() const {
    double m = 0.0;
    for (const auto& v : c_)
        for (const cd& x : v) m = std::max(m, std::abs(x));
    return m;
}

void SpectralField3D::enforce_hermitian() {
    const int l = lambda_;
    for (int comp = 0; comp < 3; ++comp)
        for (int kx = -l; kx <= l; ++kx)
            for (int ky = -l; ky <= l; ++ky)
                for (int kz = -l; kz <= l; ++kz) {
                    if (kx < 0 || (kx == 0 && (ky < 0 || (ky == 0 && kz < 0)))) continue;
                    if (kx == 0 && ky == 0 && kz == 0) {
                        cd& v = at(comp, 0, 0, 0);
                        v = cd(v.real(), 0.0);
                        continue;
                    }
                    at(comp, -kx, -ky, -kz) = std::conj(at(comp, kx, ky, kz));
                }
}

ScalarField3D::ScalarField3D(int lambda_) : lambda(lambda_) {
    if (lambda < 1 || lambda > SpectralField3D::max_cutoff)
        throw std::invalid_argument("3D cutoff must be in [1, 32]");
    c.assign(static_cast<size_t>(side()) * side() * side(), cd(0.0, 0.0));
}

cd& ScalarField3D::at(int kx, int ky, int kz) {
    return c[cube_index(side(), lambda, kx, ky, kz)];
}

const cd& ScalarField3D::at(int kx, int ky, int kz) const {
    return c[cube_index(side(), lambda, kx, ky, kz)];
}

void ScalarField3D::enforce_hermitian() {
    const int l = lambda;
    for (int kx = -l; kx <= l; ++kx)
        for (int ky = -l; ky <= l; ++ky)
            for (int kz = -l; kz <= l; ++kz) {
                if (kx < 0 || (kx == 0 && (ky < 0 || (ky == 0 && kz < 0)))) continue;
                if (kx == 0 && ky == 0 && kz == 0) {
                    cd& v = at(0, 0, 0);
                    v = cd(v.real(), 0.0);
                    continue;
                }
                at(-kx, -ky, -kz) = std::conj(at(kx, ky, kz));
            }
}

namespace {

// Synthesis of a coefficient cube onto the padded m^3 grid.  "deriv" < 0
// gives the plain field, otherwise multiplies by i k_deriv first.
std::vector<double> synthesize(const std::vector<cd>& cube, int l, int m, int deriv) {
    std::vector<cd> buf(static_cast<size_t>(m) * m * m, cd(0.0, 0.0));
    const int side = 2 * l + 1;
    for (int kx = -l; kx <= l; ++kx)
        for (int ky = -l; ky <= l; ++ky)
            for (int kz = -l; kz <= l; ++kz) {
                cd v = cube[cube_index(side, l, kx, ky, kz)];
                if (deriv == 0) v *= cd(0.0, kx);
                else if (deriv == 1) v *= cd(0.0, ky);
                else if (deriv == 2) v *= cd(0.0, kz);
                buf[pad_index(m, kx, ky, kz)] = v;
            }
    fft::transform3d(buf.data(), m, +1);
    std::vector<double> out(buf.size());
    for (size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real();
    return out;
}

std::vector<cd> analyze(const std::vector<double>& grid, int l, int m) {
    std::vector<cd> buf(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) buf[i] = cd(grid[i], 0.0);
    fft::transform3d(buf.data(), m, -1);
    const double inv = 1.0 / double(grid.size());
    const int side = 2 * l + 1;
    std::vector<cd> cube(static_cast<size_t>(side) * side * side);
    for (int kx = -l; kx <= l; ++kx)
        for (int ky = -l; ky <= l; ++ky)
            for (int kz = -l; kz <= l; ++kz)
                cube[cube_index(side, l, kx, ky, kz)] = inv * buf[pad_index(m, kx, ky, kz)];
    return cube;
}

SpectralField3D rhs3d_impl(const SpectralField3D& u, bool parallel) {
    const int l = u.cutoff();
    const int m = pad_size(l);
    const size_t vol = static_cast<size_t>(m) * m * m;

    // 3 velocity grids and 9 derivative grids, all independent transforms.
    std::vector<std::vector<double>> ug(3), dg(9);
    auto task = [&](int t) {
        if (t < 3) ug[t] = synthesize(u.data()[t], l, m, -1);
        else dg[t - 3] = synthesize(u.data()[(t - 3) / 3], l, m, (t - 3) % 3);
    };
    if (parallel) par::for_each(12, task);
    else par::for_each_serial(12, task);

    SpectralField3D out(l);
    auto conv = [&](int i) {
        std::vector<double> acc(vol, 0.0);
        for (int j = 0; j < 3; ++j) {
            const std::vector<double>& a = ug[j];
            const std::vector<double>& b = dg[3 * i + j];
            for (size_t p = 0; p < vol; ++p) acc[p] += a[p] * b[p];
        }
        std::vector<cd> cube = analyze(acc, l, m);
        for (size_t p = 0; p < cube.size(); ++p) out.data()[i][p] = -cube[p];
    };
    if (parallel) par::for_each(3, conv);
    else par::for_each_serial(3, conv);
    return out;
}

} // namespace

SpectralField3D rhs3d(const SpectralField3D& u) { return rhs3d_impl(u, true); }

namespace ref {

SpectralField3D rhs3d_serial(const SpectralField3D& u) { return rhs3d_impl(u, false); }

SpectralField3D rhs3d_direct(const SpectralField3D& u) {
    const int l = u.cutoff();
    SpectralField3D out(l);
    for (int comp = 0; comp < 3; ++comp)
        for (int kx = -l; kx <= l; ++kx)
            for (int ky = -l; ky <= l; ++ky)
                for (int kz = -l; kz <= l; ++kz) {
                    cd s(0.0, 0.0);
                    for (int qx = std::max(-l, kx - l); qx <= std::min(l, kx + l); ++qx)
                        for (int qy = std::max(-l, ky - l); qy <= std::min(l, ky + l); ++qy)
                            for (int qz = std::max(-l, kz - l); qz <= std::min(l, kz + l); ++qz) {
                                cd grad = cd(0.0, qx) * u.at(0, kx - qx, ky - qy, kz - qz) +
                                          cd(0.0, qy) * u.at(1, kx - qx, ky - qy, kz - qz) +
                                          cd(0.0, qz) * u.at(2, kx - qx, ky - qy, kz - qz);
                                s += grad * u.at(comp, qx, qy, qz);
                            }
                    out.at(comp, kx, ky, kz) = -s;
                }
    return out;
}

} // namespace ref

TransverseProfile::TransverseProfile(int lambda_) : lambda(lambda_) {
    int side = 2 * lambda + 1;
    c.assign(static_cast<size_t>(side) * side, cd(0.0, 0.0));
}

cd& TransverseProfile::at(int ky, int kz) {
    return c[static_cast<size_t>(ky + lambda) * (2 * lambda + 1) + (kz + lambda)];
}

const cd& TransverseProfile::at(int ky, int kz) const {
    return c[static_cast<size_t>(ky + lambda) * (2 * lambda + 1) + (kz + lambda)];
}

TransverseProfile uniform_profile(int lambda) {
    TransverseProfile g(lambda);
    g.at(0, 0) = cd(1.0, 0.0);
    return g;
}

TransverseProfile dirichlet_profile(int lambda) {
    TransverseProfile g(lambda);
    for (cd& v : g.c) v = cd(1.0, 0.0);
    return g;
}

TransverseProfile random_profile(int lambda, rng::pcg32& gen, double scale) {
    TransverseProfile g(lambda);
    for (int ky = -lambda; ky <= lambda; ++ky)
        for (int kz = -lambda; kz <= lambda; ++kz) {
            if (ky < 0 || (ky == 0 && kz < 0)) continue;
            if (ky == 0 && kz == 0) {
                g.at(0, 0) = cd(scale * gen.gaussian(), 0.0);
                continue;
            }
            cd v = scale * gen.complex_gaussian();
            g.at(ky, kz) = v;
            g.at(-ky, -kz) = std::conj(v);
        }
    return g;
}

SpectralField3D factorized_soliton(const SolitonSolution& sol, const TransverseProfile& g) {
    const int l = g.lambda;
    if (sol.field.cutoff() != l)
        throw std::invalid_argument("1D soliton cutoff must match the cube cutoff");
    SpectralField3D u(l);
    for (int kx = -l; kx <= l; ++kx) {
        cd sx = sol.field.coeff(kx);
        for (int ky = -l; ky <= l; ++ky)
            for (int kz = -l; kz <= l; ++kz) u.at(0, kx, ky, kz) = sx * g.at(ky, kz);
    }
    return u;
}

namespace {

std::vector<cd> pack(const SpectralField3D& u) {
    std::vector<cd> y;
    y.reserve(3 * u.volume());
    for (const auto& v : u.data()) y.insert(y.end(), v.begin(), v.end());
    return y;
}

SpectralField3D unpack(int lambda, const std::vector<cd>& y) {
    SpectralField3D u(lambda);
    size_t vol = u.volume();
    for (int c = 0; c < 3; ++c)
        std::copy(y.begin() + c * vol, y.begin() + (c + 1) * vol, u.data()[c].begin());
    return u;
}

void check_finite_3d(const SpectralField3D& u, double t) {
    double m = u.max_modulus();
    if (!std::isfinite(m) || m > 1e12) throw BlowupError(t, m);
}

} // namespace

Trajectory3D integrate3d(const SpectralField3D& u0, const IntegratorConfig& cfg) {
    const int l = u0.cutoff();
    const double dt = cfg.backward ? -cfg.dt : cfg.dt;
    const long steps = std::lround(cfg.t_final / cfg.dt);
    std::vector<cd> y = pack(u0);
    auto f = [l](const std::vector<cd>& s, double) { return pack(rhs3d(unpack(l, s))); };

    Trajectory3D traj;
    traj.t.push_back(0.0);
    traj.fields.push_back(u0);
    for (long i = 0; i < steps; ++i) {
        detail::rk4_step(y, i * dt, dt, f);
        SpectralField3D u = unpack(l, y);
        check_finite_3d(u, (i + 1) * dt);
        if ((i + 1) % cfg.sample_interval == 0 || i + 1 == steps) {
            traj.t.push_back((i + 1) * dt);
            traj.fields.push_back(u);
        }
    }
    return traj;
}

namespace {

double integral_f3(const ScalarField3D& f) {
    return std::pow(2.0 * M_PI, 3) * f.at(0, 0, 0).real();
}

double integral_fu3(const ScalarField3D& f, const SpectralField3D& u, int comp) {
    // Both fields are band-limited, so the zero mode of the product is the
    // plain coefficient sum sum_k conj(f_k) u_k.
    cd s(0.0, 0.0);
    for (size_t i = 0; i < f.c.size(); ++i) s += std::conj(f.c[i]) * u.data()[comp][i];
    return std::pow(2.0 * M_PI, 3) * s.real();
}

} // namespace

Passive3DSeries passive_invariants_3d(const SpectralField3D& u0, const ScalarField3D& f0,
                                      const IntegratorConfig& cfg) {
    if (u0.cutoff() != f0.lambda) throw std::invalid_argument("cutoff mismatch");
    const int l = u0.cutoff();
    const int m = pad_size(l);
    const size_t vol = static_cast<size_t>(m) * m * m;
    const size_t cvol = u0.volume();
    const double dt = cfg.backward ? -cfg.dt : cfg.dt;
    const long steps = std::lround(cfg.t_final / cfg.dt);

    std::vector<cd> y = pack(u0);
    y.insert(y.end(), f0.c.begin(), f0.c.end());

    auto rhs_pair = [l, m, vol, cvol](const std::vector<cd>& s, double) {
        SpectralField3D u = unpack(l, std::vector<cd>(s.begin(), s.begin() + 3 * cvol));
        ScalarField3D f(l);
        std::copy(s.begin() + 3 * cvol, s.end(), f.c.begin());

        std::vector<cd> out = pack(rhs3d(u));

        // df_k = -i k . (f u)_k with dealiased products.
        std::vector<double> fg = synthesize(f.c, l, m, -1);
        std::array<std::vector<cd>, 3> flux;
        par::for_each(3, [&](int j) {
            std::vector<double> p = synthesize(u.data()[j], l, m, -1);
            for (size_t q = 0; q < vol; ++q) p[q] *= fg[q];
            flux[j] = analyze(p, l, m);
        });
        std::vector<cd> df(cvol);
        const int side = 2 * l + 1;
        for (int kx = -l; kx <= l; ++kx)
            for (int ky = -l; ky <= l; ++ky)
                for (int kz = -l; kz <= l; ++kz) {
                    size_t i = cube_index(side, l, kx, ky, kz);
                    df[i] = cd(0.0, -1.0) *
                            (double(kx) * flux[0][i] + double(ky) * flux[1][i] +
                             double(kz) * flux[2][i]);
                }
        out.insert(out.end(), df.begin(), df.end());
        return out;
    };

    Passive3DSeries series;
    auto emit = [&](double t) {
        SpectralField3D u = unpack(l, std::vector<cd>(y.begin(), y.begin() + 3 * cvol));
        ScalarField3D f(l);
        std::copy(y.begin() + 3 * cvol, y.end(), f.c.begin());
        series.t.push_back(t);
        series.f_integral.push_back(integral_f3(f));
        for (int c = 0; c < 3; ++c) series.fu_integral[c].push_back(integral_fu3(f, u, c));
    };

    emit(0.0);
    for (long i = 0; i < steps; ++i) {
        detail::rk4_step(y, i * dt, dt, rhs_pair);
        double m = 0.0;
        for (const cd& v : y) m = std::max(m, std::abs(v));
        if (!std::isfinite(m) || m > 1e12) throw BlowupError((i + 1) * dt, m);
        if ((i + 1) % cfg.sample_interval == 0 || i + 1 == steps) emit((i + 1) * dt);
    }
    return series;
}

double hamiltonian_like_3d(const SpectralField3D& u) {
    // Per-component analog of the 1D cubic sum; not an invariant in 3D.
    const int l = u.cutoff();
    const int m = pad_size(l);
    double h = 0.0;
    for (int c = 0; c < 3; ++c) {
        std::vector<double> g = synthesize(u.data()[c], l, m, -1);
        double s = 0.0;
        for (double v : g) s += v * v * v;
        h += s / double(g.size());
    }
    return h / 6.0;
}

} // namespace tbh
