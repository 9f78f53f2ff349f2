#include "tbh/relativistic.hpp"

#include "tbh/parallel.hpp"
#include "tbh/rng.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace tbh::rel {

FourVelocityField constant_boost(double theta) {
    double c = std::cosh(theta), s = std::sinh(theta);
    return {[c, s](double, double, double, double) { return Vec4{c, s, 0.0, 0.0}; }};
}

FourVelocityField stationary_shear(std::function<double(double)> f) {
    return {[f = std::move(f)](double, double, double y, double) {
        double v = f(y);
        return Vec4{std::sqrt(1.0 + v * v), v, 0.0, 0.0};
    }};
}

FourVelocityField rarefaction_lift() {
    return {[](double t, double x, double, double) {
        // Solve x = w (1 + t/sqrt(1+w^2)); monotone in w, Newton converges
        // from the continuum guess w = x/(1+t).
        double w = x / (1.0 + std::max(t, 0.0));
        for (int it = 0; it < 60; ++it) {
            double s = std::sqrt(1.0 + w * w);
            double g = w * (1.0 + t / s) - x;
            double dg = 1.0 + t / (s * s * s);
            double step = g / dg;
            w -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(w))) break;
        }
        return Vec4{std::sqrt(1.0 + w * w), w, 0.0, 0.0};
    }};
}

std::array<double, 4> Grid4::point(size_t flat) const {
    std::array<double, 4> p;
    for (int a = 3; a >= 0; --a) {
        int i = static_cast<int>(flat % n[a]);
        flat /= n[a];
        p[a] = n[a] > 1 ? lo[a] + (hi[a] - lo[a]) * i / (n[a] - 1) : lo[a];
    }
    return p;
}

namespace {

Vec4 eval(const FourVelocityField& f, const std::array<double, 4>& p) {
    return f(p[0], p[1], p[2], p[3]);
}

// d_alpha U at p by central differences; rows indexed by alpha.
std::array<Vec4, 4> gradient(const FourVelocityField& f, const std::array<double, 4>& p,
                             double h) {
    std::array<Vec4, 4> g;
    for (int a = 0; a < 4; ++a) {
        std::array<double, 4> pp = p, pm = p;
        pp[a] += h;
        pm[a] -= h;
        Vec4 up = eval(f, pp), um = eval(f, pm);
        for (int nu = 0; nu < 4; ++nu) g[a][nu] = (up[nu] - um[nu]) / (2.0 * h);
    }
    return g;
}

double dust_residual_impl(const FourVelocityField& f, const Grid4& g, double h, bool parallel) {
    const size_t np = g.points();
    std::vector<double> slots(np, 0.0);
    auto body = [&](int i) {
        std::array<double, 4> p = g.point(i);
        Vec4 u = eval(f, p);
        std::array<Vec4, 4> du = gradient(f, p, h);
        double m = 0.0;
        for (int nu = 0; nu < 4; ++nu) {
            double r = 0.0;
            for (int a = 0; a < 4; ++a) r += u[a] * du[a][nu];
            m = std::max(m, std::abs(r));
        }
        slots[i] = m;
    };
    if (parallel) par::for_each(static_cast<int>(np), body);
    else par::for_each_serial(static_cast<int>(np), body);
    double m = 0.0;
    for (double v : slots) m = std::max(m, v);
    return m;
}

double det4(const double a[4][4]) {
    double det = 0.0;
    for (int c = 0; c < 4; ++c) {
        double m[3][3];
        for (int i = 1; i < 4; ++i) {
            int cc = 0;
            for (int j = 0; j < 4; ++j) {
                if (j == c) continue;
                m[i - 1][cc++] = a[i][j];
            }
        }
        double minor = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        det += (c % 2 == 0 ? 1.0 : -1.0) * a[0][c] * minor;
    }
    return det;
}

double pfaffian4(const double w[4][4]) {
    return w[0][1] * w[2][3] - w[0][2] * w[1][3] + w[0][3] * w[1][2];
}

// eps^{mu nu alpha beta} omega_{alpha beta} omega_{mu nu}, literal sum over
// permutations with eps^{0123} = +1.
double dual_contraction(const double w[4][4]) {
    static const int perm[24][5] = {
        {0, 1, 2, 3, +1}, {0, 1, 3, 2, -1}, {0, 2, 1, 3, -1}, {0, 2, 3, 1, +1},
        {0, 3, 1, 2, +1}, {0, 3, 2, 1, -1}, {1, 0, 2, 3, -1}, {1, 0, 3, 2, +1},
        {1, 2, 0, 3, +1}, {1, 2, 3, 0, -1}, {1, 3, 0, 2, -1}, {1, 3, 2, 0, +1},
        {2, 0, 1, 3, +1}, {2, 0, 3, 1, -1}, {2, 1, 0, 3, -1}, {2, 1, 3, 0, +1},
        {2, 3, 0, 1, +1}, {2, 3, 1, 0, -1}, {3, 0, 1, 2, -1}, {3, 0, 2, 1, +1},
        {3, 1, 0, 2, +1}, {3, 1, 2, 0, -1}, {3, 2, 0, 1, -1}, {3, 2, 1, 0, +1}};
    double s = 0.0;
    for (const auto& q : perm) s += q[4] * w[q[2]][q[3]] * w[q[0]][q[1]];
    return s;
}

} // namespace

double dust_residual(const FourVelocityField& f, const Grid4& g, double h) {
    return dust_residual_impl(f, g, h, true);
}

namespace ref {
double dust_residual_serial(const FourVelocityField& f, const Grid4& g, double h) {
    return dust_residual_impl(f, g, h, false);
}
} // namespace ref

std::vector<ProperTimePath> proper_time_map(const FourVelocityField& f, double t_final,
                                            double dt, const std::vector<std::array<double, 3>>& seeds,
                                            int sample_stride,
                                            std::optional<std::array<double, 2>> x_bounds) {
    std::vector<ProperTimePath> paths(seeds.size());
    long steps = std::lround(t_final / dt);
    par::for_each(static_cast<int>(seeds.size()), [&](int i) {
        ProperTimePath path;
        std::array<double, 4> s{seeds[i][0], seeds[i][1], seeds[i][2], 0.0}; // x, y, z, tau
        auto record = [&](double t) {
            path.t.push_back(t);
            path.x.push_back(s[0]);
            path.y.push_back(s[1]);
            path.z.push_back(s[2]);
            path.tau.push_back(s[3]);
            Vec4 u = f(t, s[0], s[1], s[2]);
            double norm = u[0] * u[0] - u[1] * u[1] - u[2] * u[2] - u[3] * u[3];
            path.max_norm_violation = std::max(path.max_norm_violation, std::abs(norm - 1.0));
        };
        auto deriv = [&](double t, const std::array<double, 4>& y) {
            Vec4 u = f(t, y[0], y[1], y[2]);
            double vx = u[1] / u[0], vy = u[2] / u[0], vz = u[3] / u[0];
            double v2 = vx * vx + vy * vy + vz * vz;
            return std::array<double, 4>{vx, vy, vz, std::sqrt(std::max(0.0, 1.0 - v2))};
        };
        record(0.0);
        for (long n = 0; n < steps; ++n) {
            double t = n * dt;
            auto k1 = deriv(t, s);
            std::array<double, 4> tmp;
            for (int q = 0; q < 4; ++q) tmp[q] = s[q] + 0.5 * dt * k1[q];
            auto k2 = deriv(t + 0.5 * dt, tmp);
            for (int q = 0; q < 4; ++q) tmp[q] = s[q] + 0.5 * dt * k2[q];
            auto k3 = deriv(t + 0.5 * dt, tmp);
            for (int q = 0; q < 4; ++q) tmp[q] = s[q] + dt * k3[q];
            auto k4 = deriv(t + dt, tmp);
            for (int q = 0; q < 4; ++q)
                s[q] += dt / 6.0 * (k1[q] + 2.0 * k2[q] + 2.0 * k3[q] + k4[q]);
            if (x_bounds && (s[0] < (*x_bounds)[0] || s[0] > (*x_bounds)[1])) {
                path.truncated = true;
                record(t + dt);
                break;
            }
            if ((n + 1) % sample_stride == 0 || n + 1 == steps) record(t + dt);
        }
        paths[i] = std::move(path);
    });
    return paths;
}

EquivalenceReport burgers_equivalence(const FourVelocityField& f, const Grid4& g, double h) {
    const size_t np = g.points();
    std::vector<double> res(np, 0.0), nrm(np, 0.0);
    par::for_each(static_cast<int>(np), [&](int i) {
        std::array<double, 4> p = g.point(i);
        Vec4 u = eval(f, p);
        std::array<Vec4, 4> du = gradient(f, p, h);
        double m = 0.0;
        // d_tau U = U^0 d_{x^0} U on the tau foliation; adding (U.grad)U
        // gives exactly the spatial dust residual.
        for (int nu = 1; nu < 4; ++nu) {
            double r = u[0] * du[0][nu];
            for (int a = 1; a < 4; ++a) r += u[a] * du[a][nu];
            m = std::max(m, std::abs(r));
        }
        res[i] = m;
        double spatial = u[1] * u[1] + u[2] * u[2] + u[3] * u[3];
        nrm[i] = std::abs(u[0] - std::sqrt(1.0 + spatial));
    });
    EquivalenceReport rep;
    for (size_t i = 0; i < np; ++i) {
        rep.max_residual = std::max(rep.max_residual, res[i]);
        rep.max_normalization_error = std::max(rep.max_normalization_error, nrm[i]);
    }
    return rep;
}

VorticityReport vorticity_checks(const FourVelocityField& f, const Grid4& g, double h) {
    const size_t np = g.points();
    std::vector<VorticityReport> slots(np);
    par::for_each(static_cast<int>(np), [&](int i) {
        std::array<double, 4> p = g.point(i);
        Vec4 u = eval(f, p);
        std::array<Vec4, 4> du = gradient(f, p, h); // of upper components
        // Lower the index: U_0 = U^0, U_i = -U^i.
        auto lower = [](const Vec4& v, int nu) { return nu == 0 ? v[nu] : -v[nu]; };
        double w[4][4];
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                Vec4 dmu = du[mu], dnu = du[nu];
                w[mu][nu] = lower(dmu, nu) - lower(dnu, mu);
            }
        VorticityReport& r = slots[i];
        for (int nu = 0; nu < 4; ++nu) {
            double s = 0.0;
            for (int mu = 0; mu < 4; ++mu) s += u[mu] * w[mu][nu];
            r.max_transversality = std::max(r.max_transversality, std::abs(s));
        }
        double pf = pfaffian4(w);
        double d = det4(w);
        r.max_abs_pfaffian = std::abs(pf);
        r.max_abs_det = std::abs(d);
        r.max_det_minus_pf2 = std::abs(d - pf * pf);
        r.max_dual_contraction = std::abs(dual_contraction(w));
        Eigen::Matrix4d m;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) m(a, b) = w[a][b];
        Eigen::JacobiSVD<Eigen::Matrix4d> svd(m);
        double smax = svd.singularValues()(0);
        int rank = 0;
        for (int a = 0; a < 4; ++a)
            if (svd.singularValues()(a) > 1e-8 * std::max(smax, 1e-300)) ++rank;
        r.max_rank = rank;
    });
    VorticityReport rep;
    for (const auto& s : slots) {
        rep.max_transversality = std::max(rep.max_transversality, s.max_transversality);
        rep.max_abs_pfaffian = std::max(rep.max_abs_pfaffian, s.max_abs_pfaffian);
        rep.max_abs_det = std::max(rep.max_abs_det, s.max_abs_det);
        rep.max_det_minus_pf2 = std::max(rep.max_det_minus_pf2, s.max_det_minus_pf2);
        rep.max_dual_contraction = std::max(rep.max_dual_contraction, s.max_dual_contraction);
        rep.max_rank = std::max(rep.max_rank, s.max_rank);
    }
    return rep;
}

double antisymmetric_det_pf_gap(int samples, std::uint64_t seed) {
    std::vector<double> slots(samples, 0.0);
    par::for_each(samples, [&](int i) {
        rng::pcg32 gen(seed, static_cast<std::uint64_t>(i));
        double w[4][4] = {};
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) {
                double v = 2.0 * gen.uniform() - 1.0;
                w[a][b] = v;
                w[b][a] = -v;
            }
        double pf = pfaffian4(w);
        slots[i] = std::abs(det4(w) - pf * pf);
    });
    double m = 0.0;
    for (double v : slots) m = std::max(m, v);
    return m;
}

ReynoldsEstimate reynolds_estimate(double t_mev, double l_fm, double eta_over_s,
                                   double l_ref_fm, double hbar_c) {
    if (!(t_mev > 0.0) || !(l_fm > 0.0) || !(eta_over_s > 0.0) || !(l_ref_fm > 0.0) ||
        !(hbar_c > 0.0))
        throw std::domain_error("Reynolds estimate needs positive inputs");
    ReynoldsEstimate r;
    r.re_local = (t_mev * l_fm / hbar_c) / eta_over_s;
    double re_ref = (t_mev * l_ref_fm / hbar_c) / eta_over_s;
    r.re_scaled = (l_fm / l_ref_fm) * re_ref;
    return r;
}

} // namespace tbh::rel
