#include "tbh/madelung.hpp"

#include "tbh/dynamics.hpp"
#include "tbh/fft.hpp"
#include "tbh/invariants.hpp"
#include "tbh/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tbh::mad {

namespace {

constexpr double rho_floor = 1e-12;

void check_density(const std::vector<double>& rho) {
    for (double r : rho)
        if (!(r >= rho_floor))
            throw std::domain_error("density must stay above the 1e-12 positivity floor");
}

} // namespace

CirculationReport circulation(const SpectralField1D& u, double kappa) {
    CirculationReport rep;
    rep.value = 2.0 * M_PI * u.mean();
    rep.nearest = std::lround(rep.value / kappa);
    rep.deviation = rep.value - rep.nearest * kappa;
    return rep;
}

MultivaluedError::MultivaluedError(double mismatch)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "wave function is multivalued: phase seam mismatch " << mismatch << " rad";
          return os.str();
      }()),
      phase_mismatch(mismatch) {}

std::vector<cd> wavefunction(const MadelungState& st) {
    check_density(st.rho);
    double frac = st.winding - std::round(st.winding);
    if (std::abs(frac) > 1e-10) throw MultivaluedError(2.0 * M_PI * frac);
    std::vector<cd> psi(st.n);
    for (int j = 0; j < st.n; ++j) {
        double x = 2.0 * M_PI * j / st.n;
        double r = 0.5 * std::log(st.rho[j]);
        double phase = 2.0 * M_PI * st.s[j] / st.kappa + st.winding * x;
        psi[j] = std::exp(r) * std::polar(1.0, phase);
    }
    return psi;
}

std::vector<cd> spectral_derivative(const std::vector<cd>& g, int order) {
    const int n = static_cast<int>(g.size());
    std::vector<cd> buf = g;
    fft::transform(buf, -1);
    for (int j = 0; j < n; ++j) {
        int k = j <= n / 2 ? j : j - n;
        if (order % 2 == 1 && n % 2 == 0 && j == n / 2) {
            buf[j] = 0.0; // Nyquist mode has no well-defined odd derivative
            continue;
        }
        cd ik(0.0, double(k));
        cd m(1.0, 0.0);
        for (int p = 0; p < order; ++p) m *= ik;
        buf[j] *= m;
    }
    fft::transform(buf, +1);
    for (cd& v : buf) v /= double(n);
    return buf;
}

std::vector<double> spectral_derivative(const std::vector<double>& g, int order) {
    std::vector<cd> buf(g.size());
    for (size_t j = 0; j < g.size(); ++j) buf[j] = cd(g[j], 0.0);
    buf = spectral_derivative(buf, order);
    std::vector<double> out(g.size());
    for (size_t j = 0; j < g.size(); ++j) out[j] = buf[j].real();
    return out;
}

std::vector<double> quantum_potential(const std::vector<double>& rho, double kappa) {
    check_density(rho);
    const int n = static_cast<int>(rho.size());
    std::vector<double> root(n);
    for (int j = 0; j < n; ++j) root[j] = std::sqrt(rho[j]);
    std::vector<double> lap = spectral_derivative(root, 2);
    double hbar = kappa / (2.0 * M_PI);
    std::vector<double> v(n);
    for (int j = 0; j < n; ++j) v[j] = 0.5 * hbar * hbar * lap[j] / root[j];
    return v;
}

namespace {

std::vector<double> phase_gradient(const MadelungState& st) {
    std::vector<double> sx = spectral_derivative(st.s, 1);
    double lin = st.winding * st.kappa / (2.0 * M_PI);
    for (double& v : sx) v += lin;
    return sx;
}

} // namespace

ResidualReport schrodinger_residual(const std::vector<MadelungState>& snaps, double dt_snap) {
    if (snaps.size() < 3)
        throw std::invalid_argument("need at least 3 snapshots for time derivatives");
    const int n = snaps.front().n;
    const double kappa = snaps.front().kappa;
    const double hbar = kappa / (2.0 * M_PI);

    ResidualReport rep;
    for (size_t i = 1; i + 1 < snaps.size(); ++i) {
        const MadelungState& a = snaps[i - 1];
        const MadelungState& b = snaps[i];
        const MadelungState& c = snaps[i + 1];
        std::vector<cd> pa = wavefunction(a), pb = wavefunction(b), pc = wavefunction(c);
        std::vector<cd> lap = spectral_derivative(pb, 2);
        std::vector<double> v = quantum_potential(b.rho, kappa);

        std::vector<double> sx = phase_gradient(b);
        std::vector<double> flux(n);
        for (int j = 0; j < n; ++j) flux[j] = b.rho[j] * sx[j];
        std::vector<double> dflux = spectral_derivative(flux, 1);

        std::vector<double> hj_raw(n);
        double hj_mean = 0.0;
        for (int j = 0; j < n; ++j) {
            double st = (c.s[j] - a.s[j]) / (2.0 * dt_snap);
            hj_raw[j] = st + 0.5 * sx[j] * sx[j];
            hj_mean += hj_raw[j];
        }
        hj_mean /= n;

        for (int j = 0; j < n; ++j) {
            cd dpsi = (pc[j] - pa[j]) / (2.0 * dt_snap);
            cd resid = -0.5 * hbar * hbar * lap[j] + v[j] * pb[j] - cd(0.0, hbar) * dpsi;
            double cont = (c.rho[j] - a.rho[j]) / (2.0 * dt_snap) + dflux[j];
            rep.schrodinger_max = std::max(rep.schrodinger_max, std::abs(resid));
            rep.continuity_max = std::max(rep.continuity_max, std::abs(cont));
            rep.hamilton_jacobi_max =
                std::max(rep.hamilton_jacobi_max, std::abs(hj_raw[j] - hj_mean));
            // resid / Psi should equal HJ - i hbar cont / (2 rho).
            cd split = resid / pb[j] - cd(hj_raw[j], -hbar * cont / (2.0 * b.rho[j]));
            rep.split_consistency = std::max(rep.split_consistency, std::abs(split));
        }
    }
    return rep;
}

MadelungTrajectory evolve_madelung(const MadelungState& st, double dt, double t_final,
                                   int n_snaps) {
    check_density(st.rho);
    const int n = st.n;
    const long steps = std::lround(t_final / dt);
    const long stride = std::max(1L, steps / std::max(1, n_snaps));
    const double lin = st.winding * st.kappa / (2.0 * M_PI);

    std::vector<double> y(2 * n);
    std::copy(st.rho.begin(), st.rho.end(), y.begin());
    std::copy(st.s.begin(), st.s.end(), y.begin() + n);

    auto rhs_ms = [n, lin](const std::vector<double>& state, double) {
        std::vector<double> s(state.begin() + n, state.end());
        std::vector<double> sx = spectral_derivative(s, 1);
        for (double& v : sx) v += lin;
        std::vector<double> flux(n);
        for (int j = 0; j < n; ++j) flux[j] = state[j] * sx[j];
        std::vector<double> dflux = spectral_derivative(flux, 1);
        std::vector<double> out(2 * n);
        for (int j = 0; j < n; ++j) {
            out[j] = -dflux[j];
            out[n + j] = -0.5 * sx[j] * sx[j];
        }
        return out;
    };

    MadelungTrajectory traj;
    traj.dt_snap = stride * dt;
    auto emit = [&] {
        MadelungState s = st;
        s.rho.assign(y.begin(), y.begin() + n);
        s.s.assign(y.begin() + n, y.end());
        traj.states.push_back(std::move(s));
    };
    emit();
    // Keep every snapshot exactly stride steps apart (trailing partial
    // intervals would break the central time differences downstream).
    for (long i = 0; i < steps; ++i) {
        detail::rk4_step_real(y, i * dt, dt, rhs_ms);
        if ((i + 1) % stride == 0) emit();
    }
    return traj;
}

ShockReport shock_suppression_demo(const std::function<double(double)>& u0, double kappa,
                                   int grid_n, double horizon) {
    ShockReport rep;
    const int n = grid_n;
    std::vector<double> u0g(n);
    double mean = 0.0;
    for (int j = 0; j < n; ++j) {
        u0g[j] = u0(2.0 * M_PI * j / n);
        mean += u0g[j];
    }
    mean /= n;
    double circ = 2.0 * M_PI * mean;
    double w = circ / kappa;
    if (std::abs(w - std::round(w)) > 1e-10)
        throw std::domain_error("initial circulation is not an integer multiple of kappa");
    long winding = std::lround(w);

    // Oracle: characteristics cross at 1/max(-u0').
    std::vector<double> du0 = spectral_derivative(u0g, 1);
    double steep = 0.0;
    for (double v : du0) steep = std::max(steep, -v);
    rep.shock_time_oracle = steep > 0.0 ? 1.0 / steep : std::numeric_limits<double>::infinity();

    // (a) Galerkin Burgers at high resolution until the gradient blows up.
    {
        const int lam = n / 4;
        SpectralField1D u = project(u0g, lam);
        double g0 = 0.0;
        {
            std::vector<double> d = collocate_derivative(u, n);
            for (double v : d) g0 = std::max(g0, std::abs(v));
        }
        if (g0 == 0.0) {
            rep.t_burgers.push_back(0.0);
            rep.maxgrad_burgers.push_back(0.0);
        } else {
            double dt = std::min(1e-3, 0.5 / (lam * std::max(1.0, u.max_abs_value())));
            double t = 0.0;
            double tmax = std::min(horizon, 3.0 * rep.shock_time_oracle);
            std::vector<cd> y = u.coeffs();
            auto f = [lam](const std::vector<cd>& s, double) {
                return rhs(SpectralField1D(lam, s)).coeffs();
            };
            int stride = 10;
            while (t < tmax) {
                SpectralField1D cur(lam, y);
                double g = 0.0;
                std::vector<double> d = collocate_derivative(cur, n);
                for (double v : d) g = std::max(g, std::abs(v));
                rep.t_burgers.push_back(t);
                rep.maxgrad_burgers.push_back(g);
                if (g > 20.0 * g0) {
                    rep.shock_detected = true;
                    break;
                }
                for (int s = 0; s < stride; ++s) detail::rk4_step(y, t + s * dt, dt, f);
                t += stride * dt;
            }
            // Extrapolate 1/maxgrad to zero over the steepening window.
            std::vector<double> ts, ys;
            for (size_t i = 0; i < rep.t_burgers.size(); ++i)
                if (rep.maxgrad_burgers[i] > 3.0 * g0)
                    ts.push_back(rep.t_burgers[i]), ys.push_back(1.0 / rep.maxgrad_burgers[i]);
            if (ts.size() >= 2) {
                double st = 0, sy = 0, stt = 0, sty = 0;
                for (size_t i = 0; i < ts.size(); ++i) {
                    st += ts[i];
                    sy += ys[i];
                    stt += ts[i] * ts[i];
                    sty += ts[i] * ys[i];
                }
                double m = ts.size();
                double slope = (m * sty - st * sy) / (m * stt - st * st);
                double icpt = (sy - slope * st) / m;
                if (slope < 0.0) rep.shock_time = -icpt / slope;
            }
        }
    }

    // (b) Free Schrodinger evolution of Psi, exact in the spectrum.
    {
        const double hbar = kappa / (2.0 * M_PI);
        std::vector<double> s0(n, 0.0);
        {
            // Integrate the periodic part of u0 spectrally.
            std::vector<cd> buf(n);
            for (int j = 0; j < n; ++j) buf[j] = cd(u0g[j], 0.0);
            fft::transform(buf, -1);
            buf[0] = 0.0;
            for (int j = 1; j < n; ++j) {
                int k = j <= n / 2 ? j : j - n;
                if (n % 2 == 0 && j == n / 2) {
                    buf[j] = 0.0;
                    continue;
                }
                buf[j] /= cd(0.0, double(k));
            }
            fft::transform(buf, +1);
            for (int j = 0; j < n; ++j) s0[j] = buf[j].real() / n;
        }
        std::vector<cd> psi0(n);
        for (int j = 0; j < n; ++j) {
            double x = 2.0 * M_PI * j / n;
            psi0[j] = std::polar(1.0, 2.0 * M_PI * s0[j] / kappa + winding * x);
        }
        std::vector<cd> psi0_hat = psi0;
        fft::transform(psi0_hat, -1);

        const int nt = 51;
        for (int it = 0; it < nt; ++it) {
            double t = horizon * it / (nt - 1);
            std::vector<cd> hat(n);
            for (int j = 0; j < n; ++j) {
                int k = j <= n / 2 ? j : j - n;
                hat[j] = psi0_hat[j] * std::polar(1.0, -0.5 * hbar * k * k * t);
            }
            std::vector<cd> psi = hat;
            fft::transform(psi, +1);
            for (cd& v : psi) v /= double(n);
            std::vector<cd> d1 = spectral_derivative(psi, 1);
            std::vector<cd> d2 = spectral_derivative(psi, 2);
            double pmax = 0.0;
            for (const cd& v : psi) pmax = std::max(pmax, std::abs(v));
            double g = 0.0;
            for (int j = 0; j < n; ++j) {
                if (std::abs(psi[j]) < 1e-8 * pmax) continue;
                cd lr = d1[j] / psi[j];
                double ux = hbar * (d2[j] / psi[j] - lr * lr).imag();
                if (!std::isfinite(ux)) rep.schrod_finite = false;
                g = std::max(g, std::abs(ux));
            }
            rep.t_schrod.push_back(t);
            rep.maxgrad_schrod.push_back(g);
            rep.max_schrod_grad = std::max(rep.max_schrod_grad, g);
            if (!std::isfinite(g)) rep.schrod_finite = false;
        }
    }
    return rep;
}

RadiationReport radiation_integrals(const std::vector<double>& rho, double kappa) {
    std::vector<double> v = quantum_potential(rho, kappa);
    std::vector<double> vx = spectral_derivative(v, 1);
    const int n = static_cast<int>(rho.size());
    RadiationReport rep;
    for (int j = 0; j < n; ++j) {
        rep.classical += rho[j] * vx[j];
        rep.quantum += rho[j] * vx[j] * vx[j];
        rep.scale += rho[j] * std::abs(vx[j]);
    }
    double wgt = 2.0 * M_PI / n;
    rep.classical *= wgt;
    rep.quantum *= wgt;
    rep.scale *= wgt;
    return rep;
}

} // namespace tbh::mad
