#include "tbh/dynamics.hpp"

#include "tbh/fft.hpp"
#include "tbh/parallel.hpp"
#include "tbh/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tbh {

double default_dt(const SpectralField1D& u) {
    double umax = u.max_abs_value();
    if (umax <= 0.0) return 1e-3;
    return std::min(1e-3, 0.5 / (u.cutoff() * umax));
}

BlowupError::BlowupError(double t_, double m)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "blow-up detected at t = " << t_ << " (max modulus " << m << ")";
          return os.str();
      }()),
      t(t_), max_modulus(m) {}

SpectralField1D rhs(const SpectralField1D& u) {
    SpectralField1D w = quadratic_product(u);
    SpectralField1D out(u.cutoff());
    out.set_coeff(0, cd(0.0, 0.0));
    for (int k = 1; k <= u.cutoff(); ++k)
        out.set_coeff(k, cd(0.0, -0.5 * k) * w.coeffs()[k]);
    return out;
}

namespace {

constexpr double blowup_threshold = 1e12;

void check_finite(const SpectralField1D& u, double t) {
    double m = 0.0;
    bool finite = true;
    for (const cd& v : u.coeffs()) {
        double a = std::abs(v);
        if (!std::isfinite(a)) finite = false;
        m = std::max(m, a);
    }
    if (!finite || m > blowup_threshold) throw BlowupError(t, m);
}

} // namespace

TrajectoryRecord integrate(const SpectralField1D& u0, const IntegratorConfig& cfg,
                           const Force* force) {
    const int la = u0.cutoff();
    const double dt = cfg.backward ? -cfg.dt : cfg.dt;
    const long steps = std::lround(cfg.t_final / cfg.dt);

    auto f = [la, force](const std::vector<cd>& s, double t) {
        SpectralField1D u(la, s);
        SpectralField1D du = rhs(u);
        if (force) {
            SpectralField1D fe = (*force)(t);
            for (int k = 0; k <= la; ++k)
                du.set_coeff(k, du.coeffs()[k] + fe.coeffs()[k]);
        }
        return du.coeffs();
    };

    TrajectoryRecord traj;
    std::vector<cd> y = u0.coeffs();
    auto emit = [&](double t) {
        SpectralField1D u(la, y);
        traj.samples.push_back({t, u, diagnostics(t, u)});
    };

    emit(0.0);
    for (long i = 0; i < steps; ++i) {
        detail::rk4_step(y, i * dt, dt, f);
        SpectralField1D u(la, y);
        check_finite(u, (i + 1) * dt);
        if ((i + 1) % cfg.sample_interval == 0 || i + 1 == steps) emit((i + 1) * dt);
    }
    return traj;
}

double TrajectoryRecord::evaluate(double x, double t) const {
    if (samples.empty()) throw std::logic_error("empty trajectory");
    if (samples.size() == 1) return samples.front().field.evaluate(x);
    const bool fwd = samples.back().t >= samples.front().t;
    auto cmp = [fwd](const TrajectorySample& s, double tt) { return fwd ? s.t < tt : s.t > tt; };
    auto it = std::lower_bound(samples.begin(), samples.end(), t, cmp);
    if (it == samples.begin()) ++it;
    if (it == samples.end()) --it;
    const TrajectorySample& s1 = *(it - 1);
    const TrajectorySample& s2 = *it;
    double w = (t - s1.t) / (s2.t - s1.t);
    return (1.0 - w) * s1.field.evaluate(x) + w * s2.field.evaluate(x);
}

ReversalReport time_reverse_run(const SpectralField1D& u0, const IntegratorConfig& cfg) {
    TrajectoryRecord fwd = integrate(u0, cfg);
    IntegratorConfig back = cfg;
    back.backward = !cfg.backward;
    TrajectoryRecord rev = integrate(fwd.back().field, back);
    const SpectralField1D& rec = rev.back().field;
    double err = 0.0;
    for (int k = 0; k <= u0.cutoff(); ++k)
        err = std::max(err, std::abs(rec.coeffs()[k] - u0.coeffs()[k]));
    return {fwd.back().field, rec, err};
}

CharacteristicPath characteristic(const TrajectoryRecord& traj, double x0, double dt,
                                  double t_final, int sample_stride) {
    double t0 = traj.front().t;
    if (traj.samples.size() > 1 && t_final > std::abs(traj.back().t - t0) * (1.0 + 1e-12))
        throw std::invalid_argument("trajectory does not cover the requested times");
    long steps = std::lround(t_final / dt);
    CharacteristicPath path;
    std::vector<double> y{x0};
    auto f = [&traj](const std::vector<double>& s, double t) {
        return std::vector<double>{traj.evaluate(s[0], t)};
    };
    path.t.push_back(t0);
    path.x.push_back(x0);
    for (long i = 0; i < steps; ++i) {
        detail::rk4_step_real(y, t0 + i * dt, dt, f);
        if ((i + 1) % sample_stride == 0 || i + 1 == steps) {
            path.t.push_back(t0 + (i + 1) * dt);
            path.x.push_back(y[0]);
        }
    }
    return path;
}

std::vector<CharacteristicPath> characteristics(const TrajectoryRecord& traj,
                                                const std::vector<double>& x0, double dt,
                                                double t_final, int sample_stride) {
    std::vector<CharacteristicPath> paths(x0.size());
    par::for_each(static_cast<int>(x0.size()), [&](int i) {
        paths[i] = characteristic(traj, x0[i], dt, t_final, sample_stride);
    });
    return paths;
}

double truncation_force(const SpectralField1D& u, double x) {
    // u^2 has modes up to 2 lambda; recover them alias-free on n >= 4 lambda+1.
    int la = u.cutoff();
    int n = fft::next_fast_size(4 * la + 1);
    std::vector<double> g = collocate(u, n);
    for (double& v : g) v *= v;
    SpectralField1D w = project(g, 2 * la);
    // (1/2) d/dx of the discarded band: modes lambda+1 .. 2 lambda.
    cd z = std::polar(1.0, x);
    cd acc(0.0, 0.0);
    for (int k = 2 * la; k >= la + 1; --k) acc = (acc + cd(0.0, 0.5 * k) * w.coeffs()[k]) * z;
    for (int k = la; k >= 1; --k) acc = acc * z;
    return 2.0 * acc.real();
}

SubspaceReport subspace_run(const SpectralField1D& u0, int k0, const IntegratorConfig& cfg) {
    const int la = u0.cutoff();
    if (k0 < 1) throw std::invalid_argument("k0 must be positive");
    double scale = std::max(1.0, u0.max_modulus());
    for (int k = 1; k <= la; ++k)
        if (k % k0 != 0 && std::abs(u0.coeffs()[k]) > 1e-13 * scale)
            throw std::invalid_argument("initial field is not supported on multiples of k0");

    SubspaceReport rep;
    rep.traj = integrate(u0, cfg);
    for (const auto& s : rep.traj.samples) {
        double leak = 0.0;
        for (int k = 1; k <= la; ++k)
            if (k % k0 != 0) leak = std::max(leak, std::abs(s.field.coeffs()[k]));
        rep.t.push_back(s.t);
        rep.leakage.push_back(leak);
        rep.max_leakage = std::max(rep.max_leakage, leak);
    }

    if (2 * k0 > la) {
        // Linear regime: every retained mode rotates at phase velocity u_0.
        double err = 0.0;
        double u0m = u0.mean();
        for (const auto& s : rep.traj.samples)
            for (int k = 1; k <= la; ++k) {
                cd exact = u0.coeffs()[k] * std::polar(1.0, -k * u0m * s.t);
                err = std::max(err, std::abs(s.field.coeffs()[k] - exact));
            }
        rep.traveling_wave_error = err;
    }
    return rep;
}

} // namespace tbh
