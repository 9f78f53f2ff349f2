#include "tbh/invariants.hpp"

#include "tbh/dynamics.hpp"
#include "tbh/fft.hpp"
#include "tbh/parallel.hpp"
#include "tbh/stepper.hpp"

#include <cmath>
#include <stdexcept>

namespace tbh {

double energy(const SpectralField1D& u) {
    double e = 0.5 * u.mean() * u.mean();
    for (int k = 1; k <= u.cutoff(); ++k) e += std::norm(u.coeffs()[k]);
    return e;
}

double energy_total(const SpectralField1D& u) {
    double s = 0.0;
    for (int k = 1; k <= u.cutoff(); ++k) s += std::norm(u.coeffs()[k]);
    return 2.0 * M_PI * s;
}

namespace {

// Partial triad sums per k1, reduced in index order afterwards: the result
// is independent of the thread count and identical to the serial loop.
cd triad_partial(const SpectralField1D& u, int k1) {
    int la = u.cutoff();
    cd a = u.coeff(k1);
    if (a == cd(0.0, 0.0)) return {0.0, 0.0};
    cd s(0.0, 0.0);
    int lo = std::max(-la, -k1 - la);
    int hi = std::min(la, -k1 + la);
    for (int k2 = lo; k2 <= hi; ++k2) s += u.coeff(k2) * u.coeff(-k1 - k2);
    return a * s;
}

double triad_reduce(const SpectralField1D& u, const std::vector<cd>& slots) {
    cd total(0.0, 0.0);
    for (const cd& v : slots) total += v;
    total /= 6.0;
    double scale = std::max(1.0, std::pow(u.max_modulus() * (2.0 * u.cutoff() + 1.0), 3));
    if (std::abs(total.imag()) > 1e-12 * scale)
        throw std::runtime_error("triad sum has a non-negligible imaginary part");
    return total.real();
}

} // namespace

double hamiltonian_triads(const SpectralField1D& u) {
    int la = u.cutoff();
    std::vector<cd> slots(2 * la + 1);
    auto body = [&](int i) { slots[i] = triad_partial(u, i - la); };
    // Thread spawn costs more than the whole loop at small cutoffs; the
    // slot reduction makes both paths bitwise identical.
    if (la >= 128) par::for_each(2 * la + 1, body);
    else par::for_each_serial(2 * la + 1, body);
    return triad_reduce(u, slots);
}

namespace ref {
double hamiltonian_triads_serial(const SpectralField1D& u) {
    int la = u.cutoff();
    std::vector<cd> slots(2 * la + 1);
    par::for_each_serial(2 * la + 1, [&](int i) { slots[i] = triad_partial(u, i - la); });
    return triad_reduce(u, slots);
}
} // namespace ref

double hamiltonian_collocation(const SpectralField1D& u) {
    // The zero mode of u^3 is alias-free on the same n >= 3 lambda + 1 grid
    // used for quadratic products; H = (1/12 pi) * 2 pi * mean(u^3).
    int n = GridSpec::dealiased(u.cutoff()).n;
    std::vector<double> g = collocate(u, n);
    double s = 0.0;
    for (double v : g) s += v * v * v;
    return s / n / 6.0;
}

double hamiltonian(const SpectralField1D& u) {
    return u.cutoff() <= hamiltonian_triads_max_cutoff ? hamiltonian_triads(u)
                                                       : hamiltonian_collocation(u);
}

double lagrange_multiplier(double e, double h) {
    if (!(e > 0.0)) throw std::domain_error("lagrange multiplier needs E > 0");
    return -1.5 * h / e;
}

DiagnosticRecord diagnostics(double t, const SpectralField1D& u) {
    DiagnosticRecord r;
    r.t = t;
    r.u0 = u.mean();
    r.energy = energy(u);
    r.energy_total = energy_total(u);
    r.hamiltonian = hamiltonian(u);
    return r;
}

namespace {

double integral_f(const SpectralField1D& f) { return 2.0 * M_PI * f.mean(); }

double integral_fu(const SpectralField1D& f, const SpectralField1D& u) {
    double s = f.mean() * u.mean();
    for (int k = 1; k <= f.cutoff(); ++k)
        s += 2.0 * (f.coeffs()[k] * std::conj(u.coeffs()[k])).real();
    return 2.0 * M_PI * s;
}

double integral_fu2(const SpectralField1D& f, const SpectralField1D& u) {
    // f u^2 has band 3 lambda; its mean is alias-free on the dealiased grid.
    int n = GridSpec::dealiased(f.cutoff()).n;
    std::vector<double> gf = collocate(f, n);
    std::vector<double> gu = collocate(u, n);
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += gf[j] * gu[j] * gu[j];
    return 2.0 * M_PI * s / n;
}

} // namespace

PassiveSeries passive_invariants(const SpectralField1D& u0, const SpectralField1D& f0,
                                 const IntegratorConfig& cfg) {
    if (u0.cutoff() != f0.cutoff()) throw std::invalid_argument("cutoff mismatch");
    const int la = u0.cutoff();
    const int nc = la + 1;
    const double dt = cfg.backward ? -cfg.dt : cfg.dt;
    const long steps = std::lround(cfg.t_final / cfg.dt);

    // Stacked state [u; f], co-evolved with one stepper so f sees u at the
    // internal stage times as well.
    std::vector<cd> y(2 * nc);
    for (int k = 0; k <= la; ++k) {
        y[k] = u0.coeffs()[k];
        y[nc + k] = f0.coeffs()[k];
    }

    auto rhs_pair = [la, nc](const std::vector<cd>& s, double) {
        SpectralField1D u(la, std::vector<cd>(s.begin(), s.begin() + nc));
        SpectralField1D f(la, std::vector<cd>(s.begin() + nc, s.end()));
        SpectralField1D du = rhs(u);
        SpectralField1D fu = bilinear_product(f, u);
        std::vector<cd> out(2 * nc);
        for (int k = 0; k <= la; ++k) {
            out[k] = du.coeffs()[k];
            out[nc + k] = cd(0.0, -double(k)) * fu.coeffs()[k];
        }
        return out;
    };

    PassiveSeries series;
    auto emit = [&](double t) {
        SpectralField1D u(la, std::vector<cd>(y.begin(), y.begin() + nc));
        SpectralField1D f(la, std::vector<cd>(y.begin() + nc, y.end()));
        series.t.push_back(t);
        series.f_integral.push_back(integral_f(f));
        series.fu_integral.push_back(integral_fu(f, u));
        series.fu2_integral.push_back(integral_fu2(f, u));
    };

    emit(0.0);
    for (long i = 0; i < steps; ++i) {
        detail::rk4_step(y, i * dt, dt, rhs_pair);
        if ((i + 1) % cfg.sample_interval == 0 || i + 1 == steps) emit((i + 1) * dt);
    }
    return series;
}

} // namespace tbh
