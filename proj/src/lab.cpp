#include "tbh/lab.hpp"

#include "tbh/fft.hpp"
#include "tbh/invariants.hpp"
#include "tbh/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tbh {

namespace {

double wrap_pi(double a) {
    a = std::fmod(a + M_PI, 2.0 * M_PI);
    if (a < 0.0) a += 2.0 * M_PI;
    return a - M_PI;
}

double wrap_2pi(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a < 0.0) a += 2.0 * M_PI;
    return a;
}

SpectralField1D add_fields(const SpectralField1D& a, const SpectralField1D& b) {
    SpectralField1D out(a.cutoff());
    for (int k = 0; k <= a.cutoff(); ++k)
        out.set_coeff(k, a.coeffs()[k] + b.coeffs()[k]);
    return out;
}

double field_norm(const SpectralField1D& u) {
    double s = u.mean() * u.mean();
    for (int k = 1; k <= u.cutoff(); ++k) s += 2.0 * std::norm(u.coeffs()[k]);
    return std::sqrt(s);
}

// corr(d) = <u, tmpl(.-d)> is band-limited in d with coefficients
// u_k conj(s_k); reuse the field machinery to search it.
SpectralField1D correlation_field(const SpectralField1D& u, const SpectralField1D& tmpl) {
    SpectralField1D c(u.cutoff());
    c.set_coeff(0, cd(u.mean() * tmpl.mean(), 0.0));
    for (int k = 1; k <= u.cutoff(); ++k)
        c.set_coeff(k, u.coeffs()[k] * std::conj(tmpl.coeffs()[k]));
    return c;
}

double polish_maximum(const SpectralField1D& c, double x) {
    double h = 2.0 * M_PI / (16.0 * c.cutoff());
    for (int it = 0; it < 50; ++it) {
        double d2 = c.second_derivative(x);
        if (d2 >= 0.0) break; // only walk inside a concave neighborhood
        double step = -c.derivative(x) / d2;
        step = std::clamp(step, -h, h);
        x += step;
        if (std::abs(step) < 1e-14) break;
    }
    return wrap_2pi(x);
}

} // namespace

SpectralField1D noise_field(int lambda, double sigma, rng::pcg32& gen) {
    if (sigma < 0.0) throw std::invalid_argument("noise scale must be nonnegative");
    SpectralField1D u(lambda);
    const double s = sigma / std::sqrt(2.0);
    for (int k = 1; k <= lambda; ++k) u.set_coeff(k, s * gen.complex_gaussian());
    return u;
}

double peak_position(const SpectralField1D& u) {
    double dev = 0.0;
    for (int k = 1; k <= u.cutoff(); ++k) dev = std::max(dev, std::abs(u.coeffs()[k]));
    if (dev <= 1e-14 * std::max(1.0, std::abs(u.mean())))
        throw NoPeakError("field is constant to within 1e-14: no peak");
    return extremum_position(u, 16);
}

TemplateMatch template_match(const SpectralField1D& u, const SpectralField1D& tmpl) {
    SpectralField1D c = correlation_field(u, tmpl);
    int n = fft::next_fast_size(std::max(64, 16 * c.cutoff()));
    std::vector<double> g = collocate(c, n);
    int best = 0;
    for (int j = 1; j < n; ++j)
        if (g[j] > g[best]) best = j;
    double d = polish_maximum(c, 2.0 * M_PI * best / n);
    double nu = field_norm(u);
    double ns = field_norm(tmpl);
    TemplateMatch m;
    m.shift = d;
    m.correlation = (nu > 0.0 && ns > 0.0) ? c.evaluate(d) / (nu * ns) : 0.0;
    return m;
}

double template_fwhm(const SpectralField1D& tmpl) {
    int n = fft::next_fast_size(std::max(256, 32 * tmpl.cutoff()));
    std::vector<double> g = collocate(tmpl, n);
    double mean = tmpl.mean();
    int peak = 0;
    double depth = 0.0;
    for (int j = 0; j < n; ++j) {
        double v = std::abs(g[j] - mean);
        if (v > depth) {
            depth = v;
            peak = j;
        }
    }
    double half = depth / 2.0;
    int right = 0;
    while (right < n && std::abs(g[(peak + right) % n] - mean) > half) ++right;
    int left = 0;
    while (left < n && std::abs(g[((peak - left) % n + n) % n] - mean) > half) ++left;
    return (left + right) * 2.0 * M_PI / n;
}

namespace {

struct DriftFit {
    double speed = 0.0, intercept = 0.0;
};

DriftFit fit_drift(const std::vector<double>& t, const std::vector<double>& x) {
    size_t m = t.size();
    double st = 0, sx = 0, stt = 0, stx = 0;
    for (size_t i = 0; i < m; ++i) {
        st += t[i];
        sx += x[i];
        stt += t[i] * t[i];
        stx += t[i] * x[i];
    }
    double den = m * stt - st * st;
    DriftFit f;
    if (den != 0.0) {
        f.speed = (m * stx - st * sx) / den;
        f.intercept = (sx - f.speed * st) / m;
    } else {
        f.intercept = m ? sx / m : 0.0;
    }
    return f;
}

void residual_spectrum(PeakTrack& track) {
    size_t m = track.residual.size();
    if (m < 4) return;
    double dt = track.t[1] - track.t[0];
    std::vector<cd> buf(m);
    for (size_t i = 0; i < m; ++i) buf[i] = cd(track.residual[i], 0.0);
    fft::transform(buf.data(), static_cast<int>(m), -1);
    for (size_t f = 0; f <= m / 2; ++f) {
        track.spectrum_freq.push_back(f / (m * dt));
        track.spectrum_power.push_back(std::norm(buf[f]));
    }
}

} // namespace

DiffusionResult run_diffusion(const ExperimentConfig& cfg) {
    SolitonSolution sol = solve_static(cfg.lambda, ones_seed(cfg.lambda));
    SpectralField1D tmpl = make_traveling(sol, cfg.soliton_scale);
    rng::pcg32 gen(cfg.seed, cfg.stream);
    SpectralField1D u0 = add_fields(tmpl, noise_field(cfg.lambda, cfg.sigma, gen));

    DiffusionResult res{{}, integrate(u0, cfg.integ), tmpl};
    const double fwhm = template_fwhm(tmpl);

    double prev = 0.0;
    bool first = true;
    std::vector<const TrajectorySample*> tracked;
    for (const auto& s : res.traj.samples) {
        TemplateMatch m = template_match(s.field, tmpl);
        res.min_correlation = std::min(res.min_correlation, m.correlation);
        if (m.correlation < 0.5) {
            res.soliton_destroyed = true;
            break;
        }
        // The raw extremum localizes better than the correlation peak in
        // noise, but only trust it when it confirms the template.
        double pos = m.shift;
        double ext = extremum_position(s.field);
        if (std::abs(wrap_pi(ext - m.shift)) < 0.5 * fwhm) pos = ext;
        double unwrapped = first ? pos : prev + wrap_pi(pos - prev);
        first = false;
        prev = unwrapped;
        res.track.t.push_back(s.t);
        res.track.position.push_back(unwrapped);
        res.track.correlation.push_back(m.correlation);
        tracked.push_back(&s);
    }

    DriftFit drift = fit_drift(res.track.t, res.track.position);
    res.track.drift_speed = drift.speed;
    res.track.drift_intercept = drift.intercept;
    for (size_t i = 0; i < res.track.t.size(); ++i)
        res.track.residual.push_back(res.track.position[i] -
                                     (drift.intercept + drift.speed * res.track.t[i]));
    residual_spectrum(res.track);

    res.background_power.assign(cfg.lambda + 1, 0.0);
    for (size_t i = 0; i < tracked.size(); ++i) {
        const SpectralField1D& u = tracked[i]->field;
        double pos = res.track.position[i];
        for (int k = 1; k <= cfg.lambda; ++k)
            res.background_power[k] +=
                std::norm(u.coeffs()[k] - tmpl.coeffs()[k] * std::polar(1.0, -k * pos));
    }
    if (!tracked.empty())
        for (double& v : res.background_power) v /= double(tracked.size());
    return res;
}

namespace {

// L2 distance (Parseval, no 2 pi factor) between u and sp(.-d1) + sm(.-d2).
double two_soliton_sse(const SpectralField1D& u, const SpectralField1D& sp,
                       const SpectralField1D& sm, double d1, double d2) {
    cd e0 = u.coeffs()[0] - sp.coeffs()[0] - sm.coeffs()[0];
    double s = std::norm(e0);
    for (int k = 1; k <= u.cutoff(); ++k) {
        cd e = u.coeffs()[k] - sp.coeffs()[k] * std::polar(1.0, -k * d1) -
               sm.coeffs()[k] * std::polar(1.0, -k * d2);
        s += 2.0 * std::norm(e);
    }
    return s;
}

struct TwoSolitonFit {
    double d1 = 0.0, d2 = 0.0, sse = 0.0;
};

TwoSolitonFit fit_two_solitons(const SpectralField1D& u, const SpectralField1D& sp,
                               const SpectralField1D& sm) {
    const int n = 192;
    std::vector<double> sse(n * n);
    par::for_each(n, [&](int i) {
        double d1 = 2.0 * M_PI * i / n;
        for (int j = 0; j < n; ++j)
            sse[i * n + j] = two_soliton_sse(u, sp, sm, d1, 2.0 * M_PI * j / n);
    });
    int best = 0;
    for (int i = 1; i < n * n; ++i)
        if (sse[i] < sse[best]) best = i;
    TwoSolitonFit fit;
    fit.d1 = 2.0 * M_PI * (best / n) / n;
    fit.d2 = 2.0 * M_PI * (best % n) / n;
    fit.sse = sse[best];

    // Derivative-free pattern refinement.
    double step = 2.0 * M_PI / n;
    while (step > 1e-10) {
        bool improved = false;
        for (int di = -1; di <= 1; ++di)
            for (int dj = -1; dj <= 1; ++dj) {
                if (di == 0 && dj == 0) continue;
                double s = two_soliton_sse(u, sp, sm, fit.d1 + di * step, fit.d2 + dj * step);
                if (s < fit.sse) {
                    fit.sse = s;
                    fit.d1 += di * step;
                    fit.d2 += dj * step;
                    improved = true;
                }
            }
        if (!improved) step *= 0.4;
    }
    fit.d1 = wrap_2pi(fit.d1);
    fit.d2 = wrap_2pi(fit.d2);
    return fit;
}

} // namespace

CollisionResult run_collision(const ExperimentConfig& cfg) {
    SolitonSolution sol = solve_static(cfg.lambda, ones_seed(cfg.lambda));
    SpectralField1D sp = make_traveling(sol, cfg.soliton_scale);
    SpectralField1D sm = make_traveling(sol, -cfg.soliton_scale);
    SpectralField1D u0 = add_fields(translate(sp, -M_PI / 2.0), translate(sm, M_PI / 2.0));

    CollisionResult res;
    res.traj = integrate(u0, cfg.integ);

    IntegratorConfig back = cfg.integ;
    back.backward = !cfg.integ.backward;
    TrajectoryRecord rev = integrate(res.traj.back().field, back);
    double err = 0.0;
    for (int k = 0; k <= cfg.lambda; ++k)
        err = std::max(err, std::abs(rev.back().field.coeffs()[k] - u0.coeffs()[k]));
    res.reversal_error = err / std::max(1e-300, u0.max_modulus());

    TwoSolitonFit fit = fit_two_solitons(res.traj.back().field, sp, sm);
    res.fit_d1 = fit.d1;
    res.fit_d2 = fit.d2;
    res.damage_rel = std::sqrt(fit.sse) / field_norm(sp);
    return res;
}

namespace {

std::vector<double> correlation_maxima(const SpectralField1D& c, int grid_mult = 16) {
    int n = fft::next_fast_size(std::max(64, grid_mult * c.cutoff()));
    std::vector<double> g = collocate(c, n);
    std::vector<std::pair<double, double>> maxima; // (value, position)
    for (int j = 0; j < n; ++j) {
        double l = g[(j + n - 1) % n], r = g[(j + 1) % n];
        if (g[j] >= l && g[j] > r) maxima.emplace_back(g[j], 2.0 * M_PI * j / n);
    }
    std::sort(maxima.rbegin(), maxima.rend());
    std::vector<double> pos;
    for (auto& [v, p] : maxima) pos.push_back(polish_maximum(c, p));
    return pos;
}

double nearest_image(double target, const std::vector<double>& candidates) {
    double best = std::numeric_limits<double>::quiet_NaN();
    double bestd = std::numeric_limits<double>::infinity();
    for (double p : candidates) {
        double d = std::abs(wrap_pi(p - target));
        if (d < bestd) {
            bestd = d;
            best = p;
        }
    }
    return best;
}

} // namespace

AttractionResult run_attraction(const ExperimentConfig& cfg) {
    if (!(cfg.displacement > 0.0 && cfg.displacement < 2.0 * M_PI))
        throw std::invalid_argument("displacement must lie in (0, 2 pi)");
    SolitonSolution sol = solve_static(cfg.lambda, ones_seed(cfg.lambda));
    SpectralField1D sv = make_traveling(sol, cfg.soliton_scale);
    if (sv.max_modulus() < 1e-14)
        throw std::invalid_argument("soliton scale is zero: no peaks to track");
    const double fwhm = template_fwhm(sv);
    if (cfg.displacement < fwhm)
        throw std::invalid_argument("peaks indistinguishable at start: displacement below the soliton width");

    SpectralField1D u0 = add_fields(sv, translate(sv, cfg.displacement));

    AttractionResult res;
    res.traj = integrate(u0, cfg.integ);
    res.fwhm = fwhm;
    double p1 = 0.0, p2 = cfg.displacement; // unwrapped peak positions
    for (const auto& s : res.traj.samples) {
        SpectralField1D c = correlation_field(s.field, sv);
        std::vector<double> maxima = correlation_maxima(c);
        if (maxima.size() < 2) {
            res.merged = true;
            res.merge_time = s.t;
            break;
        }
        double n1 = nearest_image(p1, maxima);
        double n2 = nearest_image(p2, maxima);
        p1 += wrap_pi(n1 - p1);
        p2 += wrap_pi(n2 - p2);
        double sep = std::abs(p2 - p1);
        if (sep < fwhm) {
            res.merged = true;
            res.merge_time = s.t;
            break;
        }
        res.t.push_back(s.t);
        res.separation.push_back(sep);
    }

    // Piecewise fit: plateau s0 through t_b, then s0 - (accel/2)(t - t_b)^2.
    size_t m = res.t.size();
    if (m >= 4) {
        double best_sse = std::numeric_limits<double>::infinity();
        for (size_t ib = 1; ib + 2 < m; ++ib) {
            double tb = res.t[ib];
            // Linear LS in (s0, A): model = s0 - A q_i with q_i = 0 on the plateau.
            double s11 = 0, s1q = 0, sqq = 0, sy1 = 0, syq = 0;
            for (size_t i = 0; i < m; ++i) {
                double q = res.t[i] > tb ? (res.t[i] - tb) * (res.t[i] - tb) : 0.0;
                s11 += 1.0;
                s1q += -q;
                sqq += q * q;
                sy1 += res.separation[i];
                syq += -q * res.separation[i];
            }
            double den = s11 * sqq - s1q * s1q;
            if (den == 0.0) continue;
            double s0 = (sy1 * sqq - s1q * syq) / den;
            double am = (s11 * syq - s1q * sy1) / den;
            double sse = 0.0;
            for (size_t i = 0; i < m; ++i) {
                double q = res.t[i] > tb ? (res.t[i] - tb) * (res.t[i] - tb) : 0.0;
                double r = res.separation[i] - (s0 - am * q);
                sse += r * r;
            }
            if (sse < best_sse) {
                best_sse = sse;
                res.plateau_end = tb;
                res.plateau_value = s0;
                res.accel = 2.0 * am;
            }
        }
        // R^2 of the acceleration segment.
        double mean = 0.0;
        size_t cnt = 0;
        for (size_t i = 0; i < m; ++i)
            if (res.t[i] > res.plateau_end) {
                mean += res.separation[i];
                ++cnt;
            }
        if (cnt >= 3) {
            mean /= cnt;
            double ss_tot = 0.0, ss_res = 0.0;
            for (size_t i = 0; i < m; ++i)
                if (res.t[i] > res.plateau_end) {
                    double q = (res.t[i] - res.plateau_end) * (res.t[i] - res.plateau_end);
                    double model = res.plateau_value - 0.5 * res.accel * q;
                    ss_tot += (res.separation[i] - mean) * (res.separation[i] - mean);
                    ss_res += (res.separation[i] - model) * (res.separation[i] - model);
                }
            res.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
        }
    }
    return res;
}

} // namespace tbh
