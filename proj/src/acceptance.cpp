#include "tbh/acceptance.hpp"

#include "tbh/burgers3d.hpp"
#include "tbh/dynamics.hpp"
#include "tbh/invariants.hpp"
#include "tbh/lab.hpp"
#include "tbh/madelung.hpp"
#include "tbh/relativistic.hpp"
#include "tbh/rng.hpp"
#include "tbh/soliton.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

namespace tbh::accept {

namespace {

using clock_type = std::chrono::steady_clock;

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
    template <class T>
    void expect_lt(T value, T bound, const std::string& what) {
        std::ostringstream os;
        os << what << " = " << value << " (bound " << bound << ")";
        expect(value < bound, os.str());
    }
    void note(const std::string& s) {
        if (detail.tellp() > 0) detail << "; ";
        detail << s;
    }
};

// Solitons reused across criteria.
std::map<int, SolitonSolution>& soliton_cache() {
    static std::map<int, SolitonSolution> cache;
    return cache;
}

const SolitonSolution& soliton(int lambda) {
    auto& cache = soliton_cache();
    auto it = cache.find(lambda);
    if (it == cache.end()) it = cache.emplace(lambda, solve_static(lambda, ones_seed(lambda))).first;
    return it->second;
}

double measured_speed(const SpectralField1D& trav, double dt, double t_final) {
    IntegratorConfig cfg{dt, t_final,
                         static_cast<int>(std::max(1L, std::lround(t_final / dt) / 100))};
    TrajectoryRecord traj = integrate(trav, cfg);
    std::vector<double> ts, xs;
    double prev = 0.0;
    bool first = true;
    for (const auto& s : traj.samples) {
        TemplateMatch m = template_match(s.field, trav);
        double un = first ? m.shift : prev + std::remainder(m.shift - prev, 2.0 * M_PI);
        first = false;
        prev = un;
        ts.push_back(s.t);
        xs.push_back(un);
    }
    double n = double(ts.size()), st = 0, sx = 0, stt = 0, stx = 0;
    for (size_t i = 0; i < ts.size(); ++i) {
        st += ts[i];
        sx += xs[i];
        stt += ts[i] * ts[i];
        stx += ts[i] * xs[i];
    }
    return (n * stx - st * sx) / (n * stt - st * st);
}

void criterion_conservation(Check& c, Mode) {
    rng::pcg32 gen(2718);
    SpectralField1D u0 = noise_field(50, 0.01, gen);
    IntegratorConfig cfg{1e-3, 10.0, 100};
    auto t0 = clock_type::now();
    TrajectoryRecord traj = integrate(u0, cfg);
    double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
    const auto& first = traj.front().diag;
    double de = 0.0, dh = 0.0;
    bool u0_exact = true;
    for (const auto& s : traj.samples) {
        u0_exact = u0_exact && (s.field.coeffs()[0] == u0.coeffs()[0]);
        de = std::max(de, std::abs(s.diag.energy - first.energy));
        dh = std::max(dh, std::abs(s.diag.hamiltonian - first.hamiltonian));
    }
    c.expect(u0_exact, "u0 drifted");
    c.expect_lt(de / first.energy, 1e-6, "relative E drift");
    c.expect_lt(dh, 1e-6 * std::pow(first.energy, 1.5), "H drift");
    c.expect_lt(secs, 60.0, "runtime (s)");
}

void criterion_oracle_product(Check& c, Mode) {
    rng::pcg32 gen(99);
    for (int la : {8, 32, 64}) {
        double worst = 0.0;
        for (int rep = 0; rep < 100; ++rep) {
            SpectralField1D u(la);
            u.set_coeff(0, cd(gen.gaussian(), 0.0));
            for (int k = 1; k <= la; ++k) u.set_coeff(k, gen.complex_gaussian());
            SpectralField1D a = quadratic_product(u);
            SpectralField1D b = ref::quadratic_product_direct(u);
            for (int k = 0; k <= la; ++k)
                worst = std::max(worst, std::abs(a.coeffs()[k] - b.coeffs()[k]));
        }
        std::ostringstream what;
        what << "max deviation at lambda " << la;
        c.expect_lt(worst, 1e-12, what.str());
    }
}

void criterion_hamiltonian_oracle(Check& c, Mode) {
    SpectralField1D v(4);
    v.set_coeff(1, cd(1.0, 0.0));
    v.set_coeff(2, cd(1.0, 0.0));
    c.expect(std::abs(hamiltonian_triads(v) - 1.0) < 1e-12, "hand value H(2cos x + 2cos 2x) != 1");
    rng::pcg32 gen(123);
    double worst = 0.0;
    for (int la : {8, 16, 32}) {
        for (int rep = 0; rep < 10; ++rep) {
            SpectralField1D u(la);
            u.set_coeff(0, cd(0.3 * gen.gaussian(), 0.0));
            for (int k = 1; k <= la; ++k) u.set_coeff(k, 0.3 * gen.complex_gaussian());
            worst = std::max(worst,
                             std::abs(hamiltonian_triads(u) - hamiltonian_collocation(u)));
        }
    }
    c.expect_lt(worst, 1e-10, "triads vs collocation");
}

void criterion_soliton_solver(Check& c, Mode) {
    SolveOptions opts;
    const SolitonSolution& sol = soliton(50);
    c.expect(sol.iterations <= opts.max_iter, "iteration budget");
    c.expect_lt(sol.residual, 1e-9, "static residual");
    IntegratorConfig cfg{1e-3, 5.0, 1000};
    TrajectoryRecord traj = integrate(sol.field, cfg);
    double drift = 0.0;
    for (int k = 0; k <= 50; ++k)
        drift = std::max(drift, std::abs(traj.back().field.coeffs()[k] - sol.field.coeffs()[k]));
    c.expect_lt(drift, 1e-6, "shape drift over T=5");
}

void criterion_table2(Check& c, Mode mode) {
    auto t0 = clock_type::now();
    struct Row {
        int lambda;
        double a, b, c, d;
    };
    // Reference fit parameters for the empirical soliton model.
    std::vector<Row> reference{{50, -0.016819619, 0.016090415, 4.9485951, 4.3598829},
                               {100, -0.0083189075, 0.0079554749, 4.9485211, 4.3374721}};
    if (mode == Mode::full)
        reference.push_back({200, -0.0041370769, 0.0039556146, 4.944829, 4.326271});
    std::vector<double> a_la, b_la;
    for (const Row& r : reference) {
        FitParams p = fit_empirical(soliton(r.lambda));
        std::ostringstream what;
        what << "lambda " << r.lambda;
        c.expect(std::abs(p.a - r.a) < 0.10 * std::abs(r.a), what.str() + ": a off by >10%");
        c.expect(std::abs(p.b - r.b) < 0.10 * std::abs(r.b), what.str() + ": b off by >10%");
        c.expect(std::abs(p.c - r.c) < 0.10 * std::abs(r.c), what.str() + ": c off by >10%");
        c.expect(std::abs(p.d - r.d) < 0.10 * std::abs(r.d), what.str() + ": d off by >10%");
        a_la.push_back(p.a * r.lambda);
        b_la.push_back(p.b * r.lambda);
    }
    auto spread = [](const std::vector<double>& v) {
        double lo = 1e300, hi = -1e300;
        for (double x : v) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        return std::abs(hi - lo) / std::abs(lo);
    };
    c.expect_lt(spread(a_la), 0.10, "a*lambda spread");
    c.expect_lt(spread(b_la), 0.10, "b*lambda spread");
    double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
    c.expect_lt(secs, 300.0, "runtime (s)");
}

void criterion_lambda_velocity(Check& c, Mode) {
    const SolitonSolution& sol = soliton(50);
    SpectralField1D trav = make_traveling(sol, 1.0);
    double v = measured_speed(trav, 1e-3, 10.0);
    double law = -sol.lambda_multiplier; // 3H/(2E) in the u_0 = 0 frame
    c.expect(std::abs(v - law) < 0.01 * std::abs(law), "speed vs 3H/2E beyond 1%");
    c.expect(std::abs(v + 1.0) < 0.01, "unit-scale speed beyond 1% of -1");
}

void criterion_energy_scaling(Check& c, Mode mode) {
    std::vector<int> lambdas{50, 100};
    if (mode == Mode::full) lambdas.push_back(200);
    double lo = 1e300, hi = -1e300;
    for (int la : lambdas) {
        double p = soliton(la).energy_total * la;
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    c.expect_lt((hi - lo) / lo, 0.10, "E_total*lambda spread");
    const SolitonSolution& sol = soliton(50);
    double e1 = energy_total(make_traveling(sol, 1.0));
    double e2 = energy_total(make_traveling(sol, 2.0));
    c.expect(std::abs(e2 / e1 - 4.0) < 1e-6, "quadratic velocity-energy law");
}

void criterion_diffusion(Check& c, Mode) {
    ExperimentConfig cfg;
    cfg.lambda = 50;
    cfg.sigma = 0.01;
    cfg.seed = 12345;
    cfg.integ = {1e-3, 100.0, 100};
    DiffusionResult res = run_diffusion(cfg);
    c.expect(!res.soliton_destroyed, "soliton destroyed");
    c.expect(res.min_correlation > 0.9, "template correlation dipped below 0.9");
    c.expect(std::abs(res.track.drift_speed + 1.0) < 0.05, "mean speed beyond 5% of -1");
    double lo = 1e300, hi = 0.0;
    for (int k = 13; k <= 50; ++k) {
        lo = std::min(lo, res.background_power[k]);
        hi = std::max(hi, res.background_power[k]);
    }
    c.expect_lt(hi / lo, 3.0, "background spectrum flatness");
}

void criterion_collision(Check& c, Mode mode) {
    ExperimentConfig cfg;
    cfg.lambda = 50;
    cfg.integ = {1e-4, 2.5, 2500};
    CollisionResult r50 = run_collision(cfg);
    c.expect_lt(r50.reversal_error, 1e-4, "reversal error at lambda 50");
    c.expect(r50.damage_rel > 0.05, "damage below 5% at lambda 50");
    if (mode == Mode::full) {
        cfg.lambda = 200;
        CollisionResult r200 = run_collision(cfg);
        c.expect(r200.damage_rel > 0.05, "damage below 5% at lambda 200");
        c.expect(r200.damage_rel > 0.5 * r50.damage_rel,
                 "damage shrank by more than 2x from lambda 50 to 200");
        c.expect_lt(r200.reversal_error, 1e-4, "reversal error at lambda 200");
    }
}

void criterion_attraction(Check& c, Mode) {
    ExperimentConfig cfg;
    cfg.lambda = 50;
    cfg.displacement = M_PI;
    cfg.integ = {1e-3, 60.0, 50};
    AttractionResult res = run_attraction(cfg);
    c.expect(res.merged, "no merger within the horizon");
    c.expect(res.r_squared > 0.9, "acceleration segment fit R^2 below 0.9");
    c.expect(res.accel > 0.0, "separation trend not negative");
    // monotonic decrease after the plateau, with a small slack for the
    // trailing wake wobble
    double slack = 0.02 * res.separation.front();
    bool monotone = true;
    for (size_t i = 1; i < res.t.size(); ++i)
        if (res.t[i] > res.plateau_end &&
            res.separation[i] > res.separation[i - 1] + slack)
            monotone = false;
    c.expect(monotone, "separation not monotonically decreasing after the plateau");
}

void criterion_characteristics(Check& c, Mode) {
    const SolitonSolution& sol = soliton(50);
    TrajectoryRecord traj;
    traj.samples.push_back({0.0, sol.field, diagnostics(0.0, sol.field)});
    // zero-velocity points bracket the trough; upstream (stable) on the left
    auto bisect = [&](double a, double b) {
        for (int i = 0; i < 200; ++i) {
            double m = 0.5 * (a + b);
            if (sol.field.evaluate(a) * sol.field.evaluate(m) <= 0.0) b = m;
            else a = m;
        }
        return 0.5 * (a + b);
    };
    double upstream = bisect(-0.3, 0.0);
    double downstream = bisect(0.0, 0.3);
    c.expect(sol.field.derivative(upstream) < 0.0, "upstream zero not attracting");
    c.expect(sol.field.derivative(downstream) > 0.0, "downstream zero not repelling");

    std::vector<double> x0(100);
    for (int i = 0; i < 100; ++i) x0[i] = 2.0 * M_PI * i / 100.0;
    auto paths = characteristics(traj, x0, 2e-3, 200.0, 1 << 30);
    int converged = 0;
    for (const auto& p : paths) {
        double d = std::abs(std::remainder(p.x.back() - upstream, 2.0 * M_PI));
        if (d < 1e-3) ++converged;
    }
    c.expect(converged == 100, "a path missed the upstream attractor");

    // starting exactly on the unstable zero stays put over a short horizon
    CharacteristicPath stay = characteristic(traj, downstream, 1e-3, 1.0);
    c.expect_lt(std::abs(stay.x.back() - downstream), 1e-6, "unstable point drift");
}

void criterion_subspace(Check& c, Mode) {
    SpectralField1D u(5);
    u.set_coeff(2, cd(0.25, 0.0));
    SubspaceReport rep = subspace_run(u, 2, {1e-3, 10.0, 100});
    c.expect_lt(rep.max_leakage, 1e-10, "leakage over T=10");

    SpectralField1D w(5);
    w.set_coeff(0, cd(1.0, 0.0));
    w.set_coeff(4, cd(0.2, -0.1));
    SubspaceReport lin = subspace_run(w, 4, {1e-3, 10.0, 100});
    c.expect(lin.traveling_wave_error.has_value(), "linear regime not detected");
    if (lin.traveling_wave_error)
        c.expect_lt(*lin.traveling_wave_error, 1e-8, "traveling-wave mismatch");
}

void criterion_completeness(Check& c, Mode mode) {
    std::vector<int> lambdas{50, 100};
    if (mode == Mode::full) lambdas.push_back(200);
    rng::pcg32 gen(7);
    for (int la : lambdas) {
        CirculantBasis basis = basis_matrix(soliton(la));
        std::ostringstream what;
        what << "lambda " << la;
        c.expect(basis.min_eigenvalue_modulus > 0.0, what.str() + ": singular circulant");
        SpectralField1D r(la);
        r.set_coeff(0, cd(0.2, 0.0));
        for (int k = 1; k <= la; ++k) r.set_coeff(k, 0.05 * gen.complex_gaussian());
        std::vector<double> a = basis.expand(r);
        std::vector<double> rec = basis.reconstruct(a);
        std::vector<double> samples = collocate(r, 2 * la + 1);
        double err = 0.0;
        for (size_t j = 0; j < samples.size(); ++j)
            err = std::max(err, std::abs(rec[j] - samples[j]));
        c.expect_lt(err, 1e-8, what.str() + ": expansion round trip");
    }
}

void criterion_threed(Check& c, Mode) {
    const int la = 8;
    SolitonSolution sol = solve_static(la, ones_seed(la));
    rng::pcg32 gen(17);
    c.expect_lt(rhs3d(factorized_soliton(sol, uniform_profile(la))).max_modulus(), 1e-10,
                "uniform profile residual");
    c.expect_lt(rhs3d(factorized_soliton(sol, dirichlet_profile(la))).max_modulus(), 1e-10,
                "Dirichlet profile residual");
    c.expect_lt(rhs3d(factorized_soliton(sol, random_profile(la, gen))).max_modulus(), 1e-10,
                "random profile residual");

    SpectralField3D u(la);
    for (int comp = 0; comp < 3; ++comp)
        for (auto& v : u.data()[comp]) v = gen.complex_gaussian();
    u.enforce_hermitian();
    double sum = 0.0;
    for (const auto& v : u.data()[0]) sum += std::abs(v);
    for (int comp = 0; comp < 3; ++comp)
        for (auto& v : u.data()[comp]) v *= 0.2 / sum;
    ScalarField3D f0(la);
    for (auto& v : f0.c) v = gen.complex_gaussian();
    f0.enforce_hermitian();
    Passive3DSeries s = passive_invariants_3d(u, f0, {1e-3, 0.5, 100});
    double drift = 0.0;
    for (double v : s.f_integral)
        drift = std::max(drift, std::abs(v - s.f_integral.front()) /
                                    std::max(1.0, std::abs(s.f_integral.front())));
    for (int comp = 0; comp < 3; ++comp)
        for (double v : s.fu_integral[comp])
            drift = std::max(drift, std::abs(v - s.fu_integral[comp].front()) /
                                        std::max(1.0, std::abs(s.fu_integral[comp].front())));
    c.expect_lt(drift, 1e-7, "passive integral drift");
}

void criterion_relativistic(Check& c, Mode) {
    using namespace tbh::rel;
    auto paths = proper_time_map(constant_boost(0.9), 2.0, 1e-3, {{0.2, 0.0, 0.0}});
    c.expect_lt(std::abs(paths[0].tau.back() - 2.0 / std::cosh(0.9)), 1e-10,
                "boost proper time");
    c.expect_lt(paths[0].max_norm_violation, 1e-8, "U.U drift along boost characteristic");
    auto rare = proper_time_map(rarefaction_lift(), 2.0, 1e-3, {{0.4, 0.0, 0.0}});
    c.expect_lt(rare[0].max_norm_violation, 1e-8, "U.U drift along rarefaction characteristic");

    Grid4 g;
    g.n = {5, 9, 17, 1};
    g.lo = {0.1, -0.8, -1.0, 0.0};
    g.hi = {1.0, 0.8, 1.0, 0.0};
    double r1 = dust_residual(rarefaction_lift(), g, 2e-2);
    double r2 = dust_residual(rarefaction_lift(), g, 1e-2);
    c.expect(r1 / r2 > 3.0 && r1 / r2 < 5.0, "dust residual not 2nd order");
    FourVelocityField shear = stationary_shear([](double y) { return 0.7 * std::sin(y); });
    double v1 = vorticity_checks(shear, g, 2e-2).max_transversality;
    double v2 = vorticity_checks(shear, g, 1e-2).max_transversality;
    c.expect(v1 / v2 > 3.0 && v1 / v2 < 5.0, "transversality not 2nd order");
    c.expect_lt(antisymmetric_det_pf_gap(10000, 4242), 1e-10, "det vs Pf^2 gap");
}

void criterion_reynolds(Check& c, Mode) {
    using namespace tbh::rel;
    ReynoldsEstimate local = reynolds_estimate(200.0, 6.0, 1.0 / (8.0 * M_PI), 6.0);
    c.expect(std::abs(local.re_local - 48.0 * M_PI) < 0.01 * 48.0 * M_PI,
             "48 pi beyond 1%");
    ReynoldsEstimate cosmic = reynolds_estimate(200.0, 900.0 * 1e15, 1.0 / (8.0 * M_PI), 6.0);
    c.expect(std::abs(cosmic.re_scaled - 2.26e19) < 0.02 * 2.26e19, "2.26e19 beyond 2%");
}

void criterion_madelung(Check& c, Mode) {
    using namespace tbh::mad;
    const double kappa = 2.0 * M_PI;
    // plane wave
    {
        const int n = 64;
        std::vector<MadelungState> snaps;
        double dt = 1e-5;
        for (int i = 0; i < 3; ++i) {
            MadelungState st;
            st.n = n;
            st.kappa = kappa;
            st.rho.assign(n, 1.0);
            st.s.assign(n, -0.5 * i * dt);
            st.winding = 1.0;
            snaps.push_back(st);
        }
        ResidualReport r = schrodinger_residual(snaps, dt);
        c.expect_lt(r.schrodinger_max, 1e-10, "plane-wave residual");
    }
    // single-valuedness <=> quantized winding
    {
        for (double w : {0.0, 1.0, -2.0, 3.0}) {
            MadelungState st;
            st.n = 32;
            st.kappa = kappa;
            st.rho.assign(32, 1.0);
            st.s.assign(32, 0.0);
            st.winding = w;
            bool ok = true;
            try {
                auto psi = wavefunction(st);
                // seam continuation: Psi(x + 2 pi) / Psi(x) = e^{2 pi i w}
                double seam = std::abs(std::polar(1.0, 2.0 * M_PI * st.winding) - cd(1.0, 0.0));
                ok = !psi.empty() && seam < 1e-10;
            } catch (const MultivaluedError&) {
                ok = false;
            }
            c.expect(ok, "integer winding rejected");
            SpectralField1D u(4);
            u.set_coeff(0, cd(w * kappa / (2.0 * M_PI), 0.0));
            c.expect(std::abs(circulation(u, kappa).deviation) < 1e-10 * kappa,
                     "quantized circulation deviates");
        }
        for (double w : {0.5, 0.25, -1.3}) {
            MadelungState st;
            st.n = 32;
            st.kappa = kappa;
            st.rho.assign(32, 1.0);
            st.s.assign(32, 0.0);
            st.winding = w;
            bool threw = false;
            try {
                (void)wavefunction(st);
            } catch (const MultivaluedError&) {
                threw = true;
            }
            c.expect(threw, "non-quantized winding accepted");
            SpectralField1D u(4);
            u.set_coeff(0, cd(w * kappa / (2.0 * M_PI), 0.0));
            c.expect(std::abs(circulation(u, kappa).deviation) > 1e-10 * kappa,
                     "non-quantized circulation not flagged");
        }
    }
    // radiation integrals on 100 random densities
    {
        rng::pcg32 gen(55);
        bool classical_ok = true, quantum_ok = true;
        for (int rep = 0; rep < 100; ++rep) {
            const int n = 256;
            std::vector<double> rho(n);
            double a = 0.3 * gen.gaussian(), b = 0.3 * gen.gaussian(),
                   c2 = 0.15 * gen.gaussian();
            for (int j = 0; j < n; ++j) {
                double x = 2.0 * M_PI * j / n;
                rho[j] = std::exp(a * std::cos(x) + b * std::sin(x) + c2 * std::cos(2.0 * x));
            }
            RadiationReport r = radiation_integrals(rho, kappa);
            classical_ok = classical_ok && std::abs(r.classical) < 1e-8 * r.scale;
            quantum_ok = quantum_ok && r.quantum > 0.0;
        }
        c.expect(classical_ok, "classical radiation integral above 1e-8 scale");
        c.expect(quantum_ok, "quantum radiation integral not positive");
    }
    // shock suppression
    {
        ShockReport r = shock_suppression_demo([](double x) { return std::sin(x); }, kappa,
                                               1024, 5.0);
        c.expect(r.shock_detected, "no Burgers gradient blow-up");
        c.expect(std::abs(r.shock_time - 1.0) < 0.05, "shock time beyond 5% of 1.0");
        c.expect(r.schrod_finite, "free evolution not finite");
        for (double gmax : r.maxgrad_schrod)
            c.expect(std::isfinite(gmax), "free-evolution gradient not finite");
    }
}

struct Criterion {
    int id;
    const char* name;
    void (*run)(Check&, Mode);
};

const Criterion criteria[] = {
    {1, "conservation on a noise run", criterion_conservation},
    {2, "dealiased product vs direct convolution", criterion_oracle_product},
    {3, "Hamiltonian triads vs collocation", criterion_hamiltonian_oracle},
    {4, "soliton solver convergence and residual", criterion_soliton_solver},
    {5, "empirical fit parameter table", criterion_table2},
    {6, "lambda-velocity law", criterion_lambda_velocity},
    {7, "energy scaling in the cutoff", criterion_energy_scaling},
    {8, "diffusion persistence and equipartition", criterion_diffusion},
    {9, "collision damage and reversal", criterion_collision},
    {10, "two-soliton attraction", criterion_attraction},
    {11, "characteristic attractor", criterion_characteristics},
    {12, "invariant subspaces", criterion_subspace},
    {13, "circulant completeness", criterion_completeness},
    {14, "3D factorized solitons and passive invariants", criterion_threed},
    {15, "relativistic dust map and vorticity", criterion_relativistic},
    {16, "Reynolds estimates", criterion_reynolds},
    {17, "Madelung suite", criterion_madelung},
};

} // namespace

std::vector<CriterionResult> run_acceptance(Mode mode, std::ostream& log) {
    std::vector<CriterionResult> results;
    for (const Criterion& cr : criteria) {
        Check check;
        auto t0 = clock_type::now();
        try {
            cr.run(check, mode);
        } catch (const std::exception& e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
        CriterionResult r{cr.id, cr.name, check.pass, check.detail.str(), secs};
        results.push_back(r);
        log << (r.pass ? "PASS" : "FAIL") << "  " << r.id << ": " << r.name << "  ["
            << std::lround(secs * 1000.0) << " ms]";
        if (!r.pass) log << "  -- " << r.detail;
        log << "\n";
    }
    int passed = 0;
    for (const auto& r : results) passed += r.pass;
    log << passed << "/" << results.size() << " criteria passed\n";
    return results;
}

} // namespace tbh::accept
