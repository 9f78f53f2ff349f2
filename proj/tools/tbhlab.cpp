// Reproducible experiment runner for the truncated Burgers-Hopf laboratory.
// Every subcommand echoes its configuration as the first NDJSON line of the
// diagnostics stream and writes a manifest with checksums, so a run is
// reproducible from its outputs alone.

#include "tbh/acceptance.hpp"
#include "tbh/burgers3d.hpp"
#include "tbh/dynamics.hpp"
#include "tbh/invariants.hpp"
#include "tbh/io.hpp"
#include "tbh/lab.hpp"
#include "tbh/madelung.hpp"
#include "tbh/parallel.hpp"
#include "tbh/relativistic.hpp"
#include "tbh/soliton.hpp"
#include "tbh/version.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <algorithm>
#include <optional>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace tbh;

namespace {

struct CommonOpts {
    int lambda = 50;
    double sigma = 0.0;
    std::uint64_t seed = 1;
    double dt = 0.0; // 0: CFL-like default
    double t_final = 10.0;
    double scale = 1.0;
    double displacement = M_PI;
    int k0 = 2;
    int threads = 0;
    std::string out_dir = "out";
    std::string format = "ndjson";
};

// Config-file values are injected as leading tokens, so every option takes
// the last occurrence: explicit flags override the file.
template <class T>
CLI::Option* opt(CLI::App* cmd, const std::string& name, T& var, const std::string& help) {
    return cmd->add_option(name, var, help)->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

void add_common(CLI::App* cmd, CommonOpts& o, std::string& config_path) {
    cmd->add_option("--config", config_path, "key=value configuration file; flags override");
    opt(cmd, "--lambda", o.lambda, "Fourier cutoff");
    opt(cmd, "--sigma", o.sigma, "noise scale");
    opt(cmd, "--seed", o.seed, "RNG seed");
    opt(cmd, "--dt", o.dt, "time step (0 picks the CFL-like default)");
    opt(cmd, "--t-final", o.t_final, "integration horizon");
    opt(cmd, "--scale", o.scale, "soliton scale factor");
    opt(cmd, "--displacement", o.displacement, "soliton displacement d");
    opt(cmd, "--k0", o.k0, "invariant-subspace stride");
    opt(cmd, "--threads", o.threads, "OpenMP thread count (0: default)");
    opt(cmd, "--out-dir", o.out_dir, "output directory");
    opt(cmd, "--format", o.format, "diagnostics format: ndjson or csv")
        ->check(CLI::IsMember({"ndjson", "csv"}));
}

// Replace "--config FILE" with the file's key=value pairs, placed right
// after the subcommand token.
void expand_config(std::vector<std::string>& args) {
    std::string path;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (path.empty()) return;
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open config file " + path);
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(f, line)) {
        size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("malformed config line: " + line);
        std::string key = line.substr(start, eq - start);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        std::string value = line.substr(eq + 1);
        size_t vs = value.find_first_not_of(" \t");
        value = vs == std::string::npos ? "" : value.substr(vs);
        tokens.push_back("--" + key + "=" + value);
    }
    args.insert(args.empty() ? args.end() : args.begin() + 1, tokens.begin(), tokens.end());
}

io::json echo_config(const std::string& sub, const CommonOpts& o) {
    // the output directory is a run location, not configuration: it lives
    // in the manifest, and identically seeded runs must agree byte for byte
    return io::json{{"subcommand", sub}, {"lambda", o.lambda},
                    {"sigma", o.sigma},  {"seed", o.seed},
                    {"dt", o.dt},        {"t_final", o.t_final},
                    {"scale", o.scale},  {"displacement", o.displacement},
                    {"k0", o.k0},        {"format", o.format}};
}

struct Outputs {
    fs::path dir;
    std::vector<std::string> files;

    explicit Outputs(const std::string& d) : dir(d) { fs::create_directories(dir); }
    std::ofstream open(const std::string& name) {
        fs::path p = dir / name;
        std::ofstream f(p);
        if (!f) throw std::invalid_argument("cannot write " + p.string());
        files.push_back(p.string());
        return f;
    }
};

void finish_manifest(const std::string& sub, const CommonOpts& o, Outputs& outs,
                     const std::string& started) {
    io::RunManifest m;
    m.subcommand = sub;
    m.config_echo = echo_config(sub, o);
    m.seed = o.seed;
    m.started_at = started;
    m.finished_at = io::iso8601_now();
    m.outputs = outs.files;
    m.version = tbh::version;
    io::write_manifest(m, (outs.dir / "manifest.json").string());
}

void write_diag_stream(std::ostream& os, const io::json& config, const TrajectoryRecord& traj,
                       const std::string& format) {
    if (format == "csv") {
        io::write_csv_header(os, {"t", "u0", "energy", "energy_total", "hamiltonian"});
        for (const auto& s : traj.samples)
            io::write_csv_row(os, {s.diag.t, s.diag.u0, s.diag.energy, s.diag.energy_total,
                                   s.diag.hamiltonian});
    } else {
        io::write_ndjson(os, io::json{{"config", config}});
        for (const auto& s : traj.samples) io::write_ndjson(os, io::diagnostics_to_json(s.diag));
    }
}

void write_snapshots(std::ostream& os, const TrajectoryRecord& traj) {
    for (const auto& s : traj.samples)
        io::write_ndjson(os, io::json{{"t", s.t},
                                      {"field", io::field_to_json(s.field)},
                                      {"diagnostics", io::diagnostics_to_json(s.diag)}});
}

IntegratorConfig integ_for(const CommonOpts& o, const SpectralField1D& u0,
                           int samples_target = 400) {
    IntegratorConfig cfg;
    cfg.dt = o.dt > 0.0 ? o.dt : default_dt(u0);
    cfg.t_final = o.t_final;
    long steps = std::lround(cfg.t_final / cfg.dt);
    cfg.sample_interval = std::max(1L, steps / samples_target);
    return cfg;
}

int run_soliton_solve(const CommonOpts& o) {
    std::string started = io::iso8601_now();
    Outputs outs(o.out_dir);
    SolitonSolution sol = solve_static(o.lambda, ones_seed(o.lambda));
    auto f = outs.open("soliton.ndjson");
    io::write_ndjson(f, io::json{{"config", echo_config("soliton-solve", o)}});
    io::write_ndjson(
        f, io::json{{"field", io::field_to_json(sol.field)},
                    {"residual", sol.residual},
                    {"iterations", sol.iterations},
                    {"alpha", sol.alpha},
                    {"energy", sol.energy},
                    {"energy_total", sol.energy_total},
                    {"hamiltonian", sol.hamiltonian},
                    {"lambda_multiplier", sol.lambda_multiplier}});
    finish_manifest("soliton-solve", o, outs, started);
    std::cout << "soliton: lambda=" << o.lambda << " iterations=" << sol.iterations
              << " residual=" << sol.residual << " E_total=" << sol.energy_total << "\n";
    return 0;
}

int run_soliton_fit(const CommonOpts& o) {
    std::string started = io::iso8601_now();
    Outputs outs(o.out_dir);
    SolitonSolution sol = solve_static(o.lambda, ones_seed(o.lambda));
    FitParams p = fit_empirical(sol);
    auto f = outs.open("fit.csv");
    io::write_csv_header(f, {"lambda", "a", "b", "c", "d", "residual"});
    io::write_csv_row(f, {double(o.lambda), p.a, p.b, p.c, p.d, p.residual_norm});
    finish_manifest("soliton-fit", o, outs, started);
    std::cout << "fit: lambda=" << o.lambda << " a=" << p.a << " b=" << p.b << " c=" << p.c
              << " d=" << p.d << " residual=" << p.residual_norm << "\n";
    return p.converged ? 0 : 2;
}

int run_evolve(const CommonOpts& o) {
    std::string started = io::iso8601_now();
    Outputs outs(o.out_dir);
    rng::pcg32 gen(o.seed);
    SpectralField1D u0 = noise_field(o.lambda, o.sigma, gen);
    if (o.sigma == 0.0 && o.lambda >= 1) u0.set_coeff(1, cd(1.0, 0.0)); // 2 cos x default
    IntegratorConfig cfg = integ_for(o, u0);
    TrajectoryRecord traj = integrate(u0, cfg);
    auto d = outs.open(o.format == "csv" ? "diagnostics.csv" : "diagnostics.ndjson");
    write_diag_stream(d, echo_config("evolve", o), traj, o.format);
    auto s = outs.open("trajectory.ndjson");
    write_snapshots(s, traj);
    finish_manifest("evolve", o, outs, started);
    std::cout << "evolve: steps=" << std::lround(cfg.t_final / cfg.dt)
              << " samples=" << traj.samples.size()
              << " dE/E=" << std::abs(traj.back().diag.energy - traj.front().diag.energy) /
                                 std::max(1e-300, traj.front().diag.energy)
              << "\n";
    return 0;
}

void write_diffusion_outputs(const CommonOpts& o, Outputs& outs, const DiffusionResult& res) {
    auto d = outs.open(o.format == "csv" ? "diagnostics.csv" : "diagnostics.ndjson");
    write_diag_stream(d, echo_config("diffusion", o), res.traj, o.format);
    auto snap = outs.open("trajectory.ndjson");
    write_snapshots(snap, res.traj);
    auto tr = outs.open("peak_track.csv");
    io::write_csv_header(tr, {"t", "position", "residual", "correlation"});
    for (size_t i = 0; i < res.track.t.size(); ++i)
        io::write_csv_row(tr, {res.track.t[i], res.track.position[i], res.track.residual[i],
                               res.track.correlation[i]});
    auto sp = outs.open("peak_spectrum.csv");
    io::write_csv_header(sp, {"freq", "power"});
    for (size_t i = 0; i < res.track.spectrum_freq.size(); ++i)
        io::write_csv_row(sp, {res.track.spectrum_freq[i], res.track.spectrum_power[i]});
    auto bg = outs.open("background_spectrum.csv");
    io::write_csv_header(bg, {"k", "power"});
    for (int k = 1; k <= o.lambda; ++k)
        io::write_csv_row(bg, {double(k), res.background_power[k]});
}

int run_diffusion_cmd(const CommonOpts& o, int sweep) {
    std::string started = io::iso8601_now();
    ExperimentConfig cfg;
    cfg.name = "diffusion";
    cfg.lambda = o.lambda;
    cfg.sigma = o.sigma;
    cfg.seed = o.seed;
    cfg.soliton_scale = o.scale;
    SolitonSolution sol = solve_static(o.lambda, ones_seed(o.lambda));
    cfg.integ = integ_for(o, make_traveling(sol, o.scale), 1000);

    if (sweep > 1) {
        // Independent runs on RNG substreams, one output directory and one
        // writer per run.
        std::vector<std::optional<DiffusionResult>> results(sweep);
        par::for_each(sweep, [&](int i) {
            ExperimentConfig c = cfg;
            c.stream = static_cast<std::uint64_t>(i);
            results[i] = run_diffusion(c);
        });
        bool any_destroyed = false;
        for (int i = 0; i < sweep; ++i) {
            CommonOpts oi = o;
            oi.out_dir = o.out_dir + "/run" + std::to_string(i);
            Outputs outs(oi.out_dir);
            write_diffusion_outputs(oi, outs, *results[i]);
            finish_manifest("diffusion", oi, outs, started);
            any_destroyed = any_destroyed || results[i]->soliton_destroyed;
            std::cout << "diffusion[" << i << "]: speed=" << results[i]->track.drift_speed
                      << " min_corr=" << results[i]->min_correlation << "\n";
        }
        return any_destroyed ? 2 : 0;
    }

    Outputs outs(o.out_dir);
    DiffusionResult res = run_diffusion(cfg);
    write_diffusion_outputs(o, outs, res);
    finish_manifest("diffusion", o, outs, started);
    std::cout << "diffusion: speed=" << res.track.drift_speed
              << " min_corr=" << res.min_correlation
              << (res.soliton_destroyed ? " soliton destroyed\n" : "\n");
    return res.soliton_destroyed ? 2 : 0;
}

int run_collide_cmd(const CommonOpts& o) {
    std::string started = io::iso8601_now();
    Outputs outs(o.out_dir);
    ExperimentConfig cfg;
    cfg.name = "collide";
    cfg.lambda = o.lambda;
    cfg.soliton_scale = o.scale;
    cfg.integ.dt = o.dt > 0.0 ? o.dt : 1e-4;
    cfg.integ.t_final = o.t_final;
    cfg.integ.sample_interval =
        std::max(1L, std::lround(cfg.integ.t_final / cfg.integ.dt) / 400);
    CollisionResult res = run_collision(cfg);
    auto d = outs.open(o.format == "csv" ? "diagnostics.csv" : "diagnostics.ndjson");
    write_diag_stream(d, echo_config("collide", o), res.traj, o.format);
    auto snap = outs.open("trajectory.ndjson");
    write_snapshots(snap, res.traj);
    auto r = outs.open("collision.ndjson");
    io::write_ndjson(r, io::json{{"damage_rel", res.damage_rel},
                                 {"fit_d1", res.fit_d1},
                                 {"fit_d2", res.fit_d2},
                                 {"reversal_error", res.reversal_error}});
    finish_manifest("collide", o, outs, started);
    std::cout << "collide: damage=" << res.damage_rel
              << " reversal_error=" << res.reversal_error << "\n";
    return 0;
}

int run_attract_cmd(const CommonOpts& o) {
    std::string started = io::iso8601_now();
    Outputs outs(o.out_dir);
    ExperimentConfig cfg;
    cfg.name = "attract";
    cfg.lambda = o.lambda;
    cfg.soliton_scale = o.scale;
    cfg.displacement = o.displacement;
    cfg.integ.dt = o.dt > 0.0 ? o.dt : 1e-3;
    cfg.integ.t_final = o.t_final;
    cfg.integ.sample_interval =
        std::max(1L, std::lround(cfg.integ.t_final / cfg.integ.dt) / 2000);
    AttractionResult res = run_attraction(cfg);
    auto d = outs.open(o.format == "csv" ? "diagnostics.csv" : "diagnostics.ndjson");
    write_diag_stream(d, echo_config("attract", o), res.traj, o.format);
    auto snap = outs.open("trajectory.ndjson");
    write_snapshots(snap, res.traj);
    auto f = outs.open("separation.csv");
    io::write_csv_header(f, {"t", "separation"});
    for (size_t i = 0; i < res.t.size(); ++i) io::write_csv_row(f, {res.t[i], res.separation[i]});
    auto r = outs.open("attraction.ndjson");
    io::write_ndjson(r, io::json{{"merged", res.merged},
                                 {"merge_time", res.merge_time},
                                 {"plateau_end", res.plateau_end},
                                 {"plateau_value", res.plateau_value},
                                 {"accel", res.accel},
                                 {"r_squared", res.r_squared},
                                 {"fwhm", res.fwhm}});
    finish_manifest("attract", o, outs, started);
    std::cout << "attract: merged=" << res.merged << " merge_time=" << res.merge_time
              << " plateau_end=" << res.plateau_end << " accel=" << res.accel << "\n";
    return 0;
}

int run_subspace_cmd(const CommonOpts& o) {
    std::string started = io::iso8601_now();
    Outputs outs(o.out_dir);
    rng::pcg32 gen(o.seed);
    SpectralField1D u0(o.lambda);
    u0.set_coeff(0, cd(1.0, 0.0));
    for (int k = o.k0; k <= o.lambda; k += o.k0)
        u0.set_coeff(k, 0.25 * gen.complex_gaussian());
    IntegratorConfig cfg = integ_for(o, u0);
    SubspaceReport rep = subspace_run(u0, o.k0, cfg);
    auto f = outs.open("leakage.csv");
    io::write_csv_header(f, {"t", "leakage"});
    for (size_t i = 0; i < rep.t.size(); ++i) io::write_csv_row(f, {rep.t[i], rep.leakage[i]});
    finish_manifest("subspace", o, outs, started);
    std::cout << "subspace: k0=" << o.k0 << " max_leakage=" << rep.max_leakage;
    if (rep.traveling_wave_error)
        std::cout << " traveling_wave_error=" << *rep.traveling_wave_error;
    std::cout << "\n";
    return 0;
}

int run_basis_cmd(const CommonOpts& o) {
    std::string started = io::iso8601_now();
    Outputs outs(o.out_dir);
    SolitonSolution sol = solve_static(o.lambda, ones_seed(o.lambda));
    CirculantBasis basis = basis_matrix(sol);
    rng::pcg32 gen(o.seed);
    SpectralField1D r(o.lambda);
    r.set_coeff(0, cd(0.3, 0.0));
    for (int k = 1; k <= o.lambda; ++k) r.set_coeff(k, 0.05 * gen.complex_gaussian());
    std::vector<double> a = basis.expand(r);
    std::vector<double> rec = basis.reconstruct(a);
    std::vector<double> samples = collocate(r, 2 * o.lambda + 1);
    double err = 0.0;
    for (size_t j = 0; j < samples.size(); ++j)
        err = std::max(err, std::abs(rec[j] - samples[j]));
    auto f = outs.open("basis.ndjson");
    io::write_ndjson(f, io::json{{"config", echo_config("basis", o)}});
    io::write_ndjson(f, io::json{{"min_eigenvalue_modulus", basis.min_eigenvalue_modulus},
                                 {"roundtrip_error", err}});
    finish_manifest("basis", o, outs, started);
    std::cout << "basis: min|eigenvalue|=" << basis.min_eigenvalue_modulus
              << " roundtrip_error=" << err << "\n";
    return 0;
}

int run_threed_verify(const CommonOpts& o) {
    std::string started = io::iso8601_now();
    Outputs outs(o.out_dir);
    int la = std::min(o.lambda, 8);
    SolitonSolution sol = solve_static(la, ones_seed(la));
    rng::pcg32 gen(o.seed);
    double r_uniform = rhs3d(factorized_soliton(sol, uniform_profile(la))).max_modulus();
    double r_dirichlet = rhs3d(factorized_soliton(sol, dirichlet_profile(la))).max_modulus();
    double r_random = rhs3d(factorized_soliton(sol, random_profile(la, gen))).max_modulus();

    SpectralField3D u(la);
    for (int c = 0; c < 3; ++c)
        for (auto& v : u.data()[c]) v = gen.complex_gaussian();
    u.enforce_hermitian();
    double sum = 0.0;
    for (const auto& v : u.data()[0]) sum += std::abs(v);
    for (int c = 0; c < 3; ++c)
        for (auto& v : u.data()[c]) v *= 0.2 / sum;
    ScalarField3D f0(la);
    for (auto& v : f0.c) v = gen.complex_gaussian();
    f0.enforce_hermitian();
    Passive3DSeries s = passive_invariants_3d(u, f0, {1e-3, 0.5, 100});
    double drift = 0.0;
    for (double v : s.f_integral)
        drift = std::max(drift, std::abs(v - s.f_integral.front()) /
                                    std::max(1.0, std::abs(s.f_integral.front())));
    for (int c = 0; c < 3; ++c)
        for (double v : s.fu_integral[c])
            drift = std::max(drift, std::abs(v - s.fu_integral[c].front()) /
                                        std::max(1.0, std::abs(s.fu_integral[c].front())));
    SpectralField3D fact = factorized_soliton(sol, dirichlet_profile(la));
    auto f = outs.open("threed.ndjson");
    io::write_ndjson(f, io::json{{"config", echo_config("threed-verify", o)}});
    io::write_ndjson(f, io::json{{"lambda3", la},
                                 {"rhs_uniform", r_uniform},
                                 {"rhs_dirichlet", r_dirichlet},
                                 {"rhs_random_profile", r_random},
                                 {"passive_drift", drift},
                                 {"hamiltonian_like", hamiltonian_like_3d(fact)}});
    auto ff = outs.open("factorized_field.ndjson");
    io::write_ndjson(ff, io::field3d_to_json(fact));
    finish_manifest("threed-verify", o, outs, started);
    std::cout << "threed: rhs residuals (" << r_uniform << ", " << r_dirichlet << ", "
              << r_random << ") passive_drift=" << drift << "\n";
    return 0;
}

int run_rel_verify(const CommonOpts& o) {
    std::string started = io::iso8601_now();
    Outputs outs(o.out_dir);
    using namespace tbh::rel;
    auto f = outs.open("relativistic.csv");
    io::write_csv_header(f, {"case", "h", "residual"});

    Grid4 g;
    g.n = {5, 9, 17, 1};
    g.lo = {0.1, -0.8, -1.0, 0.0};
    g.hi = {1.0, 0.8, 1.0, 0.0};
    FourVelocityField shear = stationary_shear([](double y) { return 0.7 * std::sin(y); });
    int idx = 0;
    for (double h : {2e-2, 1e-2, 5e-3}) {
        io::write_csv_row(f, {double(idx), h, dust_residual(rarefaction_lift(), g, h)});
        io::write_csv_row(f, {double(idx), h, vorticity_checks(shear, g, h).max_transversality});
        ++idx;
    }
    double pf_gap = antisymmetric_det_pf_gap(10000, o.seed);
    auto paths = proper_time_map(constant_boost(1.0), 2.0, 1e-3, {{0.0, 0.0, 0.0}});
    auto r = outs.open("relativistic.ndjson");
    io::write_ndjson(r, io::json{{"config", echo_config("relativistic-verify", o)}});
    io::write_ndjson(r, io::json{{"det_pf_gap", pf_gap},
                                 {"boost_tau_error",
                                  std::abs(paths[0].tau.back() - 2.0 / std::cosh(1.0))},
                                 {"norm_violation", paths[0].max_norm_violation}});
    finish_manifest("relativistic-verify", o, outs, started);
    std::cout << "relativistic: det-Pf^2 gap=" << pf_gap << "\n";
    return 0;
}

int run_madelung_verify(const CommonOpts& o, const std::string& state_path) {
    std::string started = io::iso8601_now();
    Outputs outs(o.out_dir);
    mad::MadelungState st;
    if (!state_path.empty()) {
        std::ifstream in(state_path);
        if (!in) {
            std::cerr << "cannot open " << state_path << "\n";
            return 1;
        }
        std::string line;
        std::getline(in, line);
        st = io::madelung_from_json(io::json::parse(line));
    } else {
        st.n = 256;
        st.kappa = 2.0 * M_PI;
        st.rho.resize(st.n);
        st.s.resize(st.n);
        for (int j = 0; j < st.n; ++j) {
            double x = 2.0 * M_PI * j / st.n;
            st.rho[j] = std::exp(0.2 * std::cos(x));
            st.s[j] = 0.1 * std::sin(x);
        }
    }
    mad::MadelungTrajectory traj = mad::evolve_madelung(st, 5e-5, 0.01, 100);
    mad::ResidualReport res = mad::schrodinger_residual(traj.states, traj.dt_snap);
    mad::RadiationReport rad = mad::radiation_integrals(st.rho, st.kappa);
    mad::ShockReport shock = mad::shock_suppression_demo(
        [](double x) { return std::sin(x); }, st.kappa, 1024, 5.0);
    auto f = outs.open("madelung.ndjson");
    io::write_ndjson(f, io::json{{"config", echo_config("madelung-verify", o)}});
    io::write_ndjson(f, io::json{{"schrodinger_max", res.schrodinger_max},
                                 {"continuity_max", res.continuity_max},
                                 {"hamilton_jacobi_max", res.hamilton_jacobi_max},
                                 {"split_consistency", res.split_consistency},
                                 {"radiation_classical", rad.classical},
                                 {"radiation_quantum", rad.quantum},
                                 {"radiation_scale", rad.scale}});
    io::write_ndjson(f, io::json{{"shock_time", shock.shock_time},
                                 {"shock_time_oracle", shock.shock_time_oracle},
                                 {"max_free_gradient", shock.max_schrod_grad},
                                 {"free_evolution_finite", shock.schrod_finite}});
    auto sc = outs.open("shock_series.csv");
    io::write_csv_header(sc, {"t_burgers", "maxgrad_burgers"});
    for (size_t i = 0; i < shock.t_burgers.size(); ++i)
        io::write_csv_row(sc, {shock.t_burgers[i], shock.maxgrad_burgers[i]});
    auto sf = outs.open("free_series.csv");
    io::write_csv_header(sf, {"t", "maxgrad_free"});
    for (size_t i = 0; i < shock.t_schrod.size(); ++i)
        io::write_csv_row(sf, {shock.t_schrod[i], shock.maxgrad_schrod[i]});
    finish_manifest("madelung-verify", o, outs, started);
    std::cout << "madelung: schrodinger_max=" << res.schrodinger_max
              << " radiation=(" << rad.classical << ", " << rad.quantum << ")\n";
    return 0;
}

int run_reynolds(const CommonOpts& o, double t_mev, double l_fm, double eta_over_s,
                 double l_ref_fm, double l_cosmic_m) {
    std::string started = io::iso8601_now();
    Outputs outs(o.out_dir);
    using namespace tbh::rel;
    ReynoldsEstimate local = reynolds_estimate(t_mev, l_fm, eta_over_s, l_ref_fm);
    ReynoldsEstimate cosmic =
        reynolds_estimate(t_mev, l_cosmic_m * 1e15, eta_over_s, l_ref_fm);
    ReynoldsEstimate exact =
        reynolds_estimate(t_mev, l_fm, eta_over_s, l_ref_fm, hbar_c_mev_fm);
    io::json j{{"t_mev", t_mev},
               {"l_fm", l_fm},
               {"eta_over_s", eta_over_s},
               {"l_ref_fm", l_ref_fm},
               {"l_cosmic_m", l_cosmic_m},
               {"re_local", local.re_local},
               {"re_cosmic", cosmic.re_scaled},
               {"re_local_exact_hbar_c", exact.re_local}};
    auto f = outs.open("reynolds.ndjson");
    io::write_ndjson(f, j);
    io::write_ndjson(std::cout, j);
    finish_manifest("reynolds", o, outs, started);
    return 0;
}

int run_verify(const CommonOpts& o, bool full) {
    std::string started = io::iso8601_now();
    Outputs outs(o.out_dir);
    auto f = outs.open("acceptance.ndjson");
    std::vector<accept::CriterionResult> results =
        accept::run_acceptance(full ? accept::Mode::full : accept::Mode::quick, std::cout);
    bool all = true;
    for (const auto& r : results) {
        io::write_ndjson(f, io::json{{"id", r.id},
                                     {"name", r.name},
                                     {"pass", r.pass},
                                     {"detail", r.detail},
                                     {"seconds", r.seconds}});
        all = all && r.pass;
    }
    finish_manifest("verify", o, outs, started);
    return all ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Galerkin-truncated inviscid Burgers laboratory"};
    app.set_version_flag("--version", tbh::version);
    app.require_subcommand(1);

    CommonOpts o;
    std::string state_path;
    std::string config_path;
    int sweep = 1;
    bool full = false;
    double t_mev = 200.0, l_fm = 6.0, eta_over_s = 1.0 / (8.0 * M_PI), l_ref_fm = 6.0,
           l_cosmic_m = 900.0;

    std::map<std::string, CLI::App*> subs;
    for (const char* name :
         {"soliton-solve", "soliton-fit", "evolve", "diffusion", "collide", "attract",
          "subspace", "basis", "threed-verify", "relativistic-verify", "madelung-verify",
          "reynolds", "verify"}) {
        CLI::App* cmd = app.add_subcommand(name);
        add_common(cmd, o, config_path);
        subs[name] = cmd;
    }
    subs["madelung-verify"]->add_option("--state", state_path,
                                        "NDJSON file with a Madelung state on line 1");
    subs["diffusion"]->add_option("--sweep", sweep,
                                  "fan out N independent runs on RNG substreams");
    subs["verify"]->add_flag("--full", full, "include the lambda = 200 legs");
    subs["reynolds"]->add_option("--t-mev", t_mev, "temperature in MeV");
    subs["reynolds"]->add_option("--l-fm", l_fm, "length scale in fm");
    subs["reynolds"]->add_option("--eta-over-s", eta_over_s, "shear viscosity over entropy");
    subs["reynolds"]->add_option("--l-ref-fm", l_ref_fm, "reference length in fm");
    subs["reynolds"]->add_option("--l-cosmic-m", l_cosmic_m, "horizon length in meters");

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        expand_config(args);
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    par::set_threads(o.threads);
    try {
        if (subs["soliton-solve"]->parsed()) return run_soliton_solve(o);
        if (subs["soliton-fit"]->parsed()) return run_soliton_fit(o);
        if (subs["evolve"]->parsed()) return run_evolve(o);
        if (subs["diffusion"]->parsed()) return run_diffusion_cmd(o, sweep);
        if (subs["collide"]->parsed()) return run_collide_cmd(o);
        if (subs["attract"]->parsed()) return run_attract_cmd(o);
        if (subs["subspace"]->parsed()) return run_subspace_cmd(o);
        if (subs["basis"]->parsed()) return run_basis_cmd(o);
        if (subs["threed-verify"]->parsed()) return run_threed_verify(o);
        if (subs["relativistic-verify"]->parsed()) return run_rel_verify(o);
        if (subs["madelung-verify"]->parsed()) return run_madelung_verify(o, state_path);
        if (subs["reynolds"]->parsed())
            return run_reynolds(o, t_mev, l_fm, eta_over_s, l_ref_fm, l_cosmic_m);
        if (subs["verify"]->parsed()) return run_verify(o, full);
    } catch (const BlowupError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const NonConvergenceError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
