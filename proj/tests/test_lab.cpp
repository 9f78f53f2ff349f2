#include "tbh/lab.hpp"

#include "tbh/invariants.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace tbh;

TEST_CASE("noise field statistics") {
    SUBCASE("sigma = 0 gives the zero field") {
        rng::pcg32 gen(1);
        CHECK(noise_field(20, 0.0, gen).max_modulus() == 0.0);
    }
    SUBCASE("per-mode power and total energy match the complex-normal law") {
        const int la = 20;
        const double sigma = 0.01;
        const int draws = 10000;
        rng::pcg32 gen(2024);
        std::vector<double> mode_power(la + 1, 0.0);
        double mean_e = 0.0;
        for (int i = 0; i < draws; ++i) {
            SpectralField1D u = noise_field(la, sigma, gen);
            CHECK(u.mean() == 0.0);
            for (int k = 1; k <= la; ++k) mode_power[k] += std::norm(u.coeffs()[k]);
            mean_e += energy(u);
        }
        mean_e /= draws;
        // E[|u_k|^2] = sigma^2 with Var(|u_k|^2) = sigma^4: 3 standard errors.
        double se_mode = sigma * sigma / std::sqrt(double(draws));
        for (int k = 1; k <= la; ++k) {
            double m = mode_power[k] / draws;
            CHECK(std::abs(m - sigma * sigma) < 3.0 * se_mode);
        }
        double se_e = sigma * sigma * std::sqrt(double(la)) / std::sqrt(double(draws));
        CHECK(std::abs(mean_e - la * sigma * sigma) < 3.0 * se_e);
    }
}

TEST_CASE("peak position") {
    SUBCASE("2 cos x peaks at zero") {
        SpectralField1D u = test::two_cos_x(8);
        CHECK(peak_position(u) == doctest::Approx(0.0).epsilon(1e-10));
    }
    SUBCASE("constant field has no peak") {
        SpectralField1D u(4);
        u.set_coeff(0, cd(0.7, 0.0));
        CHECK_THROWS_AS(peak_position(u), NoPeakError);
    }
    SUBCASE("soliton translated by 1.3 tracks to 1.3") {
        SolitonSolution sol = solve_static(50, ones_seed(50));
        SpectralField1D moved = translate(sol.field, 1.3);
        CHECK(peak_position(moved) == doctest::Approx(1.3).epsilon(1e-8));
    }
}

TEST_CASE("template match finds a known shift") {
    SolitonSolution sol = solve_static(32, ones_seed(32));
    SpectralField1D tmpl = make_traveling(sol, 1.0);
    SpectralField1D moved = translate(tmpl, 2.2);
    TemplateMatch m = template_match(moved, tmpl);
    CHECK(m.shift == doctest::Approx(2.2).epsilon(1e-8));
    CHECK(m.correlation == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("diffusion without noise keeps speed -1 and zero residual") {
    ExperimentConfig cfg;
    cfg.lambda = 50;
    cfg.sigma = 0.0;
    cfg.integ = {1e-3, 5.0, 500};
    DiffusionResult res = run_diffusion(cfg);
    CHECK(!res.soliton_destroyed);
    CHECK(res.min_correlation > 0.999);
    CHECK(res.track.drift_speed == doctest::Approx(-1.0).epsilon(1e-4));
    for (double r : res.track.residual) CHECK(std::abs(r) < 1e-4);
}

TEST_CASE("diffusion with noise: deterministic per seed, soliton survives") {
    ExperimentConfig cfg;
    cfg.lambda = 32;
    cfg.sigma = 0.01;
    cfg.seed = 11;
    cfg.integ = {1e-3, 5.0, 500};
    DiffusionResult a = run_diffusion(cfg);
    DiffusionResult b = run_diffusion(cfg);
    REQUIRE(a.track.position.size() == b.track.position.size());
    for (size_t i = 0; i < a.track.position.size(); ++i)
        CHECK(a.track.position[i] == b.track.position[i]); // bitwise
    CHECK(!a.soliton_destroyed);
    CHECK(a.min_correlation > 0.9);
    CHECK(a.track.spectrum_power.size() > 0);
}

TEST_CASE("collision at small lambda: damage nonzero, reversal recovers") {
    ExperimentConfig cfg;
    cfg.lambda = 32;
    cfg.integ = {1e-4, 2.2, 2000};
    CollisionResult res = run_collision(cfg);
    CHECK(res.damage_rel > 0.05);
    CHECK(res.reversal_error < 1e-4);
}

TEST_CASE("attraction configuration errors") {
    ExperimentConfig cfg;
    cfg.lambda = 32;
    SUBCASE("zero soliton scale") {
        cfg.soliton_scale = 0.0;
        cfg.displacement = M_PI;
        CHECK_THROWS_AS(run_attraction(cfg), std::invalid_argument);
    }
    SUBCASE("displacement outside (0, 2 pi)") {
        cfg.displacement = 0.0;
        CHECK_THROWS_AS(run_attraction(cfg), std::invalid_argument);
        cfg.displacement = 7.0;
        CHECK_THROWS_AS(run_attraction(cfg), std::invalid_argument);
    }
    SUBCASE("displacement below the soliton width") {
        cfg.displacement = 0.05;
        CHECK_THROWS_AS(run_attraction(cfg), std::invalid_argument);
    }
}

TEST_CASE("experiments conserve u0, E, H to integrator tolerance") {
    ExperimentConfig cfg;
    cfg.lambda = 32;
    cfg.sigma = 0.01;
    cfg.seed = 3;
    cfg.integ = {1e-3, 2.0, 200};
    DiffusionResult res = run_diffusion(cfg);
    const auto& first = res.traj.front().diag;
    for (const auto& s : res.traj.samples) {
        CHECK(s.diag.u0 == first.u0);
        CHECK(std::abs(s.diag.energy - first.energy) < 1e-8 * std::max(1.0, first.energy));
        CHECK(std::abs(s.diag.hamiltonian - first.hamiltonian) <
              1e-8 * std::max(1.0, std::pow(first.energy, 1.5)));
    }
}
