#include "tbh/madelung.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace tbh;
using namespace tbh::mad;

namespace {

MadelungState grid_state(int n, double kappa) {
    MadelungState st;
    st.n = n;
    st.rho.assign(n, 1.0);
    st.s.assign(n, 0.0);
    st.kappa = kappa;
    return st;
}

} // namespace

TEST_CASE("circulation") {
    SpectralField1D z(4);
    CirculationReport r0 = circulation(z, 2.0 * M_PI);
    CHECK(r0.value == 0.0);
    CHECK(r0.nearest == 0);
    CHECK(r0.deviation == 0.0);

    // u = S_x with S = x has u_0 = 1: circulation 2 pi, winding 1.
    SpectralField1D u(4);
    u.set_coeff(0, cd(1.0, 0.0));
    CirculationReport r1 = circulation(u, 2.0 * M_PI);
    CHECK(r1.value == doctest::Approx(2.0 * M_PI));
    CHECK(r1.nearest == 1);
    CHECK(std::abs(r1.deviation) < 1e-14);
}

TEST_CASE("wavefunction") {
    SUBCASE("uniform state gives Psi = 1") {
        MadelungState st = grid_state(16, 2.0 * M_PI);
        std::vector<cd> psi = wavefunction(st);
        for (const cd& v : psi) CHECK(std::abs(v - cd(1.0, 0.0)) < 1e-14);
    }
    SUBCASE("S = x with kappa = 2 pi gives e^{ix}, single-valued") {
        MadelungState st = grid_state(32, 2.0 * M_PI);
        st.winding = 1.0; // S = x stored entirely in the winding part
        std::vector<cd> psi = wavefunction(st);
        for (int j = 0; j < st.n; ++j) {
            double x = 2.0 * M_PI * j / st.n;
            CHECK(std::abs(psi[j] - std::polar(1.0, x)) < 1e-13);
        }
        CHECK(std::abs(std::norm(psi[7]) - st.rho[7]) < 1e-12);
    }
    SUBCASE("S = x with kappa = 4 pi is multivalued with mismatch pi") {
        MadelungState st = grid_state(32, 4.0 * M_PI);
        st.winding = 0.5; // circulation 2 pi = kappa/2
        CHECK_THROWS_WITH_AS(wavefunction(st), doctest::Contains("multivalued"),
                             MultivaluedError);
        try {
            wavefunction(st);
        } catch (const MultivaluedError& e) {
            CHECK(std::abs(e.phase_mismatch) == doctest::Approx(M_PI).epsilon(1e-12));
        }
    }
}

TEST_CASE("quantum potential") {
    SUBCASE("constant density gives zero") {
        std::vector<double> rho(64, 1.7);
        std::vector<double> v = quantum_potential(rho, 2.0 * M_PI);
        for (double x : v) CHECK(std::abs(x) < 1e-13);
    }
    SUBCASE("R = eps cos x matches the closed form") {
        // V = (1/2)(kappa/2pi)^2 (R'' + R'^2) for rho = e^{2R}.
        const int n = 256;
        const double eps = 0.05, kappa = 3.0;
        std::vector<double> rho(n);
        for (int j = 0; j < n; ++j) {
            double x = 2.0 * M_PI * j / n;
            rho[j] = std::exp(2.0 * eps * std::cos(x));
        }
        std::vector<double> v = quantum_potential(rho, kappa);
        double hbar = kappa / (2.0 * M_PI);
        for (int j = 0; j < n; ++j) {
            double x = 2.0 * M_PI * j / n;
            double expect = 0.5 * hbar * hbar *
                            (-eps * std::cos(x) + eps * eps * std::sin(x) * std::sin(x));
            CHECK(v[j] == doctest::Approx(expect).epsilon(1e-8));
        }
    }
    SUBCASE("agrees with a 4th-order finite-difference oracle") {
        const int n = 512;
        rng::pcg32 gen(17);
        // smooth positive density from a few random low modes
        std::vector<double> rho(n);
        double a1 = 0.2 * gen.gaussian(), b1 = 0.2 * gen.gaussian(), a2 = 0.1 * gen.gaussian();
        for (int j = 0; j < n; ++j) {
            double x = 2.0 * M_PI * j / n;
            rho[j] = std::exp(a1 * std::cos(x) + b1 * std::sin(x) + a2 * std::cos(2 * x));
        }
        std::vector<double> v = quantum_potential(rho, 2.0 * M_PI);
        double h = 2.0 * M_PI / n;
        for (int j = 0; j < n; j += 37) {
            auto root = [&](int i) { return std::sqrt(rho[((i % n) + n) % n]); };
            double lap = (-root(j + 2) + 16.0 * root(j + 1) - 30.0 * root(j) +
                          16.0 * root(j - 1) - root(j - 2)) /
                         (12.0 * h * h);
            double expect = 0.5 * lap / root(j);
            CHECK(v[j] == doctest::Approx(expect).epsilon(1e-8));
        }
    }
    SUBCASE("nonpositive density is a domain error") {
        std::vector<double> rho(16, 1.0);
        rho[3] = 0.0;
        CHECK_THROWS_AS(quantum_potential(rho, 1.0), std::domain_error);
    }
}

TEST_CASE("schrodinger residual") {
    const double kappa = 2.0 * M_PI; // hbar = 1
    SUBCASE("plane wave is an exact solution") {
        const int n = 64;
        const double v = 1.0; // quantized: circulation 2 pi v = kappa v
        std::vector<MadelungState> snaps;
        double dt = 1e-5;
        for (int i = 0; i < 3; ++i) {
            MadelungState st = grid_state(n, kappa);
            st.winding = v;
            double t = i * dt;
            for (int j = 0; j < n; ++j) st.s[j] = -0.5 * v * v * t; // periodic part
            snaps.push_back(st);
        }
        ResidualReport r = schrodinger_residual(snaps, dt);
        CHECK(r.schrodinger_max < 1e-10);
        CHECK(r.continuity_max < 1e-10);
        CHECK(r.hamilton_jacobi_max < 1e-10);
        CHECK(r.split_consistency < 1e-10);
    }
    SUBCASE("self-consistent short-time evolution has small residual") {
        const int n = 128;
        MadelungState st = grid_state(n, kappa);
        for (int j = 0; j < n; ++j) {
            double x = 2.0 * M_PI * j / n;
            st.rho[j] = 1.0 + 0.1 * std::cos(x);
            st.s[j] = 0.1 * std::sin(x);
        }
        MadelungTrajectory traj = evolve_madelung(st, 5e-5, 0.01, 100);
        ResidualReport r = schrodinger_residual(traj.states, traj.dt_snap);
        CHECK(r.schrodinger_max < 1e-6);
        CHECK(r.continuity_max < 1e-6);
        CHECK(r.split_consistency < 1e-10);
    }
    SUBCASE("mismatched rho and S are detected") {
        const int n = 64;
        std::vector<MadelungState> snaps;
        for (int i = 0; i < 3; ++i) {
            MadelungState st = grid_state(n, kappa);
            for (int j = 0; j < n; ++j) {
                double x = 2.0 * M_PI * j / n;
                st.rho[j] = 1.0 + 0.3 * std::cos(x);
                st.s[j] = 0.5 * std::sin(x); // static, inconsistent pair
            }
            snaps.push_back(st);
        }
        ResidualReport r = schrodinger_residual(snaps, 1e-3);
        CHECK(r.schrodinger_max > 1e-2);
        CHECK(r.continuity_max > 1e-2);
    }
}

TEST_CASE("shock suppression demo") {
    SUBCASE("u0 = sin x: Burgers shocks at t = 1, free evolution stays finite") {
        ShockReport r = shock_suppression_demo([](double x) { return std::sin(x); },
                                               2.0 * M_PI, 1024, 5.0);
        CHECK(r.shock_detected);
        CHECK(r.shock_time_oracle == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(r.shock_time == doctest::Approx(1.0).epsilon(0.05));
        CHECK(r.schrod_finite);
        CHECK(r.max_schrod_grad > 0.0);
        for (double g : r.maxgrad_schrod) CHECK(std::isfinite(g));
    }
    SUBCASE("zero initial data: both evolutions static") {
        ShockReport r = shock_suppression_demo([](double) { return 0.0; }, 2.0 * M_PI, 256, 1.0);
        CHECK(!r.shock_detected);
        CHECK(r.max_schrod_grad < 1e-12);
    }
    SUBCASE("non-quantized circulation is rejected") {
        CHECK_THROWS_AS(shock_suppression_demo([](double) { return 0.3; }, 2.0 * M_PI, 256, 1.0),
                        std::domain_error);
    }
}

TEST_CASE("radiation integrals") {
    SUBCASE("constant density: both zero") {
        std::vector<double> rho(128, 2.0);
        RadiationReport r = radiation_integrals(rho, 2.0 * M_PI);
        CHECK(std::abs(r.classical) < 1e-14);
        CHECK(r.quantum < 1e-14);
    }
    SUBCASE("random smooth densities: classical vanishes, quantum positive") {
        rng::pcg32 gen(41);
        for (int rep = 0; rep < 20; ++rep) {
            const int n = 256;
            std::vector<double> rho(n);
            double a = 0.3 * gen.gaussian(), b = 0.3 * gen.gaussian(), c = 0.15 * gen.gaussian();
            for (int j = 0; j < n; ++j) {
                double x = 2.0 * M_PI * j / n;
                rho[j] = std::exp(a * std::cos(x) + b * std::sin(x) + c * std::cos(3 * x));
            }
            RadiationReport r = radiation_integrals(rho, 2.0 * M_PI);
            CHECK(std::abs(r.classical) < 1e-8 * std::max(1e-300, r.scale));
            CHECK(r.quantum > 0.0);
        }
    }
    SUBCASE("scaling rho by a constant leaves V and the classical null intact") {
        const int n = 128;
        std::vector<double> rho(n), rho2(n);
        for (int j = 0; j < n; ++j) {
            double x = 2.0 * M_PI * j / n;
            rho[j] = std::exp(0.2 * std::cos(x));
            rho2[j] = 3.0 * rho[j];
        }
        RadiationReport r1 = radiation_integrals(rho, 2.0 * M_PI);
        RadiationReport r2 = radiation_integrals(rho2, 2.0 * M_PI);
        CHECK(std::abs(r2.classical) < 1e-8 * std::max(1e-300, r2.scale));
        // V depends on rho only through sqrt-ratios: quantum scales by the constant.
        CHECK(r2.quantum == doctest::Approx(3.0 * r1.quantum).epsilon(1e-10));
    }
}
