#include "tbh/dynamics.hpp"

#include "tbh/stepper.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace tbh;

TEST_CASE("rhs hand cases") {
    SpectralField1D z(3);
    CHECK(rhs(z).max_modulus() == 0.0);

    // 2 cos x at lambda 1 is steady: the only product mode is truncated.
    SpectralField1D u1 = test::two_cos_x(1);
    CHECK(rhs(u1).max_modulus() < 1e-14);

    // At lambda 2: du_2/dt = -i, du_1/dt = 0.
    SpectralField1D u2 = test::two_cos_x(2);
    SpectralField1D r = rhs(u2);
    CHECK(r.coeffs()[0] == cd(0.0, 0.0));
    CHECK(std::abs(r.coeffs()[1]) < 1e-14);
    CHECK(r.coeffs()[2].real() == doctest::Approx(0.0));
    CHECK(r.coeffs()[2].imag() == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("steady state stays put; u0 bits never move") {
    SpectralField1D u = test::two_cos_x(1);
    IntegratorConfig cfg{1e-3, 10.0, 1000};
    TrajectoryRecord traj = integrate(u, cfg);
    CHECK(test::max_coeff_diff(traj.back().field, u) < 1e-12);

    // With a mean flow the lambda = 1 field is a rotating wave, but u_0
    // itself must never move a bit.
    SpectralField1D v = u;
    v.set_coeff(0, cd(0.25, 0.0));
    TrajectoryRecord tv = integrate(v, cfg);
    for (const auto& s : tv.samples) CHECK(s.field.mean() == 0.25);
}

TEST_CASE("zero field with no force stays zero") {
    SpectralField1D z(8);
    TrajectoryRecord traj = integrate(z, {1e-2, 1.0, 10});
    CHECK(traj.back().field.max_modulus() == 0.0);
}

TEST_CASE("u0 conserved exactly and E drift small on a noise run") {
    rng::pcg32 gen(12);
    SpectralField1D u = test::random_field(16, gen, 0.1, true);
    IntegratorConfig cfg{1e-3, 2.0, 200};
    TrajectoryRecord traj = integrate(u, cfg);
    double e0 = traj.front().diag.energy;
    for (const auto& s : traj.samples) {
        CHECK(s.field.mean() == 0.0);
        CHECK(std::abs(s.diag.energy - e0) < 1e-9 * e0);
    }
}

TEST_CASE("manufactured forcing reproduces a known trajectory") {
    // Force F = du*/dt + (1/2) d/dx P(u*^2) makes u*(t) an exact solution;
    // u* is a rigid translation of a random profile.
    rng::pcg32 gen(4);
    SpectralField1D base = test::random_field(6, gen, 0.2, true);
    double c = 0.8; // translation speed
    auto ustar = [&](double t) { return translate(base, c * t); };
    Force f = [&](double t) {
        SpectralField1D u = ustar(t);
        SpectralField1D du(6); // d/dt of translate: -ikc u_k
        for (int k = 1; k <= 6; ++k) du.set_coeff(k, cd(0.0, -k * c) * u.coeffs()[k]);
        SpectralField1D r = rhs(u);
        SpectralField1D out(6);
        for (int k = 0; k <= 6; ++k) out.set_coeff(k, du.coeffs()[k] - r.coeffs()[k]);
        return out;
    };
    IntegratorConfig cfg{1e-3, 1.0, 100};
    TrajectoryRecord traj = integrate(base, cfg, &f);
    CHECK(test::max_coeff_diff(traj.back().field, ustar(1.0)) < 1e-10);
}

TEST_CASE("time reversal: backward equals negate-forward-negate") {
    rng::pcg32 gen(8);
    SpectralField1D u = test::random_field(12, gen, 0.3, true);
    IntegratorConfig back{1e-3, 0.5, 50, true};
    TrajectoryRecord tb = integrate(u, back);

    SpectralField1D neg(12);
    for (int k = 0; k <= 12; ++k) neg.set_coeff(k, -u.coeffs()[k]);
    IntegratorConfig fwd{1e-3, 0.5, 50, false};
    TrajectoryRecord tf = integrate(neg, fwd);
    SpectralField1D negf(12);
    for (int k = 0; k <= 12; ++k) negf.set_coeff(k, -tf.back().field.coeffs()[k]);
    CHECK(test::max_coeff_diff(tb.back().field, negf) < 1e-10);
}

TEST_CASE("time reverse run recovers the initial state") {
    SpectralField1D z(6);
    ReversalReport zr = time_reverse_run(z, {1e-2, 0.5, 10});
    CHECK(zr.max_error == 0.0);

    SpectralField1D steady = test::two_cos_x(1);
    ReversalReport sr = time_reverse_run(steady, {1e-3, 1.0, 100});
    CHECK(sr.max_error < 1e-12);

    rng::pcg32 gen(15);
    SpectralField1D u = test::random_field(16, gen, 0.2, true);
    ReversalReport rr = time_reverse_run(u, {1e-3, 1.0, 100});
    CHECK(rr.max_error < 1e-9);
}

TEST_CASE("fourth order convergence") {
    rng::pcg32 gen(33);
    SpectralField1D u = test::random_field(16, gen, 0.2, true);
    double T = 0.5;
    auto final_at = [&](double dt) {
        return integrate(u, {dt, T, 1 << 30}).back().field;
    };
    SpectralField1D ref = final_at(T / 4096.0);
    double e1 = test::max_coeff_diff(final_at(T / 128.0), ref);
    double e2 = test::max_coeff_diff(final_at(T / 256.0), ref);
    double ratio = e1 / e2;
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("blow-up detection") {
    // A strong constant force on mode 1 drives the state over the threshold.
    SpectralField1D u = test::two_cos_x(4);
    Force f = [](double) {
        SpectralField1D out(4);
        out.set_coeff(1, cd(1e12, 0.0));
        return out;
    };
    IntegratorConfig cfg{1e-2, 10.0, 10};
    CHECK_THROWS_AS(integrate(u, cfg, &f), BlowupError);
}

TEST_CASE("characteristics") {
    SUBCASE("uniform field: x = x0 + c t") {
        SpectralField1D u(2);
        u.set_coeff(0, cd(0.6, 0.0));
        TrajectoryRecord traj = integrate(u, {1e-2, 2.0, 100});
        CharacteristicPath p = characteristic(traj, 1.0, 1e-2, 2.0);
        CHECK(p.x.back() == doctest::Approx(1.0 + 0.6 * 2.0).epsilon(1e-10));
    }
    SUBCASE("requesting times beyond the trajectory throws") {
        SpectralField1D u(2);
        TrajectoryRecord traj = integrate(u, {1e-2, 1.0, 100});
        CHECK_THROWS_AS(characteristic(traj, 0.0, 1e-2, 2.0), std::invalid_argument);
    }
}

TEST_CASE("truncation force") {
    SpectralField1D z(4);
    CHECK(truncation_force(z, 1.0) == 0.0);

    // u = 2 cos x at lambda 1: (1-P)(u^2) = 2 cos 2x, force = -2 sin 2x.
    SpectralField1D u = test::two_cos_x(1);
    for (double x : {0.0, 0.4, 2.2})
        CHECK(truncation_force(u, x) == doctest::Approx(-2.0 * std::sin(2.0 * x)).epsilon(1e-12));

    // Band-limited field with modes <= lambda/2: product fully resolved.
    SpectralField1D v(8);
    v.set_coeff(2, cd(0.3, 0.1));
    v.set_coeff(4, cd(-0.2, 0.05));
    for (double x : {0.0, 1.0, 3.0}) CHECK(std::abs(truncation_force(v, x)) < 1e-13);
}

TEST_CASE("subspace runs") {
    SUBCASE("zero field has zero leakage") {
        SpectralField1D z(5);
        SubspaceReport rep = subspace_run(z, 2, {1e-2, 1.0, 20});
        CHECK(rep.max_leakage == 0.0);
    }
    SUBCASE("modes on multiples of 2 stay there") {
        SpectralField1D u(5);
        u.set_coeff(2, cd(0.25, 0.0));
        SubspaceReport rep = subspace_run(u, 2, {1e-3, 10.0, 1000});
        CHECK(rep.max_leakage < 1e-10);
    }
    SUBCASE("k0 > lambda/2 matches the linear traveling wave") {
        SpectralField1D u(5);
        u.set_coeff(0, cd(1.0, 0.0));
        u.set_coeff(4, cd(0.2, -0.1));
        SubspaceReport rep = subspace_run(u, 4, {1e-3, 10.0, 100});
        REQUIRE(rep.traveling_wave_error.has_value());
        CHECK(*rep.traveling_wave_error < 1e-8);
        CHECK(rep.max_leakage < 1e-12);
    }
    SUBCASE("random in-subspace data stays put for k0 = 3") {
        rng::pcg32 gen(41);
        SpectralField1D u(10);
        for (int k = 3; k <= 10; k += 3) u.set_coeff(k, 0.2 * gen.complex_gaussian());
        SubspaceReport rep = subspace_run(u, 3, {1e-3, 5.0, 500});
        CHECK(rep.max_leakage < 1e-10);
    }
    SUBCASE("off-subspace initial data is rejected") {
        SpectralField1D u(5);
        u.set_coeff(2, cd(0.25, 0.0));
        u.set_coeff(3, cd(0.1, 0.0));
        CHECK_THROWS_AS(subspace_run(u, 2, {1e-2, 1.0, 10}), std::invalid_argument);
    }
}

TEST_CASE("reduced-cutoff equivalence under relabeling") {
    // Fields on multiples of k0 evolve like the floor(lambda/k0) system with
    // time scaled by k0; RK4 commutes with the relabeling exactly.
    rng::pcg32 gen(19);
    const int la = 11, k0 = 3, lr = la / k0; // 3
    SpectralField1D small = test::random_field(lr, gen, 0.3, true);
    SpectralField1D big(la);
    for (int m = 1; m <= lr; ++m) big.set_coeff(m * k0, small.coeffs()[m]);

    int steps = 200;
    double dt = 1e-3;
    TrajectoryRecord tb = integrate(big, {dt, steps * dt, steps});
    TrajectoryRecord ts = integrate(small, {dt * k0, steps * dt * k0, steps});
    for (int m = 1; m <= lr; ++m)
        CHECK(std::abs(tb.back().field.coeffs()[m * k0] - ts.back().field.coeffs()[m]) < 1e-11);
}

TEST_CASE("conservation checks catch a corrupted right side") {
    // Mutation probe: flipping the derivative sign on odd modes only breaks
    // the triad cancellation, and the E/H drift checks must see it.
    rng::pcg32 gen(77);
    SpectralField1D u = test::random_field(12, gen, 0.3, true);
    auto bad_rhs = [](const std::vector<cd>& s, double) {
        SpectralField1D v(12, s);
        SpectralField1D w = quadratic_product(v);
        std::vector<cd> out(13, cd(0.0, 0.0));
        for (int k = 1; k <= 12; ++k) {
            double sign = (k % 2 == 1) ? +0.5 : -0.5;
            out[k] = cd(0.0, sign * k) * w.coeffs()[k];
        }
        return out;
    };
    std::vector<cd> y = u.coeffs();
    for (int i = 0; i < 300; ++i) detail::rk4_step(y, i * 1e-3, 1e-3, bad_rhs);
    SpectralField1D v(12, y);
    double rel_drift = std::abs(energy(v) - energy(u)) / energy(u);
    CHECK(rel_drift > 1e-3); // far beyond the 1e-6 gate a correct build meets
}

TEST_CASE("galilean transform commutes with evolution") {
    rng::pcg32 gen(25);
    SpectralField1D u = test::random_field(16, gen, 0.2);
    double v = 0.3, T = 1.0, dt = 5e-4;
    TrajectoryRecord t1 = integrate(galilean(u, v, 0.0), {dt, T, 1 << 30});
    TrajectoryRecord t2 = integrate(u, {dt, T, 1 << 30});
    SpectralField1D transformed = galilean(t2.back().field, v, T);
    CHECK(test::max_coeff_diff(t1.back().field, transformed) < 1e-9);
}
