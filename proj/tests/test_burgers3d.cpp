#include "tbh/burgers3d.hpp"

#include "tbh/dynamics.hpp"
#include "tbh/invariants.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace tbh;

namespace {

// Random Hermitian field rescaled so the physical amplitude bound
// sum_k |u_k| comes out near `amp`; the compressible 3D system has no
// energy invariant, so large fields genuinely blow up.
SpectralField3D random_field3d(int lambda, rng::pcg32& gen, double amp) {
    SpectralField3D u(lambda);
    for (int c = 0; c < 3; ++c)
        for (auto& v : u.data()[c]) v = gen.complex_gaussian();
    u.enforce_hermitian();
    double sum = 0.0;
    for (const auto& v : u.data()[0]) sum += std::abs(v);
    for (int c = 0; c < 3; ++c)
        for (auto& v : u.data()[c]) v *= amp / sum;
    return u;
}

double max_diff3d(const SpectralField3D& a, const SpectralField3D& b) {
    double m = 0.0;
    for (int c = 0; c < 3; ++c)
        for (size_t i = 0; i < a.data()[c].size(); ++i)
            m = std::max(m, std::abs(a.data()[c][i] - b.data()[c][i]));
    return m;
}

} // namespace

TEST_CASE("cutoff cap enforced") {
    CHECK_THROWS_AS(SpectralField3D(33), std::invalid_argument);
    CHECK_THROWS_AS(SpectralField3D(0), std::invalid_argument);
}

TEST_CASE("rhs3d of the zero field is zero") {
    SpectralField3D z(4);
    CHECK(rhs3d(z).max_modulus() == 0.0);
}

TEST_CASE("rhs3d equals the direct convolution on random fields") {
    rng::pcg32 gen(14);
    for (int rep = 0; rep < 3; ++rep) {
        SpectralField3D u = random_field3d(3, gen, 1.0);
        SpectralField3D a = rhs3d(u);
        SpectralField3D b = ref::rhs3d_direct(u);
        CHECK(max_diff3d(a, b) < 1e-12);
        // The parallel and serial collocation paths agree bitwise.
        CHECK(max_diff3d(a, ref::rhs3d_serial(u)) == 0.0);
    }
}

TEST_CASE("x-only fields reduce to the 1D right side line by line") {
    rng::pcg32 gen(5);
    const int la = 6;
    SpectralField1D u1 = test::random_field(la, gen, 0.3);
    SpectralField3D u(la);
    for (int kx = -la; kx <= la; ++kx) u.at(0, kx, 0, 0) = u1.coeff(kx);
    SpectralField3D r3 = rhs3d(u);
    SpectralField1D r1 = rhs(u1);
    for (int kx = 0; kx <= la; ++kx)
        CHECK(std::abs(r3.at(0, kx, 0, 0) - r1.coeffs()[kx]) < 1e-12);
    // nothing leaks off the kx-axis or into other components
    double off = 0.0;
    for (int c = 0; c < 3; ++c)
        for (int kx = -la; kx <= la; ++kx)
            for (int ky = -la; ky <= la; ++ky)
                for (int kz = -la; kz <= la; ++kz)
                    if (c != 0 || ky != 0 || kz != 0)
                        off = std::max(off, std::abs(r3.at(c, kx, ky, kz)));
    CHECK(off < 1e-13);
}

TEST_CASE("fields constant in y,z evolve exactly like the 1D module") {
    rng::pcg32 gen(8);
    const int la = 5;
    SpectralField1D u1 = test::random_field(la, gen, 0.2, true);
    SpectralField3D u(la);
    for (int kx = -la; kx <= la; ++kx) u.at(0, kx, 0, 0) = u1.coeff(kx);
    IntegratorConfig cfg{1e-3, 0.2, 100};
    Trajectory3D t3 = integrate3d(u, cfg);
    TrajectoryRecord t1 = integrate(u1, cfg);
    for (int kx = 0; kx <= la; ++kx)
        CHECK(std::abs(t3.fields.back().at(0, kx, 0, 0) - t1.back().field.coeffs()[kx]) < 1e-12);
}

TEST_CASE("factorized solitons are stationary") {
    const int la = 8;
    SolitonSolution sol = solve_static(la, ones_seed(la));
    SUBCASE("uniform transverse profile reduces to the 1D soliton") {
        SpectralField3D u = factorized_soliton(sol, uniform_profile(la));
        for (int kx = 0; kx <= la; ++kx)
            CHECK(std::abs(u.at(0, kx, 0, 0) - sol.field.coeffs()[kx]) < 1e-15);
        CHECK(rhs3d(u).max_modulus() < 1e-10);
    }
    SUBCASE("Dirichlet-kernel profile") {
        SpectralField3D u = factorized_soliton(sol, dirichlet_profile(la));
        CHECK(rhs3d(u).max_modulus() < 1e-10);
    }
    SUBCASE("random band-limited profile") {
        rng::pcg32 gen(23);
        SpectralField3D u = factorized_soliton(sol, random_profile(la, gen));
        CHECK(rhs3d(u).max_modulus() < 1e-10);
    }
    SUBCASE("cutoff mismatch is an error") {
        CHECK_THROWS_AS(factorized_soliton(sol, uniform_profile(la + 1)), std::invalid_argument);
    }
}

TEST_CASE("3D cubic diagnostic reduces to the 1D collocation identity") {
    rng::pcg32 gen(3);
    const int la = 6;
    SpectralField1D u1 = test::random_field(la, gen, 0.3);
    SpectralField3D u(la);
    for (int kx = -la; kx <= la; ++kx) u.at(0, kx, 0, 0) = u1.coeff(kx);
    CHECK(hamiltonian_like_3d(u) == doctest::Approx(hamiltonian_collocation(u1)).epsilon(1e-12));
}

TEST_CASE("passive invariants in 3D") {
    rng::pcg32 gen(31);
    const int la = 4;
    SpectralField3D u = random_field3d(la, gen, 0.2);
    SUBCASE("constant f stays put exactly; zero f stays zero") {
        ScalarField3D fc(la);
        fc.at(0, 0, 0) = cd(1.5, 0.0);
        Passive3DSeries s = passive_invariants_3d(u, fc, {1e-3, 0.05, 10});
        for (double v : s.f_integral)
            CHECK(v == doctest::Approx(1.5 * std::pow(2.0 * M_PI, 3)).epsilon(1e-13));

        ScalarField3D fz(la);
        Passive3DSeries z = passive_invariants_3d(u, fz, {1e-3, 0.05, 10});
        for (size_t i = 0; i < z.t.size(); ++i) {
            CHECK(z.f_integral[i] == 0.0);
            for (int c = 0; c < 3; ++c) CHECK(z.fu_integral[c][i] == 0.0);
        }
    }
    SUBCASE("random f: both integrals drift below 1e-7 relative") {
        ScalarField3D f(la);
        for (auto& v : f.c) v = 0.5 * gen.complex_gaussian();
        f.enforce_hermitian();
        Passive3DSeries s = passive_invariants_3d(u, f, {1e-3, 0.5, 100});
        double f0 = s.f_integral.front();
        for (double v : s.f_integral)
            CHECK(std::abs(v - f0) <= 1e-7 * std::max(1.0, std::abs(f0)));
        for (int c = 0; c < 3; ++c) {
            double g0 = s.fu_integral[c].front();
            for (double v : s.fu_integral[c])
                CHECK(std::abs(v - g0) <= 1e-7 * std::max(1.0, std::abs(g0)));
        }
    }
}
