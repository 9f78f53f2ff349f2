#include "tbh/invariants.hpp"

#include "tbh/dynamics.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace tbh;

TEST_CASE("energy examples") {
    SpectralField1D z(5);
    CHECK(energy(z) == 0.0);
    CHECK(energy_total(z) == 0.0);
    SpectralField1D u = test::two_cos_x(5); // u_1 = 1
    CHECK(energy(u) == doctest::Approx(1.0));
    CHECK(energy_total(u) == doctest::Approx(2.0 * M_PI));
}

TEST_CASE("hamiltonian hand cases") {
    SpectralField1D z(4);
    CHECK(hamiltonian(z) == 0.0);

    SpectralField1D u = test::two_cos_x(4);
    CHECK(hamiltonian_triads(u) == doctest::Approx(0.0)); // no admissible triad

    // u = 2 cos x + 2 cos 2x: six ordered triads of type (1,1,-2), H = 1.
    SpectralField1D v = test::two_cos_x(4);
    v.set_coeff(2, cd(1.0, 0.0));
    CHECK(hamiltonian_triads(v) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(ref::hamiltonian_triads_serial(v) == hamiltonian_triads(v)); // bitwise
    CHECK(hamiltonian_collocation(v) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("triad sum equals collocation identity on random fields") {
    rng::pcg32 gen(5);
    for (int la : {4, 16, 32}) {
        for (int rep = 0; rep < 8; ++rep) {
            SpectralField1D u = test::random_field(la, gen, 0.5);
            double ht = hamiltonian_triads(u);
            double hc = hamiltonian_collocation(u);
            CHECK(std::abs(ht - hc) < 1e-10 * std::max(1.0, std::abs(ht)));
            CHECK(ref::hamiltonian_triads_serial(u) == ht);
        }
    }
}

TEST_CASE("lagrange multiplier") {
    CHECK(lagrange_multiplier(2.0, 0.0) == 0.0);
    CHECK(lagrange_multiplier(1.0, 1.0) == doctest::Approx(-1.5));
    CHECK_THROWS_AS(lagrange_multiplier(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(lagrange_multiplier(-1.0, 1.0), std::domain_error);
}

TEST_CASE("galilean changes E by v^2/2 - v u0 and time reversal flips H") {
    rng::pcg32 gen(21);
    SpectralField1D u = test::random_field(12, gen, 0.3);
    double v = 0.7;
    SpectralField1D g = galilean(u, v, 0.0);
    CHECK(energy(g) - energy(u) ==
          doctest::Approx(v * v / 2.0 - v * u.mean()).epsilon(1e-12));

    SpectralField1D neg(12);
    for (int k = 0; k <= 12; ++k) neg.set_coeff(k, -u.coeffs()[k]);
    CHECK(hamiltonian(neg) == doctest::Approx(-hamiltonian(u)).epsilon(1e-12));
    CHECK(energy(neg) == doctest::Approx(energy(u)).epsilon(1e-14));
}

TEST_CASE("passive invariants: constant f and zero f") {
    rng::pcg32 gen(31);
    SpectralField1D u = test::random_field(16, gen, 0.2, true);
    IntegratorConfig cfg{1e-3, 0.5, 100};

    SpectralField1D fc(16);
    fc.set_coeff(0, cd(2.5, 0.0));
    PassiveSeries s = passive_invariants(u, fc, cfg);
    for (double v : s.f_integral) CHECK(v == doctest::Approx(2.5 * 2.0 * M_PI).epsilon(1e-12));

    SpectralField1D fz(16);
    PassiveSeries z = passive_invariants(u, fz, cfg);
    for (size_t i = 0; i < z.t.size(); ++i) {
        CHECK(z.f_integral[i] == 0.0);
        CHECK(z.fu_integral[i] == 0.0);
    }
}

TEST_CASE("passive invariants drift below 1e-8 over T=1 at lambda 32") {
    rng::pcg32 gen(77);
    SpectralField1D u = test::random_field(32, gen, 0.15, true);
    SpectralField1D f = test::random_field(32, gen, 0.5);
    IntegratorConfig cfg{1e-4, 1.0, 1000};
    PassiveSeries s = passive_invariants(u, f, cfg);
    double f0 = s.f_integral.front();
    double fu0 = s.fu_integral.front();
    for (size_t i = 0; i < s.t.size(); ++i) {
        CHECK(std::abs(s.f_integral[i] - f0) <= 1e-8 * std::max(1.0, std::abs(f0)));
        CHECK(std::abs(s.fu_integral[i] - fu0) <= 1e-8 * std::max(1.0, std::abs(fu0)));
    }
}
