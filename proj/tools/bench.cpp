// Timing comparison of the OpenMP kernels against their serial references
// and of the transform-based fast paths against the direct sums.

#include "tbh/burgers3d.hpp"
#include "tbh/dynamics.hpp"
#include "tbh/field.hpp"
#include "tbh/invariants.hpp"
#include "tbh/parallel.hpp"
#include "tbh/relativistic.hpp"
#include "tbh/rng.hpp"
#include "tbh/soliton.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

using namespace tbh;
using clock_type = std::chrono::steady_clock;

namespace {

double time_of(const std::function<void()>& body, int reps) {
    auto t0 = clock_type::now();
    for (int i = 0; i < reps; ++i) body();
    return std::chrono::duration<double>(clock_type::now() - t0).count() / reps;
}

void row(const char* name, double serial, double par_or_fast) {
    std::printf("%-44s %12.3f us %12.3f us %8.2fx\n", name, serial * 1e6, par_or_fast * 1e6,
                serial / par_or_fast);
}

} // namespace

int main() {
    std::printf("threads: %d\n", par::max_threads());
    std::printf("%-44s %15s %15s %9s\n", "kernel", "reference", "candidate", "speedup");

    rng::pcg32 gen(1);
    for (int la : {32, 64, 200}) {
        SpectralField1D u(la);
        for (int k = 1; k <= la; ++k) u.set_coeff(k, 0.1 * gen.complex_gaussian());
        char name[96];
        std::snprintf(name, sizeof name, "quadratic product direct vs FFT, lambda=%d", la);
        double direct = time_of([&] { (void)tbh::ref::quadratic_product_direct(u); }, 40);
        double fast = time_of([&] { (void)quadratic_product(u); }, 200);
        row(name, direct, fast);
    }

    for (int la : {32, 64}) {
        SpectralField1D u(la);
        for (int k = 1; k <= la; ++k) u.set_coeff(k, 0.1 * gen.complex_gaussian());
        char name[96];
        std::snprintf(name, sizeof name, "triad sum serial vs OpenMP, lambda=%d", la);
        double ser = time_of([&] { (void)tbh::ref::hamiltonian_triads_serial(u); }, 40);
        double par = time_of([&] { (void)hamiltonian_triads(u); }, 40);
        row(name, ser, par);
    }

    {
        SolitonSolution sol = solve_static(50, ones_seed(50));
        TrajectoryRecord traj;
        traj.samples.push_back({0.0, sol.field, diagnostics(0.0, sol.field)});
        std::vector<double> seeds(16);
        for (int i = 0; i < 16; ++i) seeds[i] = 2.0 * M_PI * i / 16.0;
        double ser = time_of(
            [&] {
                for (double x0 : seeds) (void)characteristic(traj, x0, 2e-3, 5.0, 1 << 30);
            },
            2);
        double par = time_of([&] { (void)characteristics(traj, seeds, 2e-3, 5.0, 1 << 30); }, 2);
        row("characteristic ensemble serial vs OpenMP", ser, par);
    }

    {
        SpectralField3D u(8);
        for (int c = 0; c < 3; ++c)
            for (auto& v : u.data()[c]) v = 1e-4 * gen.complex_gaussian();
        u.enforce_hermitian();
        double ser = time_of([&] { (void)tbh::ref::rhs3d_serial(u); }, 10);
        double par = time_of([&] { (void)rhs3d(u); }, 10);
        row("3D right side serial vs OpenMP, lambda3=8", ser, par);
    }

    {
        using namespace tbh::rel;
        FourVelocityField f = rarefaction_lift();
        Grid4 g;
        g.n = {17, 65, 1, 1};
        g.lo = {0.1, -1.0, 0.0, 0.0};
        g.hi = {1.0, 1.0, 0.0, 0.0};
        double ser = time_of([&] { (void)tbh::rel::ref::dust_residual_serial(f, g, 1e-3); }, 5);
        double par = time_of([&] { (void)dust_residual(f, g, 1e-3); }, 5);
        row("dust residual scan serial vs OpenMP", ser, par);
    }
    return 0;
}
