#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <sstream>

#include "confmom/fifthdim.hpp"
#include "confmom/verify.hpp"

using namespace confmom;

TEST_CASE("eta branch factors") {
    const ScaleM M(1.0);
    CHECK(eta(BranchSpec(Branch::internal, 0.0, M)) == doctest::Approx(1.0));
    CHECK(eta(BranchSpec(Branch::external, 0.0, M)) == doctest::Approx(1.0));
    CHECK(eta(BranchSpec(Branch::internal, 1.0, M)) == doctest::Approx(0.0));
    CHECK(eta(BranchSpec(Branch::external, 1.0, M)) == doctest::Approx(std::sqrt(2.0)));
    // absolute value active above m = M
    CHECK(eta(BranchSpec(Branch::internal, std::sqrt(3.0), M)) ==
          doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(BranchSpec(Branch::internal, -0.5, M), std::invalid_argument);
}

TEST_CASE("free constraint solution is the phase exponential") {
    const ScaleM M(1.0);
    const BranchSpec spec(Branch::internal, 0.0, M);  // eta = 1
    const FifthGrid grid = FifthGrid::centered(0.0, M);
    const FifthProfile sol = solve_constraint(spec, Complex(1.0, 0.0), nullptr, grid);
    CHECK(sol.at_anchor() == Complex(1.0, 0.0));
    double worst = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const Complex exact = std::exp(Complex(0.0, -grid.x5(i)));
        worst = std::max(worst, std::abs(sol.values[i] - exact));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("first-order perturbation of the quadratic interaction") {
    const ScaleM M(1.0);
    const BranchSpec spec(Branch::internal, 0.0, M);
    const FifthGrid grid = FifthGrid::centered(0.0, M, 2048, 2.0);
    const double g = 1e-3;
    const FifthProfile sol = solve_constraint(
        spec, Complex(1.0, 0.0), [g](Complex phi, double) { return g * phi * phi; }, grid);
    double worst = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.x5(i);
        const Complex e1 = std::exp(Complex(0.0, -x));
        const Complex e2 = std::exp(Complex(0.0, -2.0 * x));
        worst = std::max(worst, std::abs(sol.values[i] - (e1 + g * (e2 - e1))));
    }
    CHECK(worst < 10.0 * g * g);
}

TEST_CASE("overflow guard trips on the real Riccati blow-up") {
    const ScaleM M(1.0);
    const BranchSpec spec(Branch::internal, 1.0, M);  // eta = 0
    const FifthGrid grid = FifthGrid::centered(0.0, M);
    CHECK_THROWS_AS(
        solve_constraint(
            spec, Complex(1.0, 0.0),
            [](Complex phi, double) { return Complex(0.0, 1.0) * phi * phi; }, grid, 1e6),
        StepDiverged);
}

TEST_CASE("derivative routes agree on an exact exponential") {
    const FifthGrid grid = FifthGrid::centered(0.0, ScaleM(1.0), 1024, M_PI * 2.0);
    const double period = grid.step * grid.n;
    const double k = 2.0 * M_PI * 7.0 / period;
    std::vector<Complex> f(grid.n);
    for (int i = 0; i < grid.n; ++i) f[i] = std::exp(Complex(0.0, k * grid.x5(i)));
    const auto ds = differentiate(f, grid.step, DerivativeMethod::spectral);
    const auto dc = differentiate(f, grid.step, DerivativeMethod::stencil4);
    double worst_s = 0.0, worst_c = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const Complex exact = Complex(0.0, k) * f[i];
        worst_s = std::max(worst_s, std::abs(ds[i] - exact));
        if (i >= 2 && i < grid.n - 2) worst_c = std::max(worst_c, std::abs(dc[i] - exact));
    }
    CHECK(worst_s < 1e-10);
    CHECK(worst_c < 1e-4);
    // spectral route needs a power-of-two grid
    std::vector<Complex> odd(1023, Complex(1.0, 0.0));
    CHECK_THROWS_AS(differentiate(odd, 0.1, DerivativeMethod::spectral),
                    std::invalid_argument);
}

TEST_CASE("plane-wave source factor and its inverse") {
    const ScaleM M(1.0);
    for (Branch b : {Branch::internal, Branch::external}) {
        const BranchSpec spec(b, 0.3, M);
        const double eta_a = eta(spec);
        const double sign = b == Branch::internal ? 1.0 : -1.0;
        // q5 = M eta doubles the eta factor
        CHECK(source_from_plane_wave(spec, Complex(1.0, 0.0), M.value() * eta_a).real() ==
              doctest::Approx(sign * 2.0 * M.sq() * eta_a).epsilon(1e-14));
        CHECK(source_from_plane_wave(spec, Complex(0.0, 0.0), 1.7) == Complex(0.0, 0.0));
        CHECK(l_from_source(Complex(0.0, 0.0), 0.4, spec) == Complex(0.0, 0.0));
        verify::Rng rng(41);
        for (int i = 0; i < 100; ++i) {
            const double q5 = verify::uniform(rng, -3.0, 3.0);
            if (std::abs(q5 + M.value() * eta_a) < 0.05) continue;
            const Complex amp(verify::uniform(rng, -1, 1), verify::uniform(rng, -1, 1));
            const Complex back = l_from_source(source_from_plane_wave(spec, amp, q5), q5, spec);
            CHECK(std::abs(back - amp) < 1e-12);
        }
        CHECK_THROWS_AS(l_from_source(Complex(1.0, 0.0), -M.value() * eta_a, spec),
                        ResonantPole);
    }
}

TEST_CASE("numeric source of a solved quadratic interaction matches the closed form") {
    const ScaleM M(1.0);
    const BranchSpec spec(Branch::internal, 0.0, M);
    const double eta_a = eta(spec);
    const double g = 0.1;
    const FifthGrid grid = FifthGrid::centered(0.0, M);
    const FifthProfile phi = solve_constraint(
        spec, Complex(0.5, 0.0), [g](Complex p, double) { return g * p * p; }, grid);
    FifthProfile l;
    l.grid = grid;
    l.values.resize(grid.n);
    for (int i = 0; i < grid.n; ++i) l.values[i] = g * phi.values[i] * phi.values[i];
    const FifthProfile j = source_from_l(spec, l);
    double worst = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const Complex v = phi.values[i];
        const Complex closed = M.sq() * (3.0 * g * eta_a * v * v + 2.0 * g * g * v * v * v);
        worst = std::max(worst, std::abs(j.values[i] - closed) / std::abs(closed));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("shell support report flags off-window modes") {
    const ScaleM M(1.0);
    // exact internal shell point q^2 = q5^2 = M^2/2
    const SpectralMode exact{{std::sqrt(0.5), 0, 0, 0}, std::sqrt(0.5), Complex(1.0, 0.0),
                             Branch::internal};
    // q^2 = 2 M^2 cannot sit on the internal window
    const SpectralMode wrong{{std::sqrt(2.0), 0, 0, 0}, 1.0, Complex(1.0, 0.0),
                             Branch::internal};
    const ShellSupportReport rep = check_shell_support({exact, wrong}, M);
    CHECK(rep.entries[0].pass);
    CHECK(!rep.entries[1].pass);
    CHECK(!rep.entries[1].window_ok);
    CHECK(!rep.all_pass);

    verify::Rng rng(51);
    std::vector<SpectralMode> modes;
    for (int i = 0; i < 200; ++i)
        modes.push_back(
            make_on_shell_mode(verify::random_momentum(rng), Complex(0.5, 0.5), M));
    const ShellSupportReport all = check_shell_support(modes, M);
    CHECK(all.all_pass);
    CHECK(all.max_residual <= 1e-10 * M.sq());
}

TEST_CASE("4D reduction sums branch boundary values") {
    const ScaleM M(1.0);
    const FifthGrid grid = FifthGrid::centered(0.0, M);
    FifthProfile zero;
    zero.grid = grid;
    zero.values.assign(grid.n, Complex(0.0, 0.0));
    const BranchSpec spec(Branch::internal, 0.4, M);
    const FifthProfile phi = solve_constraint(spec, Complex(0.3, 0.4), nullptr, grid);
    const FourDimReduction red = reduce_to_4d(phi, zero, zero, zero);
    CHECK(red.Phi == Complex(0.3, 0.4));
    CHECK(red.J == Complex(0.0, 0.0));

    FifthProfile other;
    other.grid = FifthGrid::centered(1.0, M);
    other.values.assign(other.grid.n, Complex(0.0, 0.0));
    CHECK_THROWS_AS(reduce_to_4d(phi, other, zero, zero), std::invalid_argument);
}

TEST_CASE("profile CSV round trip") {
    const ScaleM M(1.0);
    const FifthGrid grid = FifthGrid::centered(0.3, M, 64, 1.0);
    const FifthProfile sol =
        solve_constraint(BranchSpec(Branch::internal, 0.2, M), Complex(0.7, -0.1), nullptr,
                         grid);
    std::stringstream ss;
    write_profile_csv(sol, ss);
    const FifthProfile back = read_profile_csv(ss);
    REQUIRE(back.grid.n == grid.n);
    CHECK(back.grid.step == doctest::Approx(grid.step).epsilon(1e-15));
    double worst = 0.0;
    for (int i = 0; i < grid.n; ++i)
        worst = std::max(worst, std::abs(back.values[i] - sol.values[i]));
    CHECK(worst == 0.0);  // %.17g output round-trips exactly

    std::stringstream bad("not,a,profile\n");
    CHECK_THROWS_AS(read_profile_csv(bad), std::invalid_argument);
}

TEST_CASE("grid anchor is a grid point") {
    const FifthGrid g = FifthGrid::centered(0.7, ScaleM(2.0), 512, 5.0);
    CHECK(g.anchor() == doctest::Approx(0.7).epsilon(1e-13));
    CHECK(g.n == 512);
    CHECK_THROWS_AS(FifthGrid::centered(0.0, ScaleM(1.0), 3, 1.0), std::invalid_argument);
}
