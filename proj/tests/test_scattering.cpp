#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bosegas/scattering.hpp"

using namespace bosegas;
namespace {
constexpr double kPi = std::numbers::pi;
const double kBornGaussian = std::sqrt(kPi) / 8.0;  // a / v0 to first order for e^{-r^2}
}

TEST_CASE("hard sphere scattering length") {
    const RadialPotential pot = RadialPotential::hard_sphere(1.0);
    const ScatteringSolution sol = solve_zero_energy(pot, 40.0, 4000);
    CHECK(sol.a == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(sol.u.front() == 0.0);
    for (std::size_t i = 1; i < sol.u.size(); ++i) CHECK(sol.u[i] >= sol.u[i - 1]);
    for (double r : {1.5, 2.0, 5.0, 20.0})
        CHECK(sol.f0_at(r) >= std::max(0.0, 1.0 - sol.a / r) - 1e-12);
}

TEST_CASE("free equation") {
    const RadialPotential pot = RadialPotential::hard_sphere(0.0);  // v == 0
    const ScatteringSolution sol = solve_zero_energy(pot, 20.0, 2000);
    CHECK(sol.a == 0.0);
    CHECK(sol.f0_at(3.7) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gaussian Born limit") {
    const double v0 = 1e-3;
    const RadialPotential pot = RadialPotential::gaussian(v0, 1.0);
    const ScatteringSolution sol = solve_zero_energy(pot, 40.0, 20000);
    const double born = v0 * kBornGaussian;
    CHECK(std::abs(sol.a - born) <= 0.3 * v0 * born);
    CHECK(sol.tail_fit_residual < 1e-8);

    // Second-order scaling: halving v0 halves the relative deviation.
    const ScatteringSolution half = solve_zero_energy(
        RadialPotential::gaussian(v0 / 2.0, 1.0), 40.0, 20000);
    const double dev1 = (born - sol.a) / born;
    const double dev2 = (v0 / 2.0 * kBornGaussian - half.a) / (v0 / 2.0 * kBornGaussian);
    CHECK(dev1 / dev2 == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("variational characterization") {
    // Grid aligned with the unit core: h = 0.01 puts a node at r = 1 exactly.
    std::vector<double> grid(3001);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = 30.0 * static_cast<double>(i) / (grid.size() - 1);

    const RadialPotential zero = RadialPotential::hard_sphere(0.0);
    CHECK(variational_scattering_length(zero, grid) == doctest::Approx(0.0).epsilon(1e-12));

    const RadialPotential hs = RadialPotential::hard_sphere(1.0);
    const double a_var = variational_scattering_length(hs, grid);
    CHECK(std::abs(a_var - 1.0) <= 1e-3);

    // Explicit trial [1 - 1/r]_+ plugged into the functional: the analytic value
    // 4 pi a, truncated at r_max, is 4 pi a (1 - a/r_max).
    std::vector<double> trial(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        trial[i] = std::max(0.0, 1.0 - 1.0 / std::max(grid[i], 1e-12));
    CHECK(scattering_functional(hs, grid, trial) ==
          doctest::Approx(1.0 - 1.0 / 30.0).epsilon(2e-3));

    // 8 pi a < int v strictly for a nonzero integrable potential.
    const RadialPotential gauss = RadialPotential::gaussian(2.0, 1.0);
    const double a_g = variational_scattering_length(gauss, grid);
    const double int_v = gauss.tail_integral_beyond(0.0);
    CHECK(8.0 * kPi * a_g < int_v * (1.0 - 1e-3));
    // Consistency with the ODE route at the spec tolerance.
    const ScatteringSolution sol_g = solve_zero_energy(gauss, 40.0, 20000);
    CHECK(std::abs(a_g - sol_g.a) <= 1e-3 * std::max(sol_g.a, grid[1] - grid[0]));
}

TEST_CASE("monotonicity in the potential") {
    double prev = 0.0;
    for (double height : {0.5, 1.0, 2.0, 4.0}) {
        const RadialPotential barrier = RadialPotential::square_barrier(height, 1.0);
        const ScatteringSolution sol = solve_zero_energy(barrier, 40.0, 8000);
        CHECK(sol.a >= prev - 1e-12);
        prev = sol.a;
    }
}

TEST_CASE("jastrow cutoff") {
    const RadialPotential hs = RadialPotential::hard_sphere(1.0);
    const ScatteringSolution sol = solve_zero_energy(hs, 40.0, 4000);
    const JastrowCutoff cut = jastrow(sol, 2.0);
    CHECK(cut(2.0) == 1.0);
    CHECK(cut(5.0) == 1.0);
    // Closed form (1 - 1/r)/(1 - 1/2) on [1, 2).
    for (double r : {1.2, 1.5, 1.9})
        CHECK(cut(r) == doctest::Approx((1.0 - 1.0 / r) / 0.5).epsilon(1e-10));
    CHECK(cut(0.5) == 0.0);
    // f_b in [0, 1] and nondecreasing.
    double prev = -1.0;
    for (double r = 0.0; r < 3.0; r += 0.01) {
        const double f = cut(r);
        CHECK(f >= prev - 1e-12);
        CHECK(f <= 1.0 + 1e-12);
        prev = f;
    }
    CHECK_THROWS_AS(jastrow(sol, 0.5), std::invalid_argument);

    const RadialPotential zero = RadialPotential::hard_sphere(0.0);
    const ScatteringSolution free_sol = solve_zero_energy(zero, 20.0, 2000);
    const JastrowCutoff free_cut = jastrow(free_sol, 1.0);
    CHECK(free_cut(0.3) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("eta integral") {
    const RadialPotential zero = RadialPotential::hard_sphere(0.0);
    const JastrowCutoff free_cut = jastrow(solve_zero_energy(zero, 20.0, 2000), 1.0);
    CHECK(eta_integral(free_cut).value == doctest::Approx(0.0).epsilon(1e-12));

    const ScatteringSolution hs = solve_zero_energy(RadialPotential::hard_sphere(1.0), 40.0, 4000);
    const EtaIntegral eta = eta_integral(jastrow(hs, 2.0));
    // Hard cores saturate the bound: the closed-form value is exactly (4pi/3) a b^2.
    CHECK(eta.value == doctest::Approx(16.0 * kPi / 3.0).epsilon(1e-8));
    CHECK(eta.value <= eta.bound * (1.0 + 1e-9));

    // b -> a+: only the core ball survives.
    const EtaIntegral tight = eta_integral(jastrow(hs, 1.001));
    CHECK(tight.value == doctest::Approx(4.0 * kPi / 3.0).epsilon(5e-3));
}

TEST_CASE("xi integral") {
    const RadialPotential hs = RadialPotential::hard_sphere(1.0);
    const ScatteringSolution sol = solve_zero_energy(hs, 40.0, 4000);
    const XiIntegral xi = xi_integral(jastrow(sol, 2.0), hs);
    CHECK(xi.value == doctest::Approx(8.0 * kPi).epsilon(1e-6));
    CHECK(xi.closed_form == doctest::Approx(8.0 * kPi).epsilon(1e-9));

    const RadialPotential zero = RadialPotential::hard_sphere(0.0);
    const XiIntegral xi0 = xi_integral(jastrow(solve_zero_energy(zero, 20.0, 2000), 1.0), zero);
    CHECK(xi0.value == doctest::Approx(0.0).epsilon(1e-12));

    // Gaussian tail with b far outside the support: 4 pi a / (1 - a/b) -> 4 pi a.
    const RadialPotential gauss = RadialPotential::gaussian(4.0, 1.0);
    const ScatteringSolution gsol = solve_zero_energy(gauss, 60.0, 30000);
    const XiIntegral gxi = xi_integral(jastrow(gsol, 20.0), gauss);
    CHECK(gxi.value == doctest::Approx(4.0 * kPi * gsol.a).epsilon(0.06));
    CHECK(gxi.value == doctest::Approx(gxi.closed_form).epsilon(1e-5));

    // b <= a makes the closed form singular.
    JastrowCutoff bad;
    bad.sol = sol;
    bad.b = 0.5;
    bad.f0_b = 1.0;
    CHECK_THROWS_AS(xi_integral(bad, hs), std::domain_error);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(RadialPotential::gaussian(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(RadialPotential::tabulated({1.0, 0.5}, {0.1, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(RadialPotential::tabulated({0.5, 1.0}, {0.1, -0.1}), std::invalid_argument);
    const RadialPotential hs = RadialPotential::hard_sphere(1.0);
    CHECK_THROWS_AS(solve_zero_energy(hs, 40.0, 100), std::invalid_argument);  // grid too small
    CHECK_THROWS_AS(solve_zero_energy(hs, 1.5, 4000), std::invalid_argument);  // r_max too small
}

TEST_CASE("tabulated potential interpolation") {
    // Piecewise-linear sampling of the gaussian reproduces its scattering length.
    std::vector<double> r, v;
    for (int i = 0; i <= 400; ++i) {
        r.push_back(8.0 * i / 400.0 + 1e-3);
        v.push_back(1e-3 * std::exp(-r.back() * r.back()));
    }
    const RadialPotential tab = RadialPotential::tabulated(std::move(r), std::move(v));
    const ScatteringSolution sol = solve_zero_energy(tab, 40.0, 20000);
    CHECK(sol.a == doctest::Approx(1e-3 * kBornGaussian).epsilon(2e-3));
}
