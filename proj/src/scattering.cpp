#include "bosegas/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bosegas {

namespace {
constexpr double kPi = std::numbers::pi;

// Simpson weights on a uniform grid (trapezoid fallback for odd interval counts).
double simpson(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    if (n < 2) return 0.0;
    if (n == 2) return 0.5 * h * (f[0] + f[1]);
    double s = 0.0;
    std::size_t m = n - 1;               // interval count
    std::size_t last = (m % 2 == 0) ? m : m - 1;
    for (std::size_t i = 0; i + 2 <= last; i += 2)
        s += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
    if (m % 2 != 0) s += 0.5 * h * (f[n - 2] + f[n - 1]);
    return s;
}
}  // namespace

RadialPotential RadialPotential::hard_sphere(double radius) {
    RadialPotential p;
    p.hard_core_radius = radius;
    p.tail = TailKind::none;
    p.integrable_beyond = radius;
    p.validate();
    return p;
}

RadialPotential RadialPotential::gaussian(double v0, double width, double core_radius) {
    RadialPotential p;
    p.hard_core_radius = core_radius;
    p.tail = TailKind::gaussian;
    p.amplitude = v0;
    p.width = width;
    p.integrable_beyond = core_radius;
    p.validate();
    return p;
}

RadialPotential RadialPotential::square_barrier(double height, double range, double core_radius) {
    RadialPotential p;
    p.hard_core_radius = core_radius;
    p.tail = TailKind::square_barrier;
    p.amplitude = height;
    p.width = range;
    p.integrable_beyond = std::max(core_radius, range);
    p.validate();
    return p;
}

RadialPotential RadialPotential::tabulated(std::vector<double> r, std::vector<double> v,
                                           double core_radius) {
    RadialPotential p;
    p.hard_core_radius = core_radius;
    p.tail = TailKind::tabulated;
    p.r_samples = std::move(r);
    p.v_samples = std::move(v);
    p.integrable_beyond = p.r_samples.empty() ? core_radius
                                              : std::max(core_radius, p.r_samples.back());
    p.validate();
    return p;
}

void RadialPotential::validate() const {
    if (hard_core_radius < 0.0)
        throw std::invalid_argument("RadialPotential: negative hard core radius");
    if (tail != TailKind::none && amplitude < 0.0 && tail != TailKind::tabulated)
        throw std::invalid_argument("RadialPotential: negative tail amplitude");
    if (tail == TailKind::tabulated) {
        if (r_samples.size() != v_samples.size())
            throw std::invalid_argument("RadialPotential: sample size mismatch");
        for (std::size_t i = 0; i < r_samples.size(); ++i) {
            if (v_samples[i] < 0.0)
                throw std::invalid_argument("RadialPotential: negative potential sample");
            if (i > 0 && r_samples[i] <= r_samples[i - 1])
                throw std::invalid_argument("RadialPotential: r samples must increase strictly");
        }
    }
}

double RadialPotential::operator()(double r) const {
    switch (tail) {
        case TailKind::none:
            return 0.0;
        case TailKind::gaussian: {
            const double x = r / width;
            return amplitude * std::exp(-x * x);
        }
        case TailKind::square_barrier:
            return (r < width) ? amplitude : 0.0;
        case TailKind::tabulated: {
            if (r_samples.empty() || r <= r_samples.front()) {
                return r_samples.empty() ? 0.0 : v_samples.front();
            }
            if (r >= r_samples.back()) return 0.0;
            auto it = std::upper_bound(r_samples.begin(), r_samples.end(), r);
            const std::size_t i = static_cast<std::size_t>(it - r_samples.begin());
            const double t = (r - r_samples[i - 1]) / (r_samples[i] - r_samples[i - 1]);
            return (1.0 - t) * v_samples[i - 1] + t * v_samples[i];
        }
    }
    return 0.0;
}

double RadialPotential::tail_integral_beyond(double r0) const {
    // 4 pi int_{r0}^inf v(r) r^2 dr by fine quadrature (closed forms are not
    // worth special-casing; the integrand vanishes quickly past the support).
    double r_end = integrable_beyond;
    if (tail == TailKind::gaussian) r_end = std::max(r0, hard_core_radius) + 12.0 * width;
    if (r_end <= r0) return 0.0;
    const int n = 20001;
    const double h = (r_end - r0) / (n - 1);
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) {
        const double r = r0 + i * h;
        f[static_cast<std::size_t>(i)] = (*this)(r)*r * r;
    }
    return 4.0 * kPi * simpson(f, h);
}

ScatteringSolution solve_zero_energy(const RadialPotential& pot, double r_max, int n_grid) {
    pot.validate();
    if (n_grid < 1000) throw std::invalid_argument("solve_zero_energy: n_grid must be >= 1000");
    if (r_max <= 2.0 * std::max(pot.integrable_beyond, pot.hard_core_radius) + 1e-12)
        throw std::invalid_argument("solve_zero_energy: r_max not beyond the potential support");

    ScatteringSolution sol;
    sol.hard_core_radius = pot.hard_core_radius;

    // Pure hard sphere: f0 = [1 - a/r]_+ exactly, no integration through the core.
    if (pot.tail == TailKind::none) {
        sol.closed_form = true;
        sol.a = pot.hard_core_radius;
        sol.tail_fit_residual = 0.0;
        const double r0 = pot.hard_core_radius;
        const double h = (r_max - r0) / n_grid;
        sol.grid.resize(static_cast<std::size_t>(n_grid) + 1);
        sol.u.resize(sol.grid.size());
        sol.du.resize(sol.grid.size());
        for (std::size_t i = 0; i < sol.grid.size(); ++i) {
            const double r = r0 + static_cast<double>(i) * h;
            sol.grid[i] = r;
            sol.u[i] = r - sol.a;
            sol.du[i] = 1.0;
        }
        return sol;
    }

    const double r0 = pot.hard_core_radius;
    const double h = (r_max - r0) / n_grid;
    std::vector<double> grid(static_cast<std::size_t>(n_grid) + 1);
    std::vector<double> u(grid.size()), du(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = r0 + static_cast<double>(i) * h;

    // u'' = (1/2) v u, u(r0) = 0, u'(r0) = 1; overall scale fixed later.
    u[0] = 0.0;
    du[0] = 1.0;
    auto rhs = [&pot](double r, double uu) { return 0.5 * pot(r) * uu; };
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double r = grid[i];
        const double k1 = rhs(r, u[i]), l1 = du[i];
        const double k2 = rhs(r + 0.5 * h, u[i] + 0.5 * h * l1), l2 = du[i] + 0.5 * h * k1;
        const double k3 = rhs(r + 0.5 * h, u[i] + 0.5 * h * l2), l3 = du[i] + 0.5 * h * k2;
        const double k4 = rhs(r + h, u[i] + h * l3), l4 = du[i] + h * k3;
        u[i + 1] = u[i] + h / 6.0 * (l1 + 2.0 * l2 + 2.0 * l3 + l4);
        du[i + 1] = du[i] + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(u[i + 1]))
            throw std::runtime_error("solve_zero_energy: integration overflow");
    }

    // Least-squares fit u = c (r - a) over the final 10% of the grid.
    const std::size_t i0 = (grid.size() * 9) / 10;
    double sr = 0, sr2 = 0, su = 0, sru = 0;
    const double m = static_cast<double>(grid.size() - i0);
    for (std::size_t i = i0; i < grid.size(); ++i) {
        sr += grid[i];
        sr2 += grid[i] * grid[i];
        su += u[i];
        sru += grid[i] * u[i];
    }
    const double det = m * sr2 - sr * sr;
    const double c = (m * sru - sr * su) / det;
    const double d = (su * sr2 - sr * sru) / det;  // u ~ c r + d
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::runtime_error("solve_zero_energy: tail fit failed (potential not integrable "
                                 "at the fit range?)");
    double ss = 0.0;
    for (std::size_t i = i0; i < grid.size(); ++i) {
        const double e = u[i] - (c * grid[i] + d);
        ss += e * e;
    }
    ScatteringSolution out;
    out.grid = std::move(grid);
    out.hard_core_radius = r0;
    out.a = -d / c;
    out.tail_fit_residual = std::sqrt(ss / m) / (std::abs(c) * r_max);
    out.u.resize(u.size());
    out.du.resize(du.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        out.u[i] = u[i] / c;  // normalization: f = u / r -> 1 - a/r at the grid end
        out.du[i] = du[i] / c;
    }
    return out;
}

double ScatteringSolution::f0_at(double r) const {
    if (r <= hard_core_radius) return 0.0;
    if (closed_form) return std::max(0.0, 1.0 - a / r);
    if (r >= grid.back()) return 1.0 - a / r;
    const double h = grid[1] - grid[0];
    const double x = (r - grid.front()) / h;
    const std::size_t i = std::min(static_cast<std::size_t>(x), grid.size() - 2);
    const double t = x - static_cast<double>(i);
    const double uu = (1.0 - t) * u[i] + t * u[i + 1];
    return uu / r;
}

double ScatteringSolution::f0_deriv_at(double r) const {
    if (r <= hard_core_radius) return 0.0;
    if (closed_form) return (r > a) ? a / (r * r) : 0.0;
    if (r >= grid.back()) return a / (r * r);
    const double h = grid[1] - grid[0];
    const double x = (r - grid.front()) / h;
    const std::size_t i = std::min(static_cast<std::size_t>(x), grid.size() - 2);
    const double t = x - static_cast<double>(i);
    const double uu = (1.0 - t) * u[i] + t * u[i + 1];
    const double duu = (1.0 - t) * du[i] + t * du[i + 1];
    return (duu * r - uu) / (r * r);  // f' = (u' r - u) / r^2
}

namespace {
// Two-point Gauss nodes on [0, 1].
constexpr double kGaussLo = 0.21132486540518713;
constexpr double kGaussHi = 0.78867513459481287;
}  // namespace

double scattering_functional(const RadialPotential& pot, const std::vector<double>& grid,
                             const std::vector<double>& phi) {
    if (grid.size() != phi.size() || grid.size() < 2)
        throw std::invalid_argument("scattering_functional: grid/phi mismatch");
    double e = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double rl = grid[i], rr = grid[i + 1];
        const double h = rr - rl;
        const double dphi = (phi[i + 1] - phi[i]) / h;
        // Exact int r^2 dr for the linear interpolant.
        e += dphi * dphi * (rr * rr * rr - rl * rl * rl) / 3.0;
        for (double t : {kGaussLo, kGaussHi}) {
            const double r = rl + t * h;
            const double p = (1.0 - t) * phi[i] + t * phi[i + 1];
            e += 0.5 * h * 0.5 * pot(r) * p * p * r * r;
        }
    }
    return e;  // already the functional / (4 pi) since we dropped the angular factor
}

double variational_scattering_length(const RadialPotential& pot,
                                     const std::vector<double>& trial_grid) {
    pot.validate();
    if (trial_grid.size() < 16)
        throw std::invalid_argument("variational_scattering_length: trial grid too small");
    const std::size_t n = trial_grid.size();
    // Quadratic form matching scattering_functional: tridiagonal stiffness plus
    // the Gauss-point potential couplings; phi fixed to 0 inside the core and
    // to 1 at r_max.
    std::vector<double> diag(n, 0.0), off(n - 1, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double rl = trial_grid[i], rr = trial_grid[i + 1];
        const double h = rr - rl;
        const double k = (rr * rr * rr - rl * rl * rl) / (3.0 * h * h);
        diag[i] += k;
        diag[i + 1] += k;
        off[i] -= k;
        for (double t : {kGaussLo, kGaussHi}) {
            const double r = rl + t * h;
            const double c = 0.25 * h * pot(r) * r * r;
            diag[i] += c * (1.0 - t) * (1.0 - t);
            diag[i + 1] += c * t * t;
            off[i] += c * t * (1.0 - t);
        }
    }
    std::vector<char> fixed(n, 0);
    std::vector<double> phi(n, 1.0);
    if (pot.hard_core_radius > 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            if (trial_grid[i] <= pot.hard_core_radius) {
                fixed[i] = 1;
                phi[i] = 0.0;
            }
        }
    }
    fixed[n - 1] = 1;
    phi[n - 1] = 1.0;

    auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
        // y = A x, A the Hessian of the quadratic form (factor 2 dropped).
        for (std::size_t i = 0; i < n; ++i) y[i] = diag[i] * x[i];
        for (std::size_t i = 0; i + 1 < n; ++i) {
            y[i] += off[i] * x[i + 1];
            y[i + 1] += off[i] * x[i];
        }
    };
    // Solve A phi = 0 on free nodes with boundary data via CG on the residual.
    std::vector<double> r(n, 0.0), p(n, 0.0), ap(n, 0.0);
    apply(phi, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = fixed[i] ? 0.0 : -r[i];
    p = r;
    double rs = 0.0;
    for (double v : r) rs += v * v;
    const double rs0 = rs;
    const int max_iter = static_cast<int>(20 * n);
    int it = 0;
    for (; it < max_iter && rs > 1e-26 * std::max(1.0, rs0); ++it) {
        apply(p, ap);
        double pap = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (!fixed[i]) pap += p[i] * ap[i];
        if (pap <= 0.0) break;
        const double alpha = rs / pap;
        for (std::size_t i = 0; i < n; ++i) {
            if (fixed[i]) continue;
            phi[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        double rs_new = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (!fixed[i]) rs_new += r[i] * r[i];
        const double beta = rs_new / rs;
        rs = rs_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = fixed[i] ? 0.0 : r[i] + beta * p[i];
    }
    const double value = scattering_functional(pot, trial_grid, phi);
    if (it >= max_iter)
        throw std::runtime_error("variational_scattering_length: iteration limit, best value " +
                                 std::to_string(value));
    // Boundary correction: with phi(r_max) = 1 the continuum minimum over a
    // potential supported inside r_max equals a / (1 - a/r_max); invert it.
    return value / (1.0 + value / trial_grid.back());
}

JastrowCutoff jastrow(const ScatteringSolution& sol, double b) {
    if (b <= sol.hard_core_radius)
        throw std::invalid_argument("jastrow: b must lie outside the hard core");
    if (b <= sol.a)
        throw std::invalid_argument("jastrow: b must exceed the scattering length");
    JastrowCutoff cut;
    cut.sol = sol;
    cut.b = b;
    cut.f0_b = sol.f0_at(b);
    if (!(cut.f0_b > 0.0)) throw std::runtime_error("jastrow: f0(b) not positive");
    return cut;
}

double JastrowCutoff::operator()(double r) const {
    if (r >= b) return 1.0;
    return std::clamp(sol.f0_at(r) / f0_b, 0.0, 1.0);
}

double JastrowCutoff::deriv(double r) const {
    if (r >= b) return 0.0;
    return sol.f0_deriv_at(r) / f0_b;
}

EtaIntegral eta_integral(const JastrowCutoff& cut) {
    const double rc = cut.sol.hard_core_radius;
    EtaIntegral out;
    out.bound = 4.0 * kPi / 3.0 * cut.sol.a * cut.b * cut.b;
    // Core ball contributes with eta = 1; quadrature on [rc, b].
    double core = 4.0 * kPi / 3.0 * rc * rc * rc;
    const int n = 40001;
    const double h = (cut.b - rc) / (n - 1);
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) {
        const double r = rc + i * h;
        const double fb = cut(r);
        f[static_cast<std::size_t>(i)] = (1.0 - fb * fb) * r * r;
    }
    out.value = core + 4.0 * kPi * simpson(f, h);
    if (out.value > out.bound * (1.0 + 1e-9) + 1e-15)
        throw std::logic_error("eta_integral: bound (4pi/3) a b^2 violated");
    return out;
}

XiIntegral xi_integral(const JastrowCutoff& cut, const RadialPotential& pot, double rel_tol) {
    if (cut.b <= cut.sol.a)
        throw std::domain_error("xi_integral: closed form singular for b <= a");
    const double rc = cut.sol.hard_core_radius;
    XiIntegral out;
    const double tail_beyond_b = pot.tail_integral_beyond(cut.b);
    out.closed_form = 4.0 * kPi * cut.sol.a / (1.0 - cut.sol.a / cut.b) + tail_beyond_b;

    const int n = 40001;
    const double h = (cut.b - rc) / (n - 1);
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) {
        double r = rc + i * h;
        // f_b' jumps at the core edge and at b; quadrature uses interior limits.
        if (i == 0) r += 1e-9 * h;
        if (i == n - 1) r -= 1e-9 * h;
        const double fb = cut(r);
        const double dfb = cut.deriv(r);
        f[static_cast<std::size_t>(i)] = (dfb * dfb + 0.5 * pot(r) * fb * fb) * r * r;
    }
    out.value = 4.0 * kPi * simpson(f, h) + 0.5 * tail_beyond_b;  // f_b = 1 past b

    // Equality with the closed form holds when v lives inside b.
    if (tail_beyond_b <= rel_tol * std::max(out.value, 1e-300)) {
        const double err = std::abs(out.value - out.closed_form);
        if (err > rel_tol * std::max(1.0, out.closed_form))
            throw std::logic_error("xi_integral: closed form mismatch beyond tolerance");
    }
    return out;
}

}  // namespace bosegas
