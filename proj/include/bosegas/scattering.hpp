#pragma once

// Zero-energy scattering for radial repulsive potentials: s-wave ODE
// integration, the variational characterization of the scattering length,
// and the Jastrow cutoff function f_b with its integral bounds.

#include <cstddef>
#include <vector>

namespace bosegas {

enum class TailKind { none, gaussian, square_barrier, tabulated };

// v(r) = hard core for r < hard_core_radius, plus a nonnegative tail:
//   gaussian        amplitude * exp(-(r/width)^2)
//   square_barrier  amplitude for r < width (outside the core), else 0
//   tabulated       linear interpolation of (r_i, v_i), 0 beyond the last sample
struct RadialPotential {
    double hard_core_radius = 0.0;
    TailKind tail = TailKind::none;
    double amplitude = 0.0;
    double width = 0.0;
    std::vector<double> r_samples;
    std::vector<double> v_samples;
    double integrable_beyond = 0.0;  // radius past which the tail is integrable

    static RadialPotential hard_sphere(double radius);
    static RadialPotential gaussian(double v0, double width, double core_radius = 0.0);
    static RadialPotential square_barrier(double height, double range, double core_radius = 0.0);
    static RadialPotential tabulated(std::vector<double> r, std::vector<double> v,
                                     double core_radius = 0.0);

    // Tail value at r (the hard core is handled by boundary conditions, not here).
    double operator()(double r) const;
    // Integral of the tail over {|x| > r0}.
    double tail_integral_beyond(double r0) const;
    void validate() const;
};

struct ScatteringSolution {
    std::vector<double> grid;  // radial nodes, uniform, grid.front() = hard core radius (or 0)
    std::vector<double> u;     // u(r) = r f(r), normalized so f -> 1 at infinity
    std::vector<double> du;    // u'(r) on the same nodes
    double a = 0.0;            // scattering length from the tail fit
    double tail_fit_residual = 0.0;
    double hard_core_radius = 0.0;
    bool closed_form = false;  // hard-sphere-only shortcut, f0 = [1 - a/r]_+

    // Zero-energy solution f0(r); 0 inside a hard core, ~ 1 - a/r outside.
    double f0_at(double r) const;
    double f0_deriv_at(double r) const;
};

// Integrates u'' = (1/2) v u outward from u = 0, u' = 1 at the core radius
// (classic RK4, uniform step), then fits u ~ c (r - a) over the last decade
// of the grid. Requires r_max well beyond integrable_beyond and n_grid >= 1000.
ScatteringSolution solve_zero_energy(const RadialPotential& pot, double r_max, int n_grid);

// Minimizes int |grad phi|^2 + (1/2) v |phi|^2 over radial grid functions with
// phi(r_max) = 1 (conjugate gradient on the discrete quadratic form), then
// inverts the finite-domain boundary effect (value = a/(1 - a/r_max) when v is
// supported inside r_max). Returns an upper bound on the scattering length up
// to quadrature error; grids should place a node at the hard-core radius.
double variational_scattering_length(const RadialPotential& pot,
                                     const std::vector<double>& trial_grid);

// Discrete energy of an explicit radial trial function on the grid, divided by
// 4 pi. Used by tests to plug closed-form trials into the functional.
double scattering_functional(const RadialPotential& pot, const std::vector<double>& grid,
                             const std::vector<double>& phi);

struct JastrowCutoff {
    ScatteringSolution sol;
    double b = 0.0;
    double f0_b = 1.0;  // f0(b)

    double operator()(double r) const;  // f_b(r)
    double deriv(double r) const;       // f_b'(r)
};

// f_b(r) = f0(r)/f0(b) for r < b, 1 otherwise. Requires b outside the hard
// core and b > a (the cutoff sits above the scattering length).
JastrowCutoff jastrow(const ScatteringSolution& sol, double b);

// int_{R^3} eta_b with eta_b = 1 - f_b^2, by radial quadrature. The result is
// checked against the bound (4 pi / 3) a b^2, which pure hard cores saturate.
struct EtaIntegral {
    double value = 0.0;
    double bound = 0.0;  // (4 pi / 3) a b^2
};
EtaIntegral eta_integral(const JastrowCutoff& cut);

// int_{R^3} (|grad f_b|^2 + (1/2) v f_b^2) by quadrature, and the closed form
// 4 pi a / (1 - a/b) + int_{|x|>b} v. Equality is asserted when the potential
// is effectively supported inside b.
struct XiIntegral {
    double value = 0.0;
    double closed_form = 0.0;
};
XiIntegral xi_integral(const JastrowCutoff& cut, const RadialPotential& pot,
                       double rel_tol = 2e-5);

}  // namespace bosegas
