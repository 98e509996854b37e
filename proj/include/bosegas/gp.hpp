#pragma once

// Gross-Pitaevskii ground states on a radial grid. The functional, with the
// trap of params.hpp and scattering length a, is
//   E[phi] = int |grad phi|^2 + (omega^2 x^2/4 - (3/2) omega) |phi|^2 + 4 pi a |phi|^4
// minimized over ||phi||_2^2 = N. The radial reduction uses U(r) = sqrt(4 pi) r phi(r)
// with Dirichlet ends.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bosegas {

struct RadialGrid {
    double r_max = 0.0;
    int n_points = 0;  // number of intervals; nodes are 0..n_points

    double spacing() const { return r_max / n_points; }
    double node(int i) const { return spacing() * i; }
    void validate() const;

    // r_max = 8 max(ell_osc, TF radius estimate) for the problem (N, a, omega).
    static RadialGrid for_problem(double n_particles, double a, double omega,
                                  int n_points = 4096);
};

struct GPResult {
    RadialGrid grid;
    std::vector<double> u;    // U(r_i), int U^2 dr = N
    std::vector<double> phi;  // phi(r_i), phi(0) by parabolic extrapolation
    double n_particles = 0.0;
    double a = 0.0;
    double omega = 0.0;
    double energy = 0.0;
    double mu = 0.0;  // E/N + interaction/N
    double kinetic = 0.0;
    double potential = 0.0;
    double interaction = 0.0;  // 4 pi a int |phi|^4
    double residual = 0.0;     // sup-norm of the projected gradient, scaled
    int iterations = 0;
    bool converged = false;
};

// Thrown when the flow hits the iteration cap; carries the best iterate.
struct GPIterationLimit : std::runtime_error {
    GPResult best;
    explicit GPIterationLimit(GPResult b)
        : std::runtime_error("gp_minimize: iteration limit before convergence (residual " +
                             std::to_string(b.residual) + ")"),
          best(std::move(b)) {}
};

// Discrete energy of a radial wavefunction given by phi on the grid nodes
// (the same discretization the solver minimizes).
double gp_energy(const RadialGrid& grid, const std::vector<double>& phi, double a,
                 double omega);

// Energy and exact discrete gradient in the U variable; used by the solver and
// by the finite-difference gradient tests.
double gp_energy_u(const RadialGrid& grid, const std::vector<double>& u, double a, double omega,
                   std::vector<double>* gradient = nullptr);

// Semi-implicit normalized gradient flow with energy backtracking, run
// directly at the given (N, a, omega) on the given grid.
GPResult gp_minimize_direct(double n_particles, double a, double omega, const RadialGrid& grid,
                            double tol = 1e-8, int max_iter = 200000);

// Public minimizer: rescales to the unit problem E(1, N omega^{1/2} a, 1) on the
// transformed grid and maps the minimizer back (the scaling is exact at the
// discrete level).
GPResult gp_minimize(double n_particles, double a, double omega, const RadialGrid& grid,
                     double tol = 1e-8, int max_iter = 200000);

// mu = E/N + interaction/N = dE/dN at the minimizer. check_fd runs the
// centered finite-difference consistency check at relative step 1e-3 and
// throws if they disagree beyond 1e-4 relative.
double gp_chemical_potential(const GPResult& result, bool check_fd = false);

// Thomas-Fermi oracle quantities for coupling g = N omega^{1/2} a.
double tf_chemical_potential(double n_particles, double a, double omega);  // mu~ (edge height)
double tf_energy(double n_particles, double a, double omega);  // (5/7) mu~ N - (3/2) omega N

struct CoercivityPoint {
    double m = 0.0;
    double lhs = 0.0;           // E(M) - E(N0) - mu(N0)(M - N0)
    double quartic = 0.0;       // 4 pi a int (rho_M - rho_N0)^2
    double explicit_bound = 0.0;  // 4 pi a (1/14pi)(3/7)^{5/2} w^3 |M-N0|^{7/2} / A^{3/2}
    bool ok = true;
};
struct CoercivityReport {
    std::vector<CoercivityPoint> points;
    std::vector<double> failed_m;  // ladder points whose solve did not converge
    double midpoint_convexity_margin = 0.0;  // min over consecutive triples
    bool all_ok = true;
    bool partial() const { return !failed_m.empty(); }
};

// For each M: checks lhs >= quartic >= explicit_bound (GP convexity chain) and
// midpoint convexity of M -> E(M) across the ladder.
CoercivityReport gp_coercivity_check(double n0, double a, double omega,
                                     const std::vector<double>& m_values,
                                     const RadialGrid& grid, double tol = 1e-8);

// Squared TF edge radius from an inverted-parabola fit to the density over the
// region rho >= 0.25 rho(0).
double tf_edge_radius_sq(const GPResult& result);

}  // namespace bosegas
