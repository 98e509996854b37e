#include "bosegas/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bosegas {

namespace {
constexpr double kPi = std::numbers::pi;
}  // namespace

FreeEnergyEstimate free_energy_estimate(const TrapParams& params, double a_v,
                                        Ensemble ensemble) {
    params.validate();
    if (a_v < 0.0) throw std::invalid_argument("free_energy_estimate: a_v must be >= 0");
    FreeEnergyEstimate est;
    const GrandCanonicalState gc = solve_mu0(params);
    const bool canonical_ok = ensemble == Ensemble::canonical && params.n_particles <= 10000;
    est.ensemble_used = canonical_ok ? Ensemble::canonical : Ensemble::grand_canonical;
    if (est.ensemble_used == Ensemble::canonical) {
        const ModeList levels = ModeList::harmonic(params.omega, gc.n_max);
        const CanonicalState cs = canonical_partition(levels, params.beta, params.n_particles);
        est.n0 = cs.n0;
        est.f0 = cs.free_energy;
    } else {
        est.n0 = gc.n0;
        est.f0 = gc.free_energy;
    }
    const double a_n = scaled_scattering_length(a_v, params);
    if (a_v > 0.0 && est.n0 > 0.0) {
        const RadialGrid grid = RadialGrid::for_problem(est.n0, a_n, params.omega);
        est.e_gp = gp_minimize(est.n0, a_n, params.omega, grid).energy;
    }
    est.f_total = est.f0 + est.e_gp;
    const double n = static_cast<double>(params.n_particles);
    est.f0_scale = est.f0 * params.beta / n;
    est.egp_scale = est.e_gp / (params.omega * n);
    return est;
}

ModelOneParticleDM model_density_matrix(const TrapParams& params, double a_v) {
    params.validate();
    (void)a_v;  // the GP orbital replaces phi_0 at the same weight for every a_v >= 0
    const GrandCanonicalState gc = solve_mu0(params);
    // Whole-spectrum occupations come from one ensemble so the trace is exact:
    // canonical recursion where it is affordable, grand canonical beyond.
    std::vector<double> level_occ(gc.level_occupations.size());
    if (params.n_particles <= 10000) {
        const ModeList levels = ModeList::harmonic(params.omega, gc.n_max);
        const CanonicalState cs = canonical_partition(levels, params.beta, params.n_particles);
        for (std::size_t l = 0; l < level_occ.size(); ++l)
            level_occ[l] = cs.occupations[l] * static_cast<double>(levels.degeneracies[l]);
    } else {
        level_occ = gc.level_occupations;
    }
    ModelOneParticleDM dm;
    dm.condensate_weight = level_occ[0];
    dm.excited_level_occupations.resize(level_occ.size() - 1);
    dm.excited_mode_occupations.resize(level_occ.size() - 1);
    dm.trace = dm.condensate_weight;
    for (std::size_t n = 1; n < level_occ.size(); ++n) {
        dm.excited_level_occupations[n - 1] = level_occ[n];
        dm.excited_mode_occupations[n - 1] =
            level_occ[n] / static_cast<double>(oscillator_degeneracy(static_cast<int>(n)));
        dm.trace += level_occ[n];
        dm.max_excited = std::max(dm.max_excited, dm.excited_mode_occupations[n - 1]);
    }
    dm.top_fraction = dm.condensate_weight / static_cast<double>(params.n_particles);
    return dm;
}

PositionProfile position_profile(const TrapParams& params, double a_v,
                                 const std::vector<double>& radii) {
    params.validate();
    const GrandCanonicalState gc = solve_mu0(params);
    const DensityProfile thermal = thermal_density(params, gc.mu, radii);

    PositionProfile prof;
    prof.radii = radii;
    prof.thermal = thermal.values;
    prof.condensate.assign(radii.size(), 0.0);
    prof.total.resize(radii.size());

    const double a_n = scaled_scattering_length(a_v, params);
    double tf_sq = 0.0;
    double cond_integral = gc.n0;
    if (gc.n0 > 0.0) {
        const RadialGrid grid = RadialGrid::for_problem(gc.n0, a_n, params.omega);
        const GPResult sol = gp_minimize(gc.n0, a_n, params.omega, grid);
        tf_sq = tf_edge_radius_sq(sol);
        const double h = grid.spacing();
        for (std::size_t i = 0; i < radii.size(); ++i) {
            const double r = radii[i];
            double val = 0.0;
            if (r < grid.r_max) {
                const double x = r / h;
                const std::size_t j = std::min(static_cast<std::size_t>(x), sol.phi.size() - 2);
                const double t = x - static_cast<double>(j);
                const double p = (1.0 - t) * sol.phi[j] + t * sol.phi[j + 1];
                val = p * p;
            }
            prof.condensate[i] = val;
        }
        // Quadrature of the condensate density over its own grid.
        double s = 0.0;
        for (std::size_t i = 1; i + 1 < sol.phi.size(); ++i) {
            const double r = grid.node(static_cast<int>(i));
            s += sol.phi[i] * sol.phi[i] * r * r;
        }
        cond_integral = 4.0 * kPi * s * h;
    }
    for (std::size_t i = 0; i < radii.size(); ++i)
        prof.total[i] = prof.thermal[i] + prof.condensate[i];
    prof.integral = thermal.integral + cond_integral;
    prof.tf_edge_radius_sq = tf_sq;
    return prof;
}

double radial_fourier(const RadialGrid& grid, const std::vector<double>& phi, double p) {
    // phi_hat(p) = (2 pi)^{-3/2} (4 pi / p) int phi(r) sin(p r) r dr
    const double h = grid.spacing();
    double s = 0.0;
    for (std::size_t i = 1; i + 1 < phi.size(); ++i) {
        const double r = grid.node(static_cast<int>(i));
        s += phi[i] * ((p > 1e-12) ? std::sin(p * r) / p : r) * r;
    }
    s *= h;
    return std::pow(2.0 * kPi, -1.5) * 4.0 * kPi * s;
}

MomentumProfile momentum_profile(const TrapParams& params, double a_v,
                                 const std::vector<double>& momenta) {
    params.validate();
    const GrandCanonicalState gc = solve_mu0(params);
    const double omega = params.omega;

    // Thermal part: n(p) = rho_th(2p/omega) (2/omega)^3 by the x <-> 2p/omega
    // symmetry of the oscillator.
    std::vector<double> scaled_radii(momenta.size());
    for (std::size_t i = 0; i < momenta.size(); ++i) scaled_radii[i] = 2.0 * momenta[i] / omega;
    const DensityProfile thermal_pos = thermal_density(params, gc.mu, scaled_radii);
    const double jac = 8.0 / (omega * omega * omega);

    MomentumProfile prof;
    prof.momenta = momenta;
    prof.thermal.resize(momenta.size());
    for (std::size_t i = 0; i < momenta.size(); ++i)
        prof.thermal[i] = thermal_pos.values[i] * jac;

    // Condensate part: squared radial Fourier transform of phi_GP.
    prof.condensate.assign(momenta.size(), 0.0);
    double cond_p2 = 0.0;  // int p^2 |phi_hat|^2 d^3p via the kinetic energy
    double cond_n = gc.n0;
    if (gc.n0 > 0.0) {
        const double a_n = scaled_scattering_length(a_v, params);
        const RadialGrid grid = RadialGrid::for_problem(gc.n0, a_n, omega);
        const GPResult sol = gp_minimize(gc.n0, a_n, omega, grid);
        for (std::size_t i = 0; i < momenta.size(); ++i) {
            const double amp = radial_fourier(grid, sol.phi, momenta[i]);
            prof.condensate[i] = amp * amp;
        }
        cond_p2 = sol.kinetic;  // int |grad phi|^2 = int p^2 |phi_hat|^2
    }
    prof.total.resize(momenta.size());
    for (std::size_t i = 0; i < momenta.size(); ++i)
        prof.total[i] = prof.thermal[i] + prof.condensate[i];
    prof.integral = thermal_pos.integral + cond_n;  // Parseval on each part

    // Width conventions (see header): maxwellian scale for the thermal cloud,
    // gaussian scale times sqrt(2) for the condensate peak.
    const double p2_th = thermal_mean_p_squared(gc);  // <p^2> per thermal particle
    prof.width_thermal = std::sqrt(2.0 * p2_th / 3.0);
    if (cond_n > 0.0) prof.width_condensate = std::sqrt(4.0 * (cond_p2 / cond_n) / 3.0);
    prof.width_ratio = (prof.width_thermal > 0.0)
                           ? prof.width_condensate / prof.width_thermal
                           : 0.0;
    return prof;
}

}  // namespace bosegas
