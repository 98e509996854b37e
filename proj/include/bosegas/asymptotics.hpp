#pragma once

// Assembly of the free-energy decomposition F ~ F0 + E_GP(N0, a_N, omega), the
// model one-particle density matrix, and position/momentum profiles of the
// trapped gas. These are asymptotic models of the large-N limit; no finite-N
// error bar is attached.

#include <string>
#include <vector>

#include "bosegas/gp.hpp"
#include "bosegas/idealgas.hpp"
#include "bosegas/params.hpp"

namespace bosegas {

enum class Ensemble { canonical, grand_canonical };

struct FreeEnergyEstimate {
    double f0 = 0.0;       // ideal-gas free energy
    double n0 = 0.0;       // condensate number used for the GP input
    double e_gp = 0.0;     // E_GP(N0, a_N, omega)
    double f_total = 0.0;  // f0 + e_gp
    // Per-particle scale diagnostics: f0 / (N/beta) and e_gp / (omega N).
    double f0_scale = 0.0;
    double egp_scale = 0.0;
    Ensemble ensemble_used = Ensemble::grand_canonical;
};

// N0 from the canonical recursion when N <= 1e4 (or on request), otherwise
// from the grand-canonical ensemble; E_GP from the GP solver.
FreeEnergyEstimate free_energy_estimate(const TrapParams& params, double a_v,
                                        Ensemble ensemble = Ensemble::canonical);

// Weighted orbital list for gamma ~ gamma_0 - N0 |phi_0><phi_0| + N0 |phi_GP><phi_GP|:
// the GP orbital carries N0, excited oscillator modes keep their occupations.
struct ModelOneParticleDM {
    double condensate_weight = 0.0;        // N0 on the GP orbital
    std::vector<double> excited_level_occupations;  // per level (summed over modes)
    std::vector<double> excited_mode_occupations;   // per single mode of each level
    double trace = 0.0;
    double top_fraction = 0.0;    // N0 / N
    double max_excited = 0.0;     // largest per-mode excited occupation
};
ModelOneParticleDM model_density_matrix(const TrapParams& params, double a_v);

// rho(r) = rho_thermal(r) + |phi_GP(r)|^2 on the given radii; the GP orbital
// is normalized to N0.
struct PositionProfile {
    std::vector<double> radii;
    std::vector<double> thermal;
    std::vector<double> condensate;
    std::vector<double> total;
    double integral = 0.0;       // quadrature of the total profile
    double tf_edge_radius_sq = 0.0;  // inverted-parabola edge of the condensate
};
PositionProfile position_profile(const TrapParams& params, double a_v,
                                 const std::vector<double>& radii);

// Momentum densities: thermal part by the oscillator x <-> 2p/omega symmetry
// (position density at 2p/omega times (2/omega)^3), condensate part as the
// squared radial Fourier transform of phi_GP. Width conventions: the thermal
// width is the maxwellian scale sqrt(2 <p_x^2>), the condensate width is
// sqrt(4 <p_x^2>) (equal to sqrt(omega) for the ideal gaussian), so the ratio
// is (beta omega)^{1/2} for the ideal gas at the nominal constant 1.
struct MomentumProfile {
    std::vector<double> momenta;
    std::vector<double> thermal;
    std::vector<double> condensate;
    std::vector<double> total;
    double integral = 0.0;
    double width_thermal = 0.0;
    double width_condensate = 0.0;
    double width_ratio = 0.0;  // condensate / thermal
};
MomentumProfile momentum_profile(const TrapParams& params, double a_v,
                                 const std::vector<double>& momenta);

// Radial Fourier transform phi_hat(p) of a radial function given on the GP
// grid, unitary convention.
double radial_fourier(const RadialGrid& grid, const std::vector<double>& phi, double p);

}  // namespace bosegas
