#pragma once

// Physical parameters and regime diagnostics for a Bose gas in an isotropic
// harmonic trap. Units throughout the library: hbar = 1, m = 1/2, k_B = 1,
// so the one-particle Hamiltonian reads h = -Laplace + omega^2 x^2 / 4 - (3/2) omega
// and the harmonic ground state energy is zero.

#include <stdexcept>

namespace bosegas {

inline constexpr double kZeta3 = 1.2020569031595942;  // zeta(3)
inline constexpr double kZeta2 = 1.6449340668482264;  // zeta(2) = pi^2/6
inline constexpr double kZeta4 = 1.0823232337111382;  // zeta(4) = pi^4/90

struct TrapParams {
    double omega = 1.0;       // trap frequency (energy units)
    double beta = 1.0;        // inverse temperature
    long long n_particles = 1;

    void validate() const {
        if (!(omega > 0.0)) throw std::invalid_argument("TrapParams: omega must be > 0");
        if (!(beta > 0.0)) throw std::invalid_argument("TrapParams: beta must be > 0");
        if (n_particles < 1) throw std::invalid_argument("TrapParams: n_particles must be >= 1");
    }
    double temperature() const { return 1.0 / beta; }
};

// a_v is the dimensionless scattering length of the unscaled potential v;
// a_N = a_v omega^{-1/2} N^{-1} is the scattering length of the scaled
// potential v_N(x) = omega N^2 v(omega^{1/2} N x).
struct ScatteringData {
    double a_v = 0.0;
    double a_n = 0.0;          // scattering length of v_N (length units)
    double gp_coupling = 0.0;  // g = N omega^{1/2} a_N; equals a_v identically
};

struct RegimeReport {
    double ell_osc = 0.0;           // omega^{-1/2}
    double ell_th = 0.0;            // beta^{1/2}
    double r_th = 0.0;              // omega^{-1} beta^{-1/2}
    double d_th = 0.0;              // N^{-1/3} r_th
    double thermo_parameter = 0.0;  // N (beta omega)^3
    double t_over_tc = 0.0;
    double scale_separation = 0.0;  // ell_osc / r_th = (beta omega)^{1/2}
    double density_ratio = 0.0;     // rho_th / rho_0 scale = (beta omega)^{3/2}
    bool bec_expected = false;      // N (beta omega)^3 > zeta(3)
};

double scaled_scattering_length(double a_v, const TrapParams& params);
ScatteringData make_scattering_data(double a_v, const TrapParams& params);
RegimeReport regime_report(const TrapParams& params);

}  // namespace bosegas
