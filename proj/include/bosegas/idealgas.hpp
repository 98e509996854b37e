#pragma once

// Ideal Bose gas in the 3D harmonic trap: grand-canonical and canonical
// ensembles, thermal density profiles, and the canonical-vs-grand-canonical
// comparison suite (free-energy sandwich, occupation monotonicity, density
// comparisons, moment bounds, trace-norm closeness).

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bosegas/params.hpp"

namespace bosegas {

struct ModeList;

// Degeneracy of the oscillator level omega*n.
inline long long oscillator_degeneracy(int n) {
    return static_cast<long long>(n + 1) * (n + 2) / 2;
}

struct OscillatorSpectrum {
    double omega = 1.0;
    int n_max = 0;
    double energy(int n) const { return omega * n; }
    long long degeneracy(int n) const { return oscillator_degeneracy(n); }
    ModeList levels() const;
};

// Smallest cutoff such that the Bose occupation of level n_max (at mu -> 0-)
// stays below tol * N.
int adaptive_level_cutoff(const TrapParams& params, double tol = 1e-12);

double critical_temperature(const TrapParams& params);  // omega (N / zeta(3))^{1/3}
double critical_temperature(double omega, double n);     // fractional N allowed
// Finite-N comparison point Tc (1 - zeta(2)/(2 zeta(3)^{2/3}) N^{-1/3}).
double critical_temperature_finite(const TrapParams& params);

// Solves (T/Tc)^3 * Li_3(e^{ -eta }) = zeta(3) for eta > 0 (t = 1 gives 0).
double eta_above_tc(double t_over_tc);

struct GrandCanonicalState {
    double mu = 0.0;  // chemical potential, < 0 (ground level energy is 0)
    double beta = 0.0;
    double omega = 0.0;
    int n_max = 0;
    std::vector<double> level_occupations;  // g(n) / (e^{beta(omega n - mu)} - 1)
    double n0 = 0.0;
    double n_th = 0.0;
    double free_energy = 0.0;  // (1/beta) sum g(n) ln(1 - e^{beta(mu - omega n)}) + mu N
};

// Finds mu0 < 0 with sum of occupations = N by bisection (the occupation sum
// is strictly increasing in mu). n_max < 0 selects the adaptive cutoff.
GrandCanonicalState solve_mu0(const TrapParams& params, int n_max = -1);

// A finite one-particle spectrum: energy levels with (possibly > 1) degeneracies.
struct ModeList {
    std::vector<double> energies;      // strictly increasing level energies
    std::vector<long long> degeneracies;

    static ModeList harmonic(double omega, int n_max);
    static ModeList from_modes(std::vector<double> mode_energies);  // unit degeneracies
    long long total_modes() const;
    void validate() const;
};

struct CanonicalState {
    ModeList modes;
    double beta = 0.0;
    long long n = 0;
    std::vector<double> log_z;       // ln Z(0..N)
    std::vector<double> occupations; // per single mode of each level
    double free_energy = 0.0;        // -ln Z(N) / beta
    double n0 = 0.0;                 // occupation of one lowest mode
};

// Z(k) = (1/k) sum_{m=1}^{k} z(m beta) Z(k-m), z(s) = sum_j e^{-s E_j}, in the
// log domain. Occupations via <n_j>_N = sum_m e^{-m beta E_j} Z(N-m)/Z(N).
CanonicalState canonical_partition(const ModeList& modes, double beta, long long n);

// P(n_j = m)_N = e^{-m beta E_j} Z_excl_j(N - m) / Z(N) for one mode of the
// given level, with the leave-one-out partition from the reverse recursion.
std::vector<double> mode_occupation_distribution(const CanonicalState& state,
                                                 std::size_t level_index);

// <f(n_j)>_N for a single mode of the given level.
double canonical_moment(const CanonicalState& state, std::size_t level_index,
                        const std::function<double(long long)>& f);

// <n_i n_j>_N for single modes of two distinct levels (or <n(n-1)> within one
// level when i == j), via the leave-two-out partition.
double canonical_pair_moment(const CanonicalState& state, std::size_t level_i,
                             std::size_t level_j);

// Grand-canonical ensemble over the same finite spectrum, mu < min energy.
struct FiniteGrandCanonical {
    double mu = 0.0;
    double beta = 0.0;
    std::vector<double> occupations;  // per single mode of each level
    double n_mean = 0.0;
    double variance = 0.0;            // Wick: sum g n (1 + n)
    double fourth_central = 0.0;      // from per-mode cumulants
    double free_energy = 0.0;         // -ln Z_gc / beta + mu N
};
FiniteGrandCanonical finite_grand_canonical(const ModeList& modes, double beta, double n_target);

// Thermal (excited-state) density of the trapped ideal gas at chemical
// potential mu < 0 through the closed-form harmonic heat kernel with the
// condensate term subtracted.
struct DensityProfile {
    std::vector<double> radii;
    std::vector<double> values;
    double integral = 0.0;       // quadrature of the full radial profile
    double sup_value = 0.0;
    double sup_scaled = 0.0;     // sup rho * beta^{3/2}
};
DensityProfile thermal_density(const TrapParams& params, double mu,
                               const std::vector<double>& radii);

// Diagonal heat kernel of h = -Lap + omega^2 r^2/4 - (3/2) omega at time t.
double harmonic_heat_kernel_diag(double omega, double t, double r);

// Mean squared momentum per thermal particle (total over the three axes).
double thermal_mean_p_squared(const GrandCanonicalState& gc);

struct InequalityCheck {
    std::string inequality;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs for <=, lhs - rhs for >=
    bool ok = true;
    std::string inputs;
};

struct AppendixAReport {
    std::vector<InequalityCheck> checks;  // only failures are stored unless keep_all
    long long checks_run = 0;
    long long violations = 0;
    bool all_ok() const { return violations == 0; }
};

// Runs, for every N in [n_lo, n_hi]: free-energy convexity, per-mode occupation
// monotonicity, the free-energy sandwich with lambda weights, the canonical vs
// grand-canonical density comparison (modes and pairs), the fourth-moment and
// variance bounds, the 1-RDM trace-norm closeness chain, and the probability
// mass bound P(N >= Nbar) >= 1.8/40.
AppendixAReport verify_appendix_a(const ModeList& modes, double beta, long long n_lo,
                                  long long n_hi, bool check_pairs = true,
                                  bool keep_all = false);

}  // namespace bosegas
