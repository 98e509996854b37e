#pragma once

// Exact diagonalization on truncated bosonic Fock spaces: occupation-number
// sector bases, interacting Hamiltonians, canonical Gibbs states, free
// energies, one-particle density matrices, and the variational-structure
// checks they support.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace bosegas {

struct ModeBasis {
    std::vector<double> energies;  // nondecreasing, >= 0

    int size() const { return static_cast<int>(energies.size()); }
    void validate() const;
    // First m eigenvalues of the 1D oscillator with frequency omega (units
    // m = 1/2): omega (n + 1/2), shifted so the lowest is zero when shift_to_zero.
    static ModeBasis oscillator_1d(int m, double omega = 1.0, bool shift_to_zero = true);
};

// Two-body coefficients v_{ijkl} for (1/2) sum v_{ijkl} a+_i a+_j a_k a_l
// (real symmetric case).
struct TwoBodyTensor {
    int modes = 0;
    std::vector<double> v;  // modes^4, index ((i*M + j)*M + k)*M + l
    bool nonnegative = false;  // defines a nonnegative operator (generator-certified)

    double at(int i, int j, int k, int l) const;
    double& at(int i, int j, int k, int l);
    void validate() const;  // hermiticity + bosonic exchange symmetry

    // Contact interaction g * delta(x-y) in the 1D oscillator basis.
    static TwoBodyTensor contact_1d(int m, double g, double omega = 1.0);
    // Gaussian interaction g * exp(-(x-y)^2 / range^2) in the same basis.
    static TwoBodyTensor gaussian_1d(int m, double g, double range, double omega = 1.0);
};

// Occupation-number basis of the N-particle sector over M modes, lexicographic.
struct SectorBasis {
    int modes = 0;
    long long n_particles = 0;
    std::vector<std::vector<int>> states;

    long long dim() const { return static_cast<long long>(states.size()); }
    long long index_of(const std::vector<int>& occ) const;  // -1 if absent
    static SectorBasis build(int modes, long long n_particles);
};

struct SectorProblem {
    ModeBasis modes;
    long long n = 0;
    SectorBasis basis;
    Eigen::MatrixXd hamiltonian;
};

// Sector Hamiltonian (one-body diagonal + two-body); v may be null for the
// ideal gas. Sector dimension is capped at 2e4.
SectorProblem build_hamiltonian(const ModeBasis& modes, const TwoBodyTensor* v, long long n);

struct ManyBodyGibbs {
    long long n = 0;
    double beta = 0.0;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
    Eigen::VectorXd weights;  // Gibbs weights, sum to 1
    double free_energy = 0.0;
    double entropy = 0.0;      // -tr Gamma ln Gamma
    Eigen::MatrixXd one_rdm;   // gamma_{ij} = <a+_j a_i>, trace N
};

ManyBodyGibbs gibbs(const SectorProblem& problem, double beta);

// F(Gamma) = tr[H Gamma] - (1/beta) S(Gamma) for a density matrix on the sector.
double free_energy_functional(const SectorProblem& problem, const Eigen::MatrixXd& state,
                              double beta);

struct SandwichReport {
    double f_ideal = 0.0;
    double f_interacting = 0.0;
    double upper = 0.0;  // f_ideal + tr[V Gamma_0]
    bool ok = true;
};
// F_0 <= F <= F_0 + tr[V Gamma_0] for nonnegative interactions.
SandwichReport theorem_sandwich(const ModeBasis& modes, const TwoBodyTensor& v, long long n,
                                double beta);

struct BecDiagnostics {
    double top_fraction = 0.0;  // largest 1-RDM eigenvalue / N
    double mode0_overlap = 0.0; // |<top eigenvector | mode 0>|^2
};
BecDiagnostics bec_diagnostics(const ManyBodyGibbs& state);

struct EntropyInequalityReport {
    double state_entropy = 0.0;  // S(Gamma)
    double bose_bound = 0.0;     // s(gamma) from the 1-RDM
    bool ok = true;
};
EntropyInequalityReport entropy_inequality_check(const ManyBodyGibbs& state);

// Grand-canonical-style Gibbs state of H - mu Nhat on sectors 0..n_max_sector
// (quasi-free when v = 0 and the sector cutoff is saturated).
struct FockGibbs {
    double beta = 0.0;
    double mu = 0.0;
    std::vector<Eigen::VectorXd> sector_eigenvalues;
    std::vector<Eigen::MatrixXd> sector_eigenvectors;
    std::vector<Eigen::VectorXd> sector_weights;  // joint weights, all sum to 1
    double entropy = 0.0;
    double mean_n = 0.0;
    Eigen::MatrixXd one_rdm;
};
FockGibbs fock_gibbs(const ModeBasis& modes, const TwoBodyTensor* v, double beta, double mu,
                     long long n_max_sector);

// Reduced density matrix of the mode subset `keep` for a sector Gibbs state,
// in the occupation basis of the kept modes (sectors 0..n mixed).
Eigen::MatrixXd reduce_to_modes(const SectorProblem& problem, const ManyBodyGibbs& state,
                                const std::vector<int>& keep);

// von Neumann entropy of a density matrix.
double vn_entropy(const Eigen::MatrixXd& density);

}  // namespace bosegas
