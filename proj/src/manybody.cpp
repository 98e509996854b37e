#include "bosegas/manybody.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "bosegas/entropy.hpp"

namespace bosegas {

void ModeBasis::validate() const {
    if (energies.empty()) throw std::invalid_argument("ModeBasis: empty");
    for (std::size_t i = 0; i < energies.size(); ++i) {
        if (energies[i] < 0.0) throw std::invalid_argument("ModeBasis: negative energy");
        if (i > 0 && energies[i] < energies[i - 1])
            throw std::invalid_argument("ModeBasis: energies must be nondecreasing");
    }
}

ModeBasis ModeBasis::oscillator_1d(int m, double omega, bool shift_to_zero) {
    ModeBasis b;
    for (int n = 0; n < m; ++n)
        b.energies.push_back(omega * (n + (shift_to_zero ? 0.0 : 0.5)));
    return b;
}

double TwoBodyTensor::at(int i, int j, int k, int l) const {
    return v[static_cast<std::size_t>(((i * modes + j) * modes + k) * modes + l)];
}
double& TwoBodyTensor::at(int i, int j, int k, int l) {
    return v[static_cast<std::size_t>(((i * modes + j) * modes + k) * modes + l)];
}

void TwoBodyTensor::validate() const {
    if (v.size() != static_cast<std::size_t>(modes) * modes * modes * modes)
        throw std::invalid_argument("TwoBodyTensor: size mismatch");
    for (int i = 0; i < modes; ++i)
        for (int j = 0; j < modes; ++j)
            for (int k = 0; k < modes; ++k)
                for (int l = 0; l < modes; ++l) {
                    const double x = at(i, j, k, l);
                    if (std::abs(x - at(l, k, j, i)) > 1e-12 * (1.0 + std::abs(x)))
                        throw std::invalid_argument("TwoBodyTensor: hermiticity violated");
                    if (std::abs(x - at(j, i, k, l)) > 1e-12 * (1.0 + std::abs(x)) ||
                        std::abs(x - at(i, j, l, k)) > 1e-12 * (1.0 + std::abs(x)))
                        throw std::invalid_argument("TwoBodyTensor: exchange symmetry violated");
                }
}

namespace {
// 1D oscillator eigenfunctions for h = -d^2/dx^2 + omega^2 x^2 / 4 (units m=1/2):
// psi_n(x) with scale xi = x sqrt(omega/2), by the Hermite recurrence.
std::vector<std::vector<double>> oscillator_modes_on_grid(int m, double omega,
                                                          const std::vector<double>& x) {
    std::vector<std::vector<double>> psi(static_cast<std::size_t>(m),
                                         std::vector<double>(x.size()));
    const double s = std::sqrt(omega / 2.0);
    const double norm0 = std::sqrt(s) * std::pow(std::numbers::pi, -0.25);
    for (std::size_t p = 0; p < x.size(); ++p) {
        const double xi = s * x[p];
        double h_prev = 0.0, h_cur = norm0 * std::exp(-0.5 * xi * xi);
        for (int n = 0; n < m; ++n) {
            psi[static_cast<std::size_t>(n)][p] = h_cur;
            // Normalized recurrence: psi_{n+1} = sqrt(2/(n+1)) xi psi_n - sqrt(n/(n+1)) psi_{n-1}
            const double h_next = std::sqrt(2.0 / (n + 1.0)) * xi * h_cur -
                                  std::sqrt(static_cast<double>(n) / (n + 1.0)) * h_prev;
            h_prev = h_cur;
            h_cur = h_next;
        }
    }
    return psi;
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return x;
}
}  // namespace

TwoBodyTensor TwoBodyTensor::contact_1d(int m, double g, double omega) {
    if (g < 0.0) throw std::invalid_argument("contact_1d: g must be >= 0");
    const double half_width = (6.0 + 2.0 * std::sqrt(static_cast<double>(m))) /
                              std::sqrt(omega / 2.0);
    const int nx = 4001;
    const auto x = uniform_grid(-half_width, half_width, nx);
    const double h = x[1] - x[0];
    const auto psi = oscillator_modes_on_grid(m, omega, x);
    TwoBodyTensor t;
    t.modes = m;
    t.v.assign(static_cast<std::size_t>(m) * m * m * m, 0.0);
    t.nonnegative = true;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    double s = 0.0;
                    for (int p = 0; p < nx; ++p) {
                        const double w = (p == 0 || p == nx - 1) ? 0.5 : 1.0;
                        s += w * psi[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)] *
                             psi[static_cast<std::size_t>(j)][static_cast<std::size_t>(p)] *
                             psi[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)] *
                             psi[static_cast<std::size_t>(l)][static_cast<std::size_t>(p)];
                    }
                    t.at(i, j, k, l) = g * s * h;
                }
    return t;
}

TwoBodyTensor TwoBodyTensor::gaussian_1d(int m, double g, double range, double omega) {
    if (g < 0.0) throw std::invalid_argument("gaussian_1d: g must be >= 0");
    if (range <= 0.0) throw std::invalid_argument("gaussian_1d: range must be > 0");
    const double half_width = (6.0 + 2.0 * std::sqrt(static_cast<double>(m))) /
                              std::sqrt(omega / 2.0);
    const int nx = 401;
    const auto x = uniform_grid(-half_width, half_width, nx);
    const double h = x[1] - x[0];
    const auto psi = oscillator_modes_on_grid(m, omega, x);
    // B_{(il)}(x) = psi_i(x) psi_l(x); v_{ijkl} = g <B_il | K | B_jk> with a
    // positive gaussian kernel, so the assembled operator is nonnegative.
    TwoBodyTensor t;
    t.modes = m;
    t.v.assign(static_cast<std::size_t>(m) * m * m * m, 0.0);
    t.nonnegative = true;
    Eigen::MatrixXd kernel(nx, nx);
    for (int p = 0; p < nx; ++p)
        for (int q = 0; q < nx; ++q) {
            const double d = (x[static_cast<std::size_t>(p)] - x[static_cast<std::size_t>(q)]) /
                             range;
            kernel(p, q) = std::exp(-d * d);
        }
    Eigen::MatrixXd b(m * m, nx);
    for (int i = 0; i < m; ++i)
        for (int l = 0; l < m; ++l)
            for (int p = 0; p < nx; ++p) {
                double w = (p == 0 || p == nx - 1) ? 0.5 : 1.0;
                b(i * m + l, p) = std::sqrt(w) *
                                  psi[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)] *
                                  psi[static_cast<std::size_t>(l)][static_cast<std::size_t>(p)];
            }
    // sqrt(w) on both factors makes the trapezoid weights appear once per axis.
    const Eigen::MatrixXd contracted = b * kernel * b.transpose() * (g * h * h);
    // Symmetrized over i <-> j (equivalently k <-> l); the operator is
    // unchanged since a+_i a+_j commute.
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    t.at(i, j, k, l) = 0.5 * (contracted(i * m + l, j * m + k) +
                                              contracted(j * m + l, i * m + k));
    return t;
}

SectorBasis SectorBasis::build(int modes, long long n_particles) {
    if (modes < 1 || n_particles < 0) throw std::invalid_argument("SectorBasis: bad arguments");
    SectorBasis b;
    b.modes = modes;
    b.n_particles = n_particles;
    std::vector<int> occ(static_cast<std::size_t>(modes), 0);
    // Lexicographic enumeration by recursion on the first mode.
    struct Rec {
        int modes;
        std::vector<std::vector<int>>& out;
        std::vector<int>& occ;
        void go(int mode, long long left) {
            if (mode == modes - 1) {
                occ[static_cast<std::size_t>(mode)] = static_cast<int>(left);
                out.push_back(occ);
                return;
            }
            for (long long c = left; c >= 0; --c) {
                occ[static_cast<std::size_t>(mode)] = static_cast<int>(c);
                go(mode + 1, left - c);
            }
        }
    };
    Rec rec{modes, b.states, occ};
    rec.go(0, n_particles);
    return b;
}

long long SectorBasis::index_of(const std::vector<int>& occ) const {
    // States are stored in descending lexicographic order.
    auto cmp = [](const std::vector<int>& a, const std::vector<int>& b) {
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    };
    auto it = std::lower_bound(states.begin(), states.end(), occ, cmp);
    if (it != states.end() && *it == occ)
        return static_cast<long long>(it - states.begin());
    return -1;
}

SectorProblem build_hamiltonian(const ModeBasis& modes, const TwoBodyTensor* v, long long n) {
    modes.validate();
    if (v) {
        v->validate();
        if (v->modes != modes.size())
            throw std::invalid_argument("build_hamiltonian: tensor/basis mode mismatch");
    }
    // Sector dimension C(N + M - 1, N), capped before enumerating anything.
    double dim_est = 1.0;
    for (long long k = 1; k <= n; ++k) {
        dim_est *= static_cast<double>(modes.size() - 1 + k) / static_cast<double>(k);
        if (dim_est > 2e4)
            throw std::runtime_error("build_hamiltonian: sector dimension exceeds 2e4");
    }
    SectorProblem prob;
    prob.modes = modes;
    prob.n = n;
    prob.basis = SectorBasis::build(modes.size(), n);
    const long long dim = prob.basis.dim();

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    const int m = modes.size();
    std::vector<int> occ;
    for (long long s = 0; s < dim; ++s) {
        const auto& st = prob.basis.states[static_cast<std::size_t>(s)];
        double diag = 0.0;
        for (int j = 0; j < m; ++j) diag += modes.energies[static_cast<std::size_t>(j)] * st[static_cast<std::size_t>(j)];
        h(s, s) += diag;
        if (!v) continue;
        for (int l = 0; l < m; ++l) {
            if (st[static_cast<std::size_t>(l)] == 0) continue;
            for (int k = 0; k < m; ++k) {
                occ = st;
                double amp = std::sqrt(static_cast<double>(occ[static_cast<std::size_t>(l)]));
                --occ[static_cast<std::size_t>(l)];
                if (occ[static_cast<std::size_t>(k)] == 0) continue;
                amp *= std::sqrt(static_cast<double>(occ[static_cast<std::size_t>(k)]));
                --occ[static_cast<std::size_t>(k)];
                for (int j = 0; j < m; ++j) {
                    for (int i = 0; i < m; ++i) {
                        const double coeff = v->at(i, j, k, l);
                        if (coeff == 0.0) continue;
                        auto occ2 = occ;
                        double amp2 = amp * std::sqrt(occ2[static_cast<std::size_t>(j)] + 1.0);
                        ++occ2[static_cast<std::size_t>(j)];
                        amp2 *= std::sqrt(occ2[static_cast<std::size_t>(i)] + 1.0);
                        ++occ2[static_cast<std::size_t>(i)];
                        const long long s2 = prob.basis.index_of(occ2);
                        if (s2 < 0) throw std::logic_error("build_hamiltonian: state escaped sector");
                        h(s2, s) += 0.5 * coeff * amp2;
                    }
                }
            }
        }
    }
    if (v) {
        const double asym = (h - h.transpose()).cwiseAbs().maxCoeff();
        if (asym > 1e-10 * (1.0 + h.cwiseAbs().maxCoeff()))
            throw std::logic_error("build_hamiltonian: assembled matrix not symmetric");
        h = 0.5 * (h + h.transpose());
    }
    prob.hamiltonian = std::move(h);
    return prob;
}

namespace {
Eigen::VectorXd gibbs_weights(const Eigen::VectorXd& ev, double beta, double mu,
                              long long n_shift, double* log_partition) {
    Eigen::VectorXd w(ev.size());
    const double shift = ev.minCoeff() - mu * static_cast<double>(n_shift);
    double z = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        w[i] = std::exp(-beta * (ev[i] - mu * static_cast<double>(n_shift) - shift));
        z += w[i];
    }
    w /= z;
    if (log_partition) *log_partition = std::log(z) - beta * shift;
    return w;
}

Eigen::MatrixXd one_rdm_from(const SectorProblem& prob, const Eigen::MatrixXd& vecs,
                             const Eigen::VectorXd& weights) {
    const int m = prob.modes.size();
    const long long dim = prob.basis.dim();
    Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(m, m);
    // <a+_j a_i> over the mixed state; diagonal first, then hops.
    for (long long s = 0; s < dim; ++s) {
        const auto& st = prob.basis.states[static_cast<std::size_t>(s)];
        double pop = 0.0;
        for (Eigen::Index k = 0; k < weights.size(); ++k)
            pop += weights[k] * vecs(s, k) * vecs(s, k);
        for (int j = 0; j < m; ++j) gamma(j, j) += pop * st[static_cast<std::size_t>(j)];
    }
    std::vector<int> occ;
    for (long long s = 0; s < dim; ++s) {
        const auto& st = prob.basis.states[static_cast<std::size_t>(s)];
        for (int i = 0; i < m; ++i) {
            if (st[static_cast<std::size_t>(i)] == 0) continue;
            for (int j = 0; j < m; ++j) {
                if (j == i) continue;
                occ = st;
                double amp = std::sqrt(static_cast<double>(occ[static_cast<std::size_t>(i)]));
                --occ[static_cast<std::size_t>(i)];
                amp *= std::sqrt(occ[static_cast<std::size_t>(j)] + 1.0);
                ++occ[static_cast<std::size_t>(j)];
                const long long s2 = prob.basis.index_of(occ);
                if (s2 < 0) continue;
                double val = 0.0;
                for (Eigen::Index k = 0; k < weights.size(); ++k)
                    val += weights[k] * vecs(s2, k) * vecs(s, k);
                gamma(j, i) += amp * val;  // <a+_j a_i> with the hop i -> j
            }
        }
    }
    return 0.5 * (gamma + gamma.transpose());
}
}  // namespace

ManyBodyGibbs gibbs(const SectorProblem& problem, double beta) {
    if (beta <= 0.0) throw std::invalid_argument("gibbs: beta must be > 0");
    ManyBodyGibbs g;
    g.n = problem.n;
    g.beta = beta;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(problem.hamiltonian);
    g.eigenvalues = es.eigenvalues();
    g.eigenvectors = es.eigenvectors();
    double log_z = 0.0;
    g.weights = gibbs_weights(g.eigenvalues, beta, 0.0, 0, &log_z);
    g.free_energy = -log_z / beta;
    g.entropy = 0.0;
    for (Eigen::Index i = 0; i < g.weights.size(); ++i)
        if (g.weights[i] > 0.0) g.entropy -= g.weights[i] * std::log(g.weights[i]);
    g.one_rdm = one_rdm_from(problem, g.eigenvectors, g.weights);
    return g;
}

double free_energy_functional(const SectorProblem& problem, const Eigen::MatrixXd& state,
                              double beta) {
    if (state.rows() != problem.basis.dim() || state.cols() != problem.basis.dim())
        throw std::invalid_argument("free_energy_functional: state dimension mismatch");
    if (std::abs(state.trace() - 1.0) > 1e-9)
        throw std::invalid_argument("free_energy_functional: state not normalized");
    const double energy = (problem.hamiltonian * state).trace();
    return energy - vn_entropy(state) / beta;
}

double vn_entropy(const Eigen::MatrixXd& density) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(density, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double p = es.eigenvalues()[i];
        if (p > 1e-300) s -= p * std::log(p);
    }
    return s;
}

SandwichReport theorem_sandwich(const ModeBasis& modes, const TwoBodyTensor& v, long long n,
                                double beta) {
    if (!v.nonnegative)
        throw std::invalid_argument("theorem_sandwich: interaction not certified nonnegative");
    const SectorProblem ideal = build_hamiltonian(modes, nullptr, n);
    const SectorProblem full = build_hamiltonian(modes, &v, n);
    const ManyBodyGibbs g0 = gibbs(ideal, beta);
    const ManyBodyGibbs g = gibbs(full, beta);

    // tr[V Gamma_0] with Gamma_0 the ideal Gibbs state.
    const Eigen::MatrixXd vmat = full.hamiltonian - ideal.hamiltonian;
    Eigen::MatrixXd gamma0 = g0.eigenvectors * g0.weights.asDiagonal() *
                             g0.eigenvectors.transpose();
    SandwichReport rep;
    rep.f_ideal = g0.free_energy;
    rep.f_interacting = g.free_energy;
    rep.upper = g0.free_energy + (vmat * gamma0).trace();
    const double tol = 1e-10 * (1.0 + std::abs(rep.upper));
    rep.ok = (rep.f_ideal <= rep.f_interacting + tol) &&
             (rep.f_interacting <= rep.upper + tol);
    return rep;
}

BecDiagnostics bec_diagnostics(const ManyBodyGibbs& state) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(state.one_rdm);
    BecDiagnostics d;
    const Eigen::Index top = es.eigenvalues().size() - 1;
    d.top_fraction = es.eigenvalues()[top] / static_cast<double>(state.n);
    d.mode0_overlap = es.eigenvectors()(0, top) * es.eigenvectors()(0, top);
    return d;
}

EntropyInequalityReport entropy_inequality_check(const ManyBodyGibbs& state) {
    EntropyInequalityReport rep;
    rep.state_entropy = state.entropy;
    rep.bose_bound = bose_entropy(SpectralOperator::from_matrix(state.one_rdm));
    rep.ok = rep.state_entropy <= rep.bose_bound + 1e-9 * (1.0 + std::abs(rep.bose_bound));
    return rep;
}

FockGibbs fock_gibbs(const ModeBasis& modes, const TwoBodyTensor* v, double beta, double mu,
                     long long n_max_sector) {
    modes.validate();
    FockGibbs f;
    f.beta = beta;
    f.mu = mu;
    std::vector<SectorProblem> problems;
    std::vector<double> log_z(static_cast<std::size_t>(n_max_sector) + 1);
    problems.reserve(static_cast<std::size_t>(n_max_sector) + 1);
    for (long long n = 0; n <= n_max_sector; ++n) {
        problems.push_back(build_hamiltonian(modes, v, n));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(problems.back().hamiltonian);
        f.sector_eigenvalues.push_back(es.eigenvalues());
        f.sector_eigenvectors.push_back(es.eigenvectors());
        // log sum over the sector of e^{-beta (E - mu n)}
        double m = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            m = std::min(m, es.eigenvalues()[i]);
        double z = 0.0;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            z += std::exp(-beta * (es.eigenvalues()[i] - m));
        log_z[static_cast<std::size_t>(n)] =
            -beta * (m - mu * static_cast<double>(n)) + std::log(z);
    }
    double lz_max = log_z[0];
    for (double x : log_z) lz_max = std::max(lz_max, x);
    double z_total = 0.0;
    for (double x : log_z) z_total += std::exp(x - lz_max);
    const double log_z_total = lz_max + std::log(z_total);

    const int m_modes = modes.size();
    f.one_rdm = Eigen::MatrixXd::Zero(m_modes, m_modes);
    for (long long n = 0; n <= n_max_sector; ++n) {
        const auto& ev = f.sector_eigenvalues[static_cast<std::size_t>(n)];
        Eigen::VectorXd w(ev.size());
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            w[i] = std::exp(-beta * (ev[i] - mu * static_cast<double>(n)) - log_z_total);
            if (w[i] > 0.0) f.entropy -= w[i] * std::log(w[i]);
            f.mean_n += w[i] * static_cast<double>(n);
        }
        f.sector_weights.push_back(w);
        const double sector_mass = w.sum();
        if (sector_mass > 0.0) {
            Eigen::VectorXd wn = w / sector_mass;
            f.one_rdm += sector_mass *
                         one_rdm_from(problems[static_cast<std::size_t>(n)],
                                      f.sector_eigenvectors[static_cast<std::size_t>(n)], wn);
        }
    }
    return f;
}

Eigen::MatrixXd reduce_to_modes(const SectorProblem& problem, const ManyBodyGibbs& state,
                                const std::vector<int>& keep) {
    // Basis for the kept subsystem: occupation patterns of the kept modes with
    // 0..n particles.
    const int mk = static_cast<int>(keep.size());
    std::map<std::vector<int>, long long> sub_index;
    std::vector<std::vector<int>> sub_states;
    for (const auto& st : problem.basis.states) {
        std::vector<int> sub(static_cast<std::size_t>(mk));
        for (int i = 0; i < mk; ++i)
            sub[static_cast<std::size_t>(i)] = st[static_cast<std::size_t>(keep[static_cast<std::size_t>(i)])];
        if (!sub_index.contains(sub)) {
            sub_index.emplace(sub, static_cast<long long>(sub_states.size()));
            sub_states.push_back(sub);
        }
    }
    const long long dk = static_cast<long long>(sub_states.size());
    const long long dim = problem.basis.dim();
    if (dim > 4096)
        throw std::runtime_error("reduce_to_modes: sector too large for a dense state");

    // Full Gamma in the occupation basis, then the partial trace: rows/cols
    // collapse when the complementary occupations agree.
    Eigen::MatrixXd gamma = state.eigenvectors * state.weights.asDiagonal() *
                            state.eigenvectors.transpose();
    std::vector<int> comp;
    for (int j = 0; j < problem.basis.modes; ++j)
        if (std::find(keep.begin(), keep.end(), j) == keep.end()) comp.push_back(j);

    auto comp_of = [&](const std::vector<int>& st) {
        std::vector<int> c(comp.size());
        for (std::size_t i = 0; i < comp.size(); ++i)
            c[i] = st[static_cast<std::size_t>(comp[i])];
        return c;
    };
    auto sub_of = [&](const std::vector<int>& st) {
        std::vector<int> s(static_cast<std::size_t>(mk));
        for (int i = 0; i < mk; ++i)
            s[static_cast<std::size_t>(i)] = st[static_cast<std::size_t>(keep[static_cast<std::size_t>(i)])];
        return s;
    };

    Eigen::MatrixXd reduced = Eigen::MatrixXd::Zero(dk, dk);
    for (long long s1 = 0; s1 < dim; ++s1) {
        const auto c1 = comp_of(problem.basis.states[static_cast<std::size_t>(s1)]);
        const auto k1 = sub_index.at(sub_of(problem.basis.states[static_cast<std::size_t>(s1)]));
        for (long long s2 = 0; s2 < dim; ++s2) {
            const auto& st2 = problem.basis.states[static_cast<std::size_t>(s2)];
            if (comp_of(st2) != c1) continue;
            const auto k2 = sub_index.at(sub_of(st2));
            reduced(k1, k2) += gamma(s1, s2);
        }
    }
    return reduced;
}

}  // namespace bosegas
