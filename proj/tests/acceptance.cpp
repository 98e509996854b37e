// Acceptance suite: one line per criterion, PASS/FAIL with timing; exit code
// equals the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bosegas/asymptotics.hpp"
#include "bosegas/entropy.hpp"
#include "bosegas/gp.hpp"
#include "bosegas/idealgas.hpp"
#include "bosegas/manybody.hpp"
#include "bosegas/params.hpp"
#include "bosegas/scattering.hpp"
#include "oracles.hpp"

using namespace bosegas;

namespace {
int failures = 0;

void criterion(int id, const std::string& name, double budget_s,
               const std::function<bool(std::string&)>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > budget_s) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    std::printf("%s criterion %2d: %-28s (%6.2f s%s)%s%s\n", ok ? "PASS" : "FAIL", id,
                name.c_str(), dt, budget_s > 0 ? "" : "", detail.empty() ? "" : " -- ",
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

// Fixed 20-case spectrum corpus: <= 6 modes, lowest energy 0, a few degenerate
// and equally-spaced cases plus seeded random ones.
std::vector<std::vector<double>> spectrum_corpus() {
    std::vector<std::vector<double>> corpus = {
        {0.0, 1.0},
        {0.0, 0.5, 1.0},
        {0.0, 1.0, 2.0, 3.0},
        {0.0, 0.0, 0.0},
        {0.0, 0.0, 1.0, 1.0},
        {0.0, 2.0},
        {0.0, 0.1, 0.2, 0.3, 0.4, 0.5},
    };
    std::mt19937_64 rng(20240);
    std::uniform_real_distribution<double> unif(0.05, 2.0);
    while (corpus.size() < 20) {
        const int m = 2 + static_cast<int>(rng() % 5);
        std::vector<double> sp{0.0};
        for (int j = 1; j < m; ++j) sp.push_back(unif(rng));
        corpus.push_back(sp);
    }
    return corpus;
}
}  // namespace

int main() {
    // 1. Condensate fraction at N = 1e4 from the canonical recursion, anchored
    //    at the finite-N critical temperature.
    criterion(1, "condensate fraction", 30.0, [](std::string& detail) {
        TrapParams p{1.0, 1.0, 10000};
        const double tc = critical_temperature_finite(p);
        bool ok = true;
        char buf[160];
        for (double t : {0.3, 0.5, 0.8}) {
            p.beta = 1.0 / (t * tc);
            const int n_max = adaptive_level_cutoff(p);
            const CanonicalState cs =
                canonical_partition(ModeList::harmonic(1.0, n_max), p.beta, 10000);
            const double frac = cs.n0 / 1e4;
            const double want = 1.0 - t * t * t;
            ok = ok && std::abs(frac - want) <= 0.05 * want;
            std::snprintf(buf, sizeof buf, "t=%.1f: %.4f vs %.4f; ", t, frac, want);
            detail += buf;
        }
        return ok;
    });

    // 2. Free-energy sandwich over harmonic spectra.
    criterion(2, "free-energy sandwich", 10.0, [](std::string&) {
        bool ok = true;
        for (double bw : {0.2, 0.5, 1.0}) {
            const AppendixAReport rep =
                verify_appendix_a(ModeList::harmonic(1.0, 20), bw, 1, 50, false);
            ok = ok && rep.all_ok();
        }
        return ok;
    });

    // 3. Prop. A convexity and monotonicity against the enumeration oracle.
    criterion(3, "convexity + monotonicity", 10.0, [](std::string& detail) {
        bool ok = true;
        long long cases = 0;
        for (const auto& sp : spectrum_corpus()) {
            const double beta = 1.0;
            std::vector<double> log_z(10);
            std::vector<std::vector<double>> occ(10);
            for (long long n = 0; n <= 9; ++n) {
                oracles::CanonicalEnumeration e{sp, beta, n};
                e.run();
                log_z[static_cast<std::size_t>(n)] = std::log(e.z);
                occ[static_cast<std::size_t>(n)] = e.occupations;
            }
            const ModeList list = ModeList::from_modes(sp);
            for (long long n = 1; n <= 8; ++n) {
                // Convexity of F = -ln Z.
                ok = ok && (log_z[static_cast<std::size_t>(n + 1)] +
                                log_z[static_cast<std::size_t>(n - 1)] <=
                            2.0 * log_z[static_cast<std::size_t>(n)] + 1e-12);
                // Monotone per-mode occupations.
                for (std::size_t j = 0; j < sp.size(); ++j)
                    ok = ok && occ[static_cast<std::size_t>(n)][j] >=
                                   occ[static_cast<std::size_t>(n - 1)][j] - 1e-12;
                // Library recursion against the oracle.
                const CanonicalState cs = canonical_partition(list, beta, n);
                ok = ok && std::abs(std::exp(cs.log_z.back()) - std::exp(log_z[static_cast<std::size_t>(n)])) <=
                               1e-12 * std::exp(log_z[static_cast<std::size_t>(n)]);
                ++cases;
            }
        }
        detail = std::to_string(cases) + " (spectrum, N) cases";
        return ok;
    });

    // 4. Canonical vs grand-canonical density comparison on the same corpus.
    criterion(4, "density comparison", 30.0, [](std::string& detail) {
        constexpr double c = 40.0 / 1.8;
        bool ok = true;
        long long checks = 0;
        for (const auto& sp : spectrum_corpus()) {
            const double beta = 1.0;
            const ModeList list = ModeList::from_modes(sp);
            for (long long n = 1; n <= 8; ++n) {
                oracles::CanonicalEnumeration e{sp, beta, n};
                e.run();
                const FiniteGrandCanonical gc =
                    finite_grand_canonical(list, beta, static_cast<double>(n));
                // Expand gc occupations back to modes.
                std::vector<double> gc_mode(sp.size());
                for (std::size_t j = 0; j < sp.size(); ++j) {
                    for (std::size_t l = 0; l < list.energies.size(); ++l)
                        if (list.energies[l] == sp[j]) gc_mode[j] = gc.occupations[l];
                }
                for (std::size_t j = 0; j < sp.size(); ++j) {
                    ok = ok && e.occupations[j] <= c * gc_mode[j] + 1e-12;
                    ++checks;
                    for (std::size_t i = 0; i < sp.size(); ++i) {
                        const double pair = (i == j) ? e.second_factorial[j] : e.pair[i][j];
                        ok = ok && pair <= 4.0 * c * c * gc_mode[i] * gc_mode[j] + 1e-12;
                        ++checks;
                    }
                }
            }
        }
        detail = std::to_string(checks) + " inequalities";
        return ok;
    });

    // 5. Fourth-moment lemma with exact grand-canonical sums.
    criterion(5, "fourth-moment lemma", 5.0, [](std::string&) {
        std::mt19937_64 rng(5150);
        std::uniform_real_distribution<double> unif(0.02, 3.0);
        bool ok = true;
        for (int k = 0; k < 100; ++k) {
            const int m = 2 + static_cast<int>(rng() % 39);
            std::vector<double> sp{0.0};
            for (int j = 1; j < m; ++j) sp.push_back(unif(rng));
            const double n_target = 1.0 + static_cast<double>(rng() % 100);
            const FiniteGrandCanonical gc =
                finite_grand_canonical(ModeList::from_modes(sp), 1.0, n_target);
            ok = ok && gc.fourth_central <=
                           9.0 * gc.variance * gc.variance + gc.variance + 1e-9;
            ok = ok && gc.variance >= n_target - 1e-9;
        }
        return ok;
    });

    // 6. Relative-entropy coercivity and the trace-norm pipeline.
    criterion(6, "relative-entropy coercivity", 60.0, [](std::string& detail) {
        bool ok = true;
        std::mt19937_64 rng(606);
        std::uniform_real_distribution<double> unif(0.0, 100.0);
        double min_ratio = 1e300;
        for (int k = 0; k < 100000; ++k) {
            const double x = unif(rng), y = std::max(unif(rng), 1e-12);
            const double s = scalar_rel_entropy(x, y);
            if (x == y) continue;
            const double core = (x - y) * (x - y) / ((x + y) * (1.0 + y));
            ok = ok && s >= kScalarCoercivityC * core * (1.0 - 1e-9);
            min_ratio = std::min(min_ratio, s / core);
        }
        long long ops = 0, tn = 0;
        for (int k = 0; k < 1000; ++k) {
            const int d = 2 + static_cast<int>(rng() % 15);
            const SpectralOperator g = random_operator(d, 10.0, rng());
            SpectralOperator g0 = random_operator(d, 10.0, rng());
            g0.eigenvalues.array() += 1e-8;
            ok = ok && verify_lemma_coercivity(g, g0).ok;
            ++ops;
            const Eigen::MatrixXd p =
                random_projection(d, 1 + static_cast<int>(rng() % d), rng());
            const double lam = (0.5 + static_cast<double>(rng() % 8)) *
                               std::max(g0.eigenvalues.maxCoeff(), 1e-6);
            ok = ok && trace_norm_bound_check(g, g0, p, lam).ok;
            ++tn;
        }
        char buf[120];
        std::snprintf(buf, sizeof buf, "scalar min ratio %.5f (C=2/27=%.5f), %lld op pairs, %lld pipelines",
                      min_ratio, kScalarCoercivityC, ops, tn);
        detail = buf;
        return ok;
    });

    // 7. GP solver: scaling, gradient, virial, TF, coercivity chain.
    criterion(7, "GP solver", 120.0, [](std::string& detail) {
        bool ok = true;
        std::mt19937_64 rng(707);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        // Scaling identity on 5 random triples.
        for (int k = 0; k < 5; ++k) {
            const double n = 10.0 + 190.0 * unif(rng);
            const double omega = 0.5 + 2.5 * unif(rng);
            const double g = 0.5 + 19.5 * unif(rng);
            const double a = g / (n * std::sqrt(omega));
            const RadialGrid grid = RadialGrid::for_problem(n, a, omega, 2048);
            const GPResult w = gp_minimize(n, a, omega, grid, 1e-9);
            const GPResult d = gp_minimize_direct(n, a, omega, grid, 1e-9);
            ok = ok && std::abs(w.energy - d.energy) <= 1e-6 * std::abs(d.energy);
        }
        if (!ok) detail += "scaling identity failed; ";

        // Gradient vs centered finite differences.
        {
            RadialGrid grid{10.0, 512};
            std::vector<double> u(513, 0.0);
            for (std::size_t i = 1; i + 1 < u.size(); ++i) {
                const double r = grid.node(static_cast<int>(i));
                u[i] = r * std::exp(-0.3 * r * r) * (1.0 + 0.2 * unif(rng));
            }
            std::vector<double> grad;
            gp_energy_u(grid, u, 0.7, 1.1, &grad);
            bool gok = true;
            for (int k = 0; k < 20; ++k) {
                const std::size_t i = 1 + rng() % 511;
                const double h = 1e-6;
                auto up = u, dn = u;
                up[i] += h;
                dn[i] -= h;
                const double fd = (gp_energy_u(grid, up, 0.7, 1.1) -
                                   gp_energy_u(grid, dn, 0.7, 1.1)) / (2.0 * h);
                gok = gok && std::abs(grad[i] - fd) <= 1e-6 * std::max(1.0, std::abs(fd));
            }
            ok = ok && gok;
            if (!gok) detail += "gradient check failed; ";
        }

        // Virial residual and TF agreement at g = 1e4.
        {
            const RadialGrid grid = RadialGrid::for_problem(1.0, 1e4, 1.0, 8192);
            const GPResult res = gp_minimize(1.0, 1e4, 1.0, grid, 1e-9);
            const double v_harm = res.potential + 1.5;
            const double virial = std::abs(2.0 * res.kinetic - 2.0 * v_harm + 3.0 * res.interaction) /
                                  std::max({res.kinetic, v_harm, res.interaction});
            const double tf_rel = std::abs(res.energy - tf_energy(1.0, 1e4, 1.0)) /
                                  std::abs(tf_energy(1.0, 1e4, 1.0));
            ok = ok && virial < 1e-3 && tf_rel < 0.02;
            char buf[80];
            std::snprintf(buf, sizeof buf, "virial %.1e, TF rel %.4f; ", virial, tf_rel);
            detail += buf;
        }

        // Coercivity ladder around N0 = 100 (a_v = 1, omega = 1).
        {
            const double a = 0.01;
            const RadialGrid grid = RadialGrid::for_problem(200.0, a, 1.0, 2048);
            const CoercivityReport rep =
                gp_coercivity_check(100.0, a, 1.0, {50.0, 75.0, 125.0, 150.0, 200.0}, grid, 1e-9);
            ok = ok && rep.all_ok;
            if (!rep.all_ok) detail += "coercivity chain failed; ";
        }
        return ok;
    });

    // 8. Scattering: hard sphere, Born limit, variational bound, f_b integrals.
    criterion(8, "scattering", 10.0, [](std::string& detail) {
        bool ok = true;
        const ScatteringSolution hs =
            solve_zero_energy(RadialPotential::hard_sphere(1.0), 40.0, 8000);
        ok = ok && std::abs(hs.a - 1.0) <= 1e-3;

        const double v0 = 1e-3;
        const RadialPotential gauss = RadialPotential::gaussian(v0, 1.0);
        const ScatteringSolution gs = solve_zero_energy(gauss, 40.0, 20000);
        const double born = v0 * std::sqrt(M_PI) / 8.0;
        ok = ok && std::abs(gs.a - born) <= 0.3 * v0 * born;

        std::vector<double> grid(4000);
        for (std::size_t i = 0; i < grid.size(); ++i)
            grid[i] = 40.0 * static_cast<double>(i) / (grid.size() - 1);
        const double a_var = variational_scattering_length(gauss, grid);
        const double int_v = gauss.tail_integral_beyond(0.0);
        ok = ok && 8.0 * M_PI * a_var < int_v;

        const JastrowCutoff cut = jastrow(hs, 2.0);
        const EtaIntegral eta = eta_integral(cut);
        ok = ok && eta.value <= eta.bound * (1.0 + 1e-9);
        const XiIntegral xi = xi_integral(cut, RadialPotential::hard_sphere(1.0));
        ok = ok && std::abs(xi.value - xi.closed_form) <= 1e-6 * xi.closed_form;
        char buf[140];
        std::snprintf(buf, sizeof buf, "a_hs=%.6f, Born dev %.2e, eta %.6f <= %.6f",
                      hs.a, (gs.a - born) / born, eta.value, eta.bound);
        detail = buf;
        return ok;
    });

    // 9. Many-body oracle: cross-module agreement, variational principle,
    //    interacting sandwich, entropy inequality.
    criterion(9, "many-body oracle", 120.0, [](std::string& detail) {
        bool ok = true;
        // v = 0 cross-module free energy.
        ModeBasis modes;
        modes.energies = {0.0, 0.55, 1.2, 1.9};
        const SectorProblem ideal = build_hamiltonian(modes, nullptr, 5);
        const ManyBodyGibbs st0 = gibbs(ideal, 0.8);
        const CanonicalState cs =
            canonical_partition(ModeList::from_modes(modes.energies), 0.8, 5);
        ok = ok && std::abs(st0.free_energy - cs.free_energy) <= 1e-10 * std::abs(cs.free_energy);
        if (!ok) detail += "cross-module free energy; ";

        // Gibbs variational principle over 100 random states.
        const ModeBasis osc = ModeBasis::oscillator_1d(3);
        const TwoBodyTensor v = TwoBodyTensor::contact_1d(3, 0.5);
        const SectorProblem prob = build_hamiltonian(osc, &v, 3);
        const ManyBodyGibbs st = gibbs(prob, 1.0);
        std::mt19937_64 rng(909);
        std::normal_distribution<double> gaussd(0.0, 1.0);
        bool vok = true;
        for (int k = 0; k < 100; ++k) {
            Eigen::MatrixXd a(prob.basis.dim(), prob.basis.dim());
            for (Eigen::Index i = 0; i < a.rows(); ++i)
                for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = gaussd(rng);
            Eigen::MatrixXd rho = a * a.transpose();
            rho /= rho.trace();
            vok = vok && free_energy_functional(prob, rho, 1.0) >= st.free_energy - 1e-10;
        }
        ok = ok && vok;
        if (!vok) detail += "variational principle; ";

        // Interacting sandwich for 10 repulsive tensors + entropy inequality on
        // every computed state.
        bool sok = true, eok = true;
        int count = 0;
        for (double g : {0.05, 0.2, 0.5, 1.0, 3.0}) {
            for (int kind = 0; kind < 2; ++kind) {
                const TwoBodyTensor tensor =
                    kind == 0 ? TwoBodyTensor::contact_1d(3, g)
                              : TwoBodyTensor::gaussian_1d(3, g, 1.0 + 0.3 * kind);
                const SandwichReport rep = theorem_sandwich(osc, tensor, 3, 1.0);
                sok = sok && rep.ok;
                const SectorProblem sp = build_hamiltonian(osc, &tensor, 3);
                eok = eok && entropy_inequality_check(gibbs(sp, 1.0)).ok;
                ++count;
            }
        }
        ok = ok && sok && eok;
        char buf[80];
        std::snprintf(buf, sizeof buf, "%d tensors", count);
        detail += buf;
        return ok;
    });

    // 10. Asymptotics assembly: exact ideal reduction, model 1-RDM trace,
    //     TF-edge exponent, momentum width ratio.
    criterion(10, "asymptotics assembly", 120.0, [](std::string& detail) {
        bool ok = true;
        TrapParams p{1.0, 1.0, 2000};
        p.beta = 1.0 / (0.35 * critical_temperature(p));

        const FreeEnergyEstimate ideal = free_energy_estimate(p, 0.0);
        ok = ok && ideal.f_total == ideal.f0 && ideal.e_gp == 0.0;

        const ModelOneParticleDM dm = model_density_matrix(p, 1.0);
        ok = ok && std::abs(dm.trace - 2000.0) <= 1e-6 * 2000.0;

        // TF-edge exponent over a_v in {1, 10, 100}.
        std::vector<double> radii{0.0, 1.0};
        std::vector<double> log_a, log_r2;
        for (double a_v : {1.0, 10.0, 100.0}) {
            const PositionProfile prof = position_profile(p, a_v, radii);
            log_a.push_back(std::log(a_v));
            log_r2.push_back(std::log(prof.tf_edge_radius_sq));
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            sx += log_a[i];
            sy += log_r2[i];
            sxx += log_a[i] * log_a[i];
            sxy += log_a[i] * log_r2[i];
        }
        const double slope = (3.0 * sxy - sx * sy) / (3.0 * sxx - sx * sx);
        ok = ok && std::abs(slope - 0.40) <= 0.02;
        char buf[120];
        std::snprintf(buf, sizeof buf, "TF exponent %.4f; ", slope);
        detail += buf;

        // Momentum width ratio over a 3x3 (beta, omega) grid.
        std::vector<double> momenta;
        for (int i = 0; i <= 40; ++i) momenta.push_back(0.12 * i);
        double worst = 0.0;
        for (double omega : {0.5, 1.0, 2.0}) {
            for (double t : {0.4, 0.6, 0.8}) {
                TrapParams q{omega, 1.0, 2000};
                q.beta = 1.0 / (t * critical_temperature(q));
                const MomentumProfile mp = momentum_profile(q, 1.0, momenta);
                const double target = std::sqrt(q.beta * q.omega);
                worst = std::max(worst, std::abs(mp.width_ratio / target - 1.0));
            }
        }
        ok = ok && worst <= 0.2;
        std::snprintf(buf, sizeof buf, "width-ratio worst dev %.3f", worst);
        detail += buf;
        return ok;
    });

    std::printf("%s: %d of 10 criteria failed\n", failures == 0 ? "ALL PASS" : "RESULT",
                failures);
    return failures;
}
