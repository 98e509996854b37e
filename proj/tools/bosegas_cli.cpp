// Command-line front end: ensemble tables, GP profiles, scattering solutions,
// free-energy assembly, and the inequality verification suite.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bosegas/asymptotics.hpp"
#include "bosegas/entropy.hpp"
#include "bosegas/gp.hpp"
#include "bosegas/idealgas.hpp"
#include "bosegas/manybody.hpp"
#include "bosegas/params.hpp"
#include "bosegas/scattering.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace bosegas;

namespace {

// Flat key-value config: `key = value` lines, '#' comments.
std::map<std::string, std::string> parse_config(const std::string& path) {
    std::map<std::string, std::string> kv;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

struct Ctx {
    std::map<std::string, std::string> cfg;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    double tol = 1e-8;
    std::string format = "csv";

    double num(const std::string& key, double fallback) const {
        auto it = cfg.find(key);
        return it == cfg.end() ? fallback : std::stod(it->second);
    }
    long long integer(const std::string& key, long long fallback) const {
        auto it = cfg.find(key);
        return it == cfg.end() ? fallback : std::stoll(it->second);
    }
    std::string str(const std::string& key, const std::string& fallback) const {
        auto it = cfg.find(key);
        return it == cfg.end() ? fallback : it->second;
    }
    fs::path out(const std::string& name) const {
        fs::create_directories(out_dir);
        return fs::path(out_dir) / name;
    }
};

TrapParams trap_from(const Ctx& ctx) {
    TrapParams p;
    p.omega = ctx.num("omega", 1.0);
    p.n_particles = ctx.integer("n", 1000);
    if (ctx.cfg.contains("t_over_tc")) {
        const double t = ctx.num("t_over_tc", 0.5);
        TrapParams tmp = p;
        tmp.beta = 1.0;
        p.beta = 1.0 / (t * critical_temperature(tmp));
    } else {
        p.beta = ctx.num("beta", 1.0);
    }
    p.validate();
    return p;
}

RadialPotential potential_from(const Ctx& ctx) {
    const std::string kind = ctx.str("kind", "hard_sphere");
    const double core = ctx.num("core_radius", kind == "hard_sphere" ? 1.0 : 0.0);
    if (kind == "hard_sphere") return RadialPotential::hard_sphere(core);
    if (kind == "gaussian")
        return RadialPotential::gaussian(ctx.num("amplitude", 1e-3), ctx.num("width", 1.0), core);
    if (kind == "square_barrier")
        return RadialPotential::square_barrier(ctx.num("amplitude", 1.0), ctx.num("width", 1.0),
                                               core);
    if (kind == "tabulated") {
        std::ifstream in(ctx.str("table", ""));
        if (!in) throw std::runtime_error("tabulated potential: cannot open table file");
        std::vector<double> r, v;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#' || line.find_first_of("0123456789") ==
                                                       std::string::npos)
                continue;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream ls(line);
            double rr, vv;
            if (ls >> rr >> vv) {
                r.push_back(rr);
                v.push_back(vv);
            }
        }
        return RadialPotential::tabulated(std::move(r), std::move(v), core);
    }
    throw std::runtime_error("unknown potential kind: " + kind);
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

// Tabular output: CSV by default, an array of records under --format json.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    void add_row(std::initializer_list<double> vals) { rows.emplace_back(vals); }
};

void write_table(const Ctx& ctx, const std::string& stem, const Table& table) {
    if (ctx.format == "json") {
        json arr = json::array();
        for (const auto& row : table.rows) {
            json rec;
            for (std::size_t c = 0; c < table.columns.size(); ++c) rec[table.columns[c]] = row[c];
            arr.push_back(rec);
        }
        write_json(ctx.out(stem + ".json"), arr);
        return;
    }
    std::ofstream csv(ctx.out(stem + ".csv"));
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        csv << table.columns[c] << (c + 1 < table.columns.size() ? "," : "\n");
    csv << std::setprecision(17);
    for (const auto& row : table.rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            csv << row[c] << (c + 1 < row.size() ? "," : "\n");
}

int cmd_scatter(const Ctx& ctx) {
    const RadialPotential pot = potential_from(ctx);
    const double r_max = ctx.num("r_max", 40.0 * std::max(1.0, pot.integrable_beyond));
    const int n_grid = static_cast<int>(ctx.integer("n_grid", 20000));
    const ScatteringSolution sol = solve_zero_energy(pot, r_max, n_grid);

    std::vector<double> trial(sol.grid.begin(), sol.grid.end());
    const double a_var = variational_scattering_length(pot, trial);

    const double b = ctx.num("b", 2.0 * std::max(sol.a, 1e-6));
    json summary{{"a", sol.a},
                 {"residual", sol.tail_fit_residual},
                 {"variational_bound", a_var},
                 {"b", b}};
    if (b > sol.a && b > sol.hard_core_radius) {
        const JastrowCutoff cut = jastrow(sol, b);
        const EtaIntegral eta = eta_integral(cut);
        const XiIntegral xi = xi_integral(cut, pot);
        summary["eta_integral"] = eta.value;
        summary["eta_bound"] = eta.bound;
        summary["xi_integral"] = xi.value;
        summary["xi_closed_form"] = xi.closed_form;
    }

    Table table{{"r", "u", "f"}, {}};
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
        const double r = sol.grid[i];
        table.add_row({r, sol.u[i], sol.f0_at(r)});
    }
    write_table(ctx, "scattering", table);
    write_json(ctx.out("scatter_summary.json"), summary);
    std::cout << summary.dump(2) << "\n";
    return 0;
}

std::vector<double> radii_from(const Ctx& ctx, const TrapParams& p) {
    const double r_max = ctx.num("r_max", 6.0 / (p.omega * std::sqrt(p.beta)));
    const int n = static_cast<int>(ctx.integer("n_radii", 200));
    std::vector<double> r(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = r_max * i / (n - 1);
    return r;
}

int cmd_ideal(const Ctx& ctx) {
    const TrapParams p = trap_from(ctx);
    const GrandCanonicalState gc = solve_mu0(p);
    const RegimeReport regime = regime_report(p);
    json summary{{"omega", p.omega},        {"beta", p.beta},
                 {"n", p.n_particles},      {"mu0", gc.mu},
                 {"n0_gc", gc.n0},          {"nth_gc", gc.n_th},
                 {"f_gc", gc.free_energy},  {"n_max", gc.n_max},
                 {"t_c", critical_temperature(p)}};
    summary["regime"] = json{{"ell_osc", regime.ell_osc},
                             {"ell_th", regime.ell_th},
                             {"r_th", regime.r_th},
                             {"d_th", regime.d_th},
                             {"thermo_parameter", regime.thermo_parameter},
                             {"t_over_tc", regime.t_over_tc},
                             {"scale_separation", regime.scale_separation},
                             {"density_ratio", regime.density_ratio},
                             {"bec_expected", regime.bec_expected}};

    Table occ{{"level", "occupation"}, {}};
    for (std::size_t n = 0; n < gc.level_occupations.size(); ++n)
        occ.add_row({static_cast<double>(n), gc.level_occupations[n]});
    write_table(ctx, "occupations", occ);

    // Thermal density profile of the excited cloud.
    const auto radii = radii_from(ctx, p);
    const DensityProfile dens = thermal_density(p, gc.mu, radii);
    Table rho{{"r", "rho"}, {}};
    for (std::size_t i = 0; i < radii.size(); ++i) rho.add_row({radii[i], dens.values[i]});
    write_table(ctx, "thermal_density", rho);
    summary["nth_profile_integral"] = dens.integral;
    summary["sup_rho_beta_3_2"] = dens.sup_scaled;

    if (p.n_particles <= 10000) {
        const ModeList levels = ModeList::harmonic(p.omega, gc.n_max);
        const CanonicalState cs = canonical_partition(levels, p.beta, p.n_particles);
        summary["n0_canonical"] = cs.n0;
        summary["f_canonical"] = cs.free_energy;
        Table cocc{{"level", "occupation"}, {}};
        for (std::size_t l = 0; l < cs.occupations.size(); ++l)
            cocc.add_row({static_cast<double>(l),
                          cs.occupations[l] * static_cast<double>(levels.degeneracies[l])});
        write_table(ctx, "occupations_canonical", cocc);
    }
    write_json(ctx.out("ideal_summary.json"), summary);
    std::cout << summary.dump(2) << "\n";
    return 0;
}

int cmd_gp(const Ctx& ctx) {
    const double omega = ctx.num("omega", 1.0);
    const double n = ctx.num("n0", ctx.num("n", 100));
    double a = ctx.num("a", -1.0);
    if (a < 0.0) {
        TrapParams p;
        p.omega = omega;
        p.beta = 1.0;
        p.n_particles = std::max<long long>(1, static_cast<long long>(n));
        a = scaled_scattering_length(ctx.num("a_v", 1.0), p);
    }
    const RadialGrid grid = RadialGrid::for_problem(n, a, omega,
                                                    static_cast<int>(ctx.integer("grid_n", 4096)));
    const GPResult sol = gp_minimize(n, a, omega, grid, ctx.tol);
    json summary{{"n", n},
                 {"a", a},
                 {"omega", omega},
                 {"energy", sol.energy},
                 {"mu", sol.mu},
                 {"kinetic", sol.kinetic},
                 {"potential", sol.potential},
                 {"interaction", sol.interaction},
                 {"residual", sol.residual},
                 {"iterations", sol.iterations},
                 {"converged", sol.converged},
                 {"grid_r_max", grid.r_max},
                 {"grid_n", grid.n_points}};
    Table table{{"r", "phi", "rho"}, {}};
    for (std::size_t i = 0; i < sol.phi.size(); ++i)
        table.add_row({grid.node(static_cast<int>(i)), sol.phi[i], sol.phi[i] * sol.phi[i]});
    write_table(ctx, "gp_profile", table);
    write_json(ctx.out("gp_summary.json"), summary);
    std::cout << summary.dump(2) << "\n";
    return 0;
}

int cmd_free_energy(const Ctx& ctx) {
    const TrapParams p = trap_from(ctx);
    const double a_v = ctx.num("a_v", 1.0);
    const Ensemble ens = ctx.str("ensemble", "canonical") == "grand_canonical"
                             ? Ensemble::grand_canonical
                             : Ensemble::canonical;
    const FreeEnergyEstimate est = free_energy_estimate(p, a_v, ens);
    json j{{"model", "asymptotic free-energy decomposition (no finite-N error bar)"},
           {"f0", est.f0},
           {"n0", est.n0},
           {"e_gp", est.e_gp},
           {"f_total", est.f_total},
           {"f0_per_particle_times_beta", est.f0_scale},
           {"e_gp_per_particle_over_omega", est.egp_scale},
           {"ensemble", est.ensemble_used == Ensemble::canonical ? "canonical"
                                                                 : "grand_canonical"}};
    write_json(ctx.out("free_energy.json"), j);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_density(const Ctx& ctx) {
    const TrapParams p = trap_from(ctx);
    const double a_v = ctx.num("a_v", 1.0);
    const auto radii = radii_from(ctx, p);
    const PositionProfile prof = position_profile(p, a_v, radii);
    Table table{{"r", "rho_thermal", "rho_condensate", "rho_total"}, {}};
    for (std::size_t i = 0; i < radii.size(); ++i)
        table.add_row({radii[i], prof.thermal[i], prof.condensate[i], prof.total[i]});
    write_table(ctx, "density", table);
    json j{{"integral", prof.integral},
           {"n", p.n_particles},
           {"tf_edge_radius_sq", prof.tf_edge_radius_sq}};
    write_json(ctx.out("density_summary.json"), j);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_momentum(const Ctx& ctx) {
    const TrapParams p = trap_from(ctx);
    const double a_v = ctx.num("a_v", 1.0);
    const double p_max = ctx.num("p_max", 4.0 / std::sqrt(p.beta));
    const int n = static_cast<int>(ctx.integer("n_momenta", 200));
    std::vector<double> momenta(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) momenta[static_cast<std::size_t>(i)] = p_max * i / (n - 1);
    const MomentumProfile prof = momentum_profile(p, a_v, momenta);
    Table table{{"p", "n_thermal", "n_condensate"}, {}};
    for (std::size_t i = 0; i < momenta.size(); ++i)
        table.add_row({momenta[i], prof.thermal[i], prof.condensate[i]});
    write_table(ctx, "momentum", table);
    json j{{"integral", prof.integral},
           {"width_thermal", prof.width_thermal},
           {"width_condensate", prof.width_condensate},
           {"width_ratio", prof.width_ratio},
           {"sqrt_beta_omega", std::sqrt(p.beta * p.omega)}};
    write_json(ctx.out("momentum_summary.json"), j);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_phase_diagram(const Ctx& ctx) {
    TrapParams p;
    p.omega = ctx.num("omega", 1.0);
    p.n_particles = ctx.integer("n", 10000);
    p.beta = 1.0;
    p.validate();
    const double t_min = ctx.num("t_min", 0.1);
    const double t_max = ctx.num("t_max", 1.4);
    const int steps = static_cast<int>(ctx.integer("t_steps", 14));
    const double tc = critical_temperature(p);
    const double n = static_cast<double>(p.n_particles);

    // Sweep points run on a small worker pool (they share nothing); a single
    // collector writes the table in order.
    struct Row {
        double t, n0_can, n0_gc, limit;
    };
    std::vector<std::future<Row>> jobs;
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    for (int i = 0; i < steps; ++i) {
        const double t = t_min + (t_max - t_min) * i / std::max(1, steps - 1);
        auto policy = (jobs.size() % workers == workers - 1) ? std::launch::deferred
                                                             : std::launch::async;
        jobs.push_back(std::async(policy, [p, t, tc]() {
            TrapParams pt = p;
            pt.beta = 1.0 / (t * tc);
            const GrandCanonicalState gc = solve_mu0(pt);
            double n0_can = gc.n0;
            if (pt.n_particles <= 10000) {
                const ModeList levels = ModeList::harmonic(pt.omega, gc.n_max);
                n0_can = canonical_partition(levels, pt.beta, pt.n_particles).n0;
            }
            return Row{t, n0_can, gc.n0, std::max(0.0, 1.0 - t * t * t)};
        }));
    }
    Table table{{"t_over_tc", "n0_over_n_canonical", "n0_over_n_gc", "limit_curve"}, {}};
    for (auto& job : jobs) {
        const Row row = job.get();
        table.add_row({row.t, row.n0_can / n, row.n0_gc / n, row.limit});
    }
    write_table(ctx, "phase_diagram", table);
    std::cout << "phase diagram written to " << ctx.out_dir << "\n";
    return 0;
}

// Two-body tensor from CSV rows `i,j,k,l,value`.
TwoBodyTensor tensor_from_csv(const std::string& path, int modes, bool nonnegative) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open tensor file: " + path);
    TwoBodyTensor t;
    t.modes = modes;
    t.v.assign(static_cast<std::size_t>(modes) * modes * modes * modes, 0.0);
    t.nonnegative = nonnegative;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.find_first_of("0123456789-") == std::string::npos) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        int i, j, k, l;
        double value;
        if (ls >> i >> j >> k >> l >> value) t.at(i, j, k, l) = value;
    }
    t.validate();
    return t;
}

int cmd_manybody(const Ctx& ctx) {
    const int m = static_cast<int>(ctx.integer("modes", 3));
    const long long n = ctx.integer("n", 3);
    const double beta = ctx.num("beta", 1.0);
    const double g = ctx.num("g", 0.1);
    const ModeBasis basis = ModeBasis::oscillator_1d(m, ctx.num("mode_omega", 1.0));
    TwoBodyTensor v;
    if (ctx.cfg.contains("tensor")) {
        v = tensor_from_csv(ctx.str("tensor", ""), m, ctx.str("nonnegative", "true") == "true");
    } else if (ctx.str("interaction", "contact") == "gaussian") {
        v = TwoBodyTensor::gaussian_1d(m, g, ctx.num("range", 1.0));
    } else {
        v = TwoBodyTensor::contact_1d(m, g);
    }
    const SandwichReport sandwich = theorem_sandwich(basis, v, n, beta);
    const SectorProblem prob = build_hamiltonian(basis, &v, n);
    const ManyBodyGibbs state = gibbs(prob, beta);
    const BecDiagnostics bec = bec_diagnostics(state);
    const EntropyInequalityReport ent = entropy_inequality_check(state);
    json j{{"modes", m},
           {"n", n},
           {"beta", beta},
           {"g", g},
           {"f_ideal", sandwich.f_ideal},
           {"f_interacting", sandwich.f_interacting},
           {"f_upper", sandwich.upper},
           {"sandwich_ok", sandwich.ok},
           {"free_energy", state.free_energy},
           {"entropy", state.entropy},
           {"bec_top_fraction", bec.top_fraction},
           {"bec_mode0_overlap", bec.mode0_overlap},
           {"entropy_inequality_lhs", ent.state_entropy},
           {"entropy_inequality_rhs", ent.bose_bound},
           {"entropy_inequality_ok", ent.ok}};
    write_json(ctx.out("manybody_report.json"), j);
    std::cout << j.dump(2) << "\n";
    return sandwich.ok && ent.ok ? 0 : 1;
}

int cmd_verify(const Ctx& ctx) {
    json report;
    json violations = json::array();
    long long checks = 0, failed = 0;
    auto add_violation = [&](const std::string& id, double lhs, double rhs, double margin,
                             const std::string& inputs) {
        ++failed;
        violations.push_back(json{{"inequality", id},
                                  {"lhs", lhs},
                                  {"rhs", rhs},
                                  {"margin", margin},
                                  {"inputs", inputs}});
    };

    // Appendix A on the harmonic spectrum and on random finite spectra.
    {
        std::mt19937_64 rng(ctx.seed);
        std::uniform_real_distribution<double> unif(0.1, 2.0);
        std::vector<ModeList> spectra;
        spectra.push_back(ModeList::harmonic(1.0, 12));
        for (int c = 0; c < 3; ++c) {
            std::vector<double> modes;
            for (int j = 0; j < 5; ++j) modes.push_back(unif(rng) * (j + c * 0.3));
            modes[0] = 0.0;
            spectra.push_back(ModeList::from_modes(modes));
        }
        for (std::size_t s = 0; s < spectra.size(); ++s) {
            const double beta = (s == 0) ? 0.5 : 1.0;
            const long long n_hi = (s == 0) ? 20 : 8;
            const AppendixAReport rep =
                verify_appendix_a(spectra[s], beta, 1, n_hi, s != 0);
            checks += rep.checks_run;
            for (const auto& c : rep.checks)
                if (!c.ok)
                    add_violation(c.inequality, c.lhs, c.rhs, c.margin,
                                  c.inputs + " spectrum=" + std::to_string(s));
        }
    }

    // Coercivity of the bosonic relative entropy: scalar pairs and operator pairs.
    {
        std::mt19937_64 rng(ctx.seed ^ 0xabcdef12345ULL);
        std::uniform_real_distribution<double> unif(0.0, 100.0);
        double min_ratio = 1e300;
        for (int k = 0; k < 100000; ++k) {
            const double x = unif(rng), y = std::max(unif(rng), 1e-9);
            const double s = scalar_rel_entropy(x, y);
            ++checks;
            if (x != y) {
                const double bound = kScalarCoercivityC * (x - y) * (x - y) /
                                     ((x + y) * (1.0 + y));
                if (s < bound * (1.0 - 1e-9))
                    add_violation("scalar_coercivity", s, bound, s - bound,
                                  "x=" + std::to_string(x) + " y=" + std::to_string(y));
                min_ratio = std::min(min_ratio, s / bound * kScalarCoercivityC);
            }
        }
        report["scalar_coercivity_min_ratio"] = min_ratio;
        for (int k = 0; k < 200; ++k) {
            const int d = 2 + static_cast<int>(rng() % 15);
            const SpectralOperator g = random_operator(d, 10.0, rng());
            const SpectralOperator g0 = random_operator(d, 10.0, rng());
            const EntropyReport rep = verify_lemma_coercivity(g, g0);
            ++checks;
            if (!rep.ok)
                add_violation("lemma_coercivity_operator", rep.rel_entropy,
                              std::max(rep.bound_operator, rep.bound_trace),
                              std::min(rep.margin_operator, rep.margin_trace),
                              "d=" + std::to_string(d) + " k=" + std::to_string(k));
            const Eigen::MatrixXd p = random_projection(d, 1 + static_cast<int>(rng() % d), rng());
            const double lam = (0.5 + static_cast<double>(rng() % 8)) *
                               std::max(g0.eigenvalues.maxCoeff(), 1e-6);
            const TraceNormBoundReport tn = trace_norm_bound_check(g, g0, p, lam);
            ++checks;
            if (!tn.ok)
                add_violation("trace_norm_pipeline", tn.lhs, tn.rhs, tn.rhs - tn.lhs,
                              "d=" + std::to_string(d) + " k=" + std::to_string(k));
        }
    }

    // Many-body oracle: Gibbs sandwich and the entropy inequality.
    {
        const ModeBasis basis = ModeBasis::oscillator_1d(3);
        for (double g : {0.1, 1.0}) {
            const TwoBodyTensor v = TwoBodyTensor::contact_1d(3, g);
            const SandwichReport rep = theorem_sandwich(basis, v, 3, 1.0);
            ++checks;
            if (!rep.ok)
                add_violation("interacting_sandwich", rep.f_interacting,
                              rep.upper, rep.upper - rep.f_interacting,
                              "g=" + std::to_string(g));
            const SectorProblem prob = build_hamiltonian(basis, &v, 3);
            const ManyBodyGibbs state = gibbs(prob, 1.0);
            const EntropyInequalityReport ent = entropy_inequality_check(state);
            ++checks;
            if (!ent.ok)
                add_violation("entropy_inequality", ent.state_entropy, ent.bose_bound,
                              ent.bose_bound - ent.state_entropy, "g=" + std::to_string(g));
        }
    }

    // GP convexity and coercivity chain.
    {
        TrapParams p;
        p.omega = 1.0;
        p.beta = 1.0;
        p.n_particles = 100;
        const double a_n = scaled_scattering_length(1.0, p);
        const RadialGrid grid = RadialGrid::for_problem(100.0, a_n, 1.0, 2048);
        const CoercivityReport rep =
            gp_coercivity_check(100.0, a_n, 1.0, {50.0, 75.0, 150.0, 200.0}, grid, 1e-9);
        for (const auto& pt : rep.points) {
            ++checks;
            if (!pt.ok)
                add_violation("gp_coercivity", pt.lhs, pt.explicit_bound,
                              pt.lhs - pt.explicit_bound, "M=" + std::to_string(pt.m));
        }
        ++checks;
        if (rep.midpoint_convexity_margin < -1e-9)
            add_violation("gp_midpoint_convexity", -rep.midpoint_convexity_margin, 0.0,
                          rep.midpoint_convexity_margin, "ladder around N0=100");
    }

    // Scattering identities.
    {
        const RadialPotential hs = RadialPotential::hard_sphere(1.0);
        const ScatteringSolution sol = solve_zero_energy(hs, 40.0, 4000);
        ++checks;
        if (std::abs(sol.a - 1.0) > 1e-3)
            add_violation("hard_sphere_a", sol.a, 1.0, -std::abs(sol.a - 1.0), "r=1");
        const JastrowCutoff cut = jastrow(sol, 2.0);
        const EtaIntegral eta = eta_integral(cut);
        ++checks;
        if (eta.value > eta.bound * (1.0 + 1e-9))
            add_violation("eta_bound", eta.value, eta.bound, eta.bound - eta.value, "a=1 b=2");
    }

    report["checks_run"] = checks;
    report["violations"] = violations;
    report["violation_count"] = failed;
    report["seed"] = ctx.seed;
    write_json(ctx.out("verify_report.json"), report);
    std::cout << report.dump(2) << "\n";
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trapped Bose gas thermodynamics: ensembles, GP condensates, scattering, "
                 "and inequality verification"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", format = "csv";
    std::uint64_t seed = 0;
    double tol = 1e-8;
    app.add_option("--config", config_path, "flat key = value config file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "seed for randomized suites");
    app.add_option("--tol", tol, "solver tolerance");
    app.add_option("--format", format, "csv|json (tables are CSV, reports JSON)");

    std::map<std::string, int (*)(const Ctx&)> commands{
        {"scatter", cmd_scatter},   {"ideal", cmd_ideal},
        {"gp", cmd_gp},             {"free-energy", cmd_free_energy},
        {"density", cmd_density},   {"momentum", cmd_momentum},
        {"phase-diagram", cmd_phase_diagram}, {"verify", cmd_verify},
        {"manybody", cmd_manybody}};
    for (auto& [name, fn] : commands)
        app.add_subcommand(name)->callback([&, fn]() {
            Ctx ctx;
            if (!config_path.empty()) ctx.cfg = parse_config(config_path);
            ctx.out_dir = out_dir;
            ctx.seed = seed;
            if (!(tol > 0.0)) throw CLI::ValidationError("--tol must be > 0");
            ctx.tol = tol;
            ctx.format = format;
            const int rc = fn(ctx);
            if (rc != 0) throw CLI::RuntimeError(rc);
        });

    CLI11_PARSE(app, argc, argv);
    return 0;
}
