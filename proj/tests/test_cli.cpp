#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "bosegas/idealgas.hpp"
#include "bosegas/scattering.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;
using namespace bosegas;

namespace {
const std::string kCli = BOSEGAS_CLI_PATH;

int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    return std::system(cmd.c_str());
}

json load(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    json j;
    in >> j;
    return j;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("bosegas_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}
}  // namespace

TEST_CASE("scatter: hard sphere and zero potential") {
    TempDir tmp;
    write_file(tmp.path / "hs.cfg", "kind = hard_sphere\ncore_radius = 1.0\nr_max = 40\n");
    REQUIRE(run("--config " + (tmp.path / "hs.cfg").string() + " --out " + tmp.path.string() +
                " scatter") == 0);
    json j = load(tmp.path / "scatter_summary.json");
    CHECK(std::abs(j["a"].get<double>() - 1.0) < 1e-3);
    CHECK(j["variational_bound"].get<double>() == doctest::Approx(1.0).epsilon(2e-3));

    write_file(tmp.path / "zero.cfg", "kind = hard_sphere\ncore_radius = 0.0\n");
    REQUIRE(run("--config " + (tmp.path / "zero.cfg").string() + " --out " + tmp.path.string() +
                " scatter") == 0);
    j = load(tmp.path / "scatter_summary.json");
    CHECK(j["a"].get<double>() == 0.0);
}

TEST_CASE("scatter: tabulated potential matches the library call exactly") {
    TempDir tmp;
    std::ostringstream table;
    table << "r,v\n" << std::setprecision(17);
    std::vector<double> r, v;
    for (int i = 0; i <= 300; ++i) {
        r.push_back(1e-3 + 6.0 * i / 300.0);
        v.push_back(2e-3 * std::exp(-r.back() * r.back()));
        table << r.back() << "," << v.back() << "\n";
    }
    write_file(tmp.path / "table.csv", table.str());
    write_file(tmp.path / "tab.cfg", "kind = tabulated\ntable = " +
                                         (tmp.path / "table.csv").string() +
                                         "\nr_max = 40\nn_grid = 20000\n");
    REQUIRE(run("--config " + (tmp.path / "tab.cfg").string() + " --out " + tmp.path.string() +
                " scatter") == 0);
    const json j = load(tmp.path / "scatter_summary.json");

    const RadialPotential pot = RadialPotential::tabulated(std::move(r), std::move(v));
    const ScatteringSolution sol = solve_zero_energy(pot, 40.0, 20000);
    CHECK(j["a"].get<double>() == sol.a);  // identical code path, bit-identical JSON round trip
}

TEST_CASE("phase diagram equals the library sweep") {
    TempDir tmp;
    write_file(tmp.path / "pd.cfg",
               "n = 500\nomega = 1\nt_min = 0.3\nt_max = 1.2\nt_steps = 4\n");
    REQUIRE(run("--config " + (tmp.path / "pd.cfg").string() + " --out " + tmp.path.string() +
                " phase-diagram") == 0);
    std::ifstream csv(tmp.path / "phase_diagram.csv");
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "t_over_tc,n0_over_n_canonical,n0_over_n_gc,limit_curve");

    TrapParams p{1.0, 1.0, 500};
    const double tc = critical_temperature(p);
    std::string line;
    int rows = 0;
    while (std::getline(csv, line)) {
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double t, n0c, n0g, limit;
        REQUIRE((ls >> t >> n0c >> n0g >> limit));
        TrapParams pt = p;
        pt.beta = 1.0 / (t * tc);
        const GrandCanonicalState gc = solve_mu0(pt);
        CHECK(n0g == doctest::Approx(gc.n0 / 500.0).epsilon(1e-5));
        const ModeList levels = ModeList::harmonic(1.0, gc.n_max);
        const CanonicalState cs = canonical_partition(levels, pt.beta, 500);
        CHECK(n0c == doctest::Approx(cs.n0 / 500.0).epsilon(1e-5));
        CHECK(limit == doctest::Approx(std::max(0.0, 1.0 - t * t * t)).epsilon(1e-6));
        if (t >= 1.0) CHECK(limit == 0.0);
        ++rows;
    }
    CHECK(rows == 4);
}

TEST_CASE("low-temperature row has full condensate fraction") {
    TempDir tmp;
    write_file(tmp.path / "pd.cfg",
               "n = 200\nomega = 1\nt_min = 0.02\nt_max = 0.02\nt_steps = 1\n");
    REQUIRE(run("--config " + (tmp.path / "pd.cfg").string() + " --out " + tmp.path.string() +
                " phase-diagram") == 0);
    std::ifstream csv(tmp.path / "phase_diagram.csv");
    std::string header, line;
    std::getline(csv, header);
    REQUIRE(std::getline(csv, line));
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double t, n0c, n0g, limit;
    REQUIRE((ls >> t >> n0c >> n0g >> limit));
    CHECK(n0c > 0.99);
    CHECK(limit == doctest::Approx(1.0 - t * t * t));
}

TEST_CASE("ideal and manybody commands run") {
    TempDir tmp;
    write_file(tmp.path / "ideal.cfg", "n = 300\nomega = 1\nt_over_tc = 0.5\n");
    REQUIRE(run("--config " + (tmp.path / "ideal.cfg").string() + " --out " + tmp.path.string() +
                " ideal") == 0);
    const json j = load(tmp.path / "ideal_summary.json");
    CHECK(j["n0_gc"].get<double>() > 0.0);
    CHECK(j["mu0"].get<double>() < 0.0);
    CHECK(j.contains("n0_canonical"));

    write_file(tmp.path / "mb.cfg", "modes = 3\nn = 3\nbeta = 1.0\ng = 0.2\n");
    REQUIRE(run("--config " + (tmp.path / "mb.cfg").string() + " --out " + tmp.path.string() +
                " manybody") == 0);
    const json m = load(tmp.path / "manybody_report.json");
    CHECK(m["sandwich_ok"].get<bool>());
    CHECK(m["entropy_inequality_ok"].get<bool>());
}

TEST_CASE("verify runs clean with default config and fixed seeds") {
    TempDir tmp;
    REQUIRE(run("--out " + tmp.path.string() + " --seed 0 verify") == 0);
    const json rep = load(tmp.path / "verify_report.json");
    CHECK(rep["violation_count"].get<long long>() == 0);
    CHECK(rep["checks_run"].get<long long>() > 100000);

    // An empty config selects the default suite, and the same seed gives a
    // byte-identical report.
    TempDir tmp2;
    write_file(tmp2.path / "empty.cfg", "# nothing here\n");
    REQUIRE(run("--config " + (tmp2.path / "empty.cfg").string() + " --out " +
                tmp2.path.string() + " --seed 0 verify") == 0);
    std::ifstream a(tmp.path / "verify_report.json"), b(tmp2.path / "verify_report.json");
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
}
