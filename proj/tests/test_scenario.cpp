#include <doctest.h>
#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "singdyn/csv.hpp"
#include "singdyn/scenario.hpp"
#include "singdyn/svg.hpp"

using namespace singdyn;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    static int counter = 0;
    const fs::path p =
        fs::temp_directory_path() / ("singdyn_test_" + std::to_string(::getpid()) +
                                     "_" + std::to_string(counter++));
    fs::create_directories(p);
    return p;
}

fs::path write_config(const std::string& text) {
    const fs::path p = scratch_dir() / "config.json";
    std::ofstream f(p);
    f << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("physical parameter reduction") {
    const ReducedParams r = physical_to_reduced(1.0, 1.0, 1.0, 2.0);
    CHECK(r.mu == doctest::Approx(1.0));
    CHECK(r.time_scale == 1.0);
    CHECK(r.drift_scale == 1.0);

    const ReducedParams r2 = physical_to_reduced(0.5, 2.0, 3.0, 5.0 / 3.0);
    CHECK(r2.mu == doctest::Approx(3.0));
    CHECK(r2.time_scale == 0.5);
    CHECK(r2.drift_scale == 2.0);

    CHECK_THROWS_AS(physical_to_reduced(1.0, 1.0, 1.0, 4.0 / 3.0), ConfigError);
    CHECK_THROWS_AS(physical_to_reduced(-1.0, 1.0, 1.0, 2.0), ConfigError);
}

TEST_CASE("reduction round-trip: divergence-form coefficient matches 1 - 2 mu c") {
    for (double kappa : {0.5, 2.0}) {
        for (double beta : {1.0, 3.0}) {
            for (double omega : {1.5, 2.0, 5.0}) {
                const double mu = physical_to_reduced(1.0, kappa, beta, omega).mu;
                for (double c : {0.1, 0.7, 1.3}) {
                    const double original = 1.0 - kappa * beta * (3.0 * omega - 4.0) * c;
                    const double reduced = 1.0 - 2.0 * mu * c;
                    CHECK(original == doctest::Approx(reduced).epsilon(1e-15));
                }
            }
        }
    }
}

TEST_CASE("chain scenario reproduces the exact front in its CSV") {
    const fs::path cfg = write_config(R"({
        "schema": "singdyn/1",
        "mode": "chain1d",
        "initial": {"eta": 1.0},
        "t0": 1.0, "t1": 8.0, "dt": 0.001,
        "output_every": 100
    })");
    const fs::path out = scratch_dir();
    const ScenarioResult r = run_scenario(cfg.string(), out.string());
    REQUIRE(r.exit_code == 0);
    const CsvTable table = read_csv_file((out / "chain.csv").string());
    const int tcol = table.column("t"), pcol = table.column("phi");
    REQUIRE(tcol >= 0);
    REQUIRE(pcol >= 0);
    for (const auto& row : table.rows)
        CHECK(std::abs(row[pcol] - (-std::cbrt(row[tcol]))) < 1e-5);
    CHECK(fs::exists(out / "chain.svg"));
    CHECK(fs::exists(out / "report.json"));
}

TEST_CASE("malformed config: exit 2, no artifacts") {
    const fs::path out = scratch_dir();
    fs::remove_all(out);
    const fs::path cfg = write_config("{ this is not json");
    const ScenarioResult r = run_scenario(cfg.string(), out.string());
    CHECK(r.exit_code == 2);
    CHECK(!fs::exists(out));

    const fs::path cfg2 = write_config(R"({"schema": "singdyn/1", "mode": "nope"})");
    const ScenarioResult r2 = run_scenario(cfg2.string(), out.string());
    CHECK(r2.exit_code == 2);

    const fs::path cfg3 = write_config(R"({"schema": "other", "mode": "chain1d"})");
    CHECK(run_scenario(cfg3.string(), out.string()).exit_code == 2);
}

TEST_CASE("missing keys inside a mode are config errors and leave nothing behind") {
    const fs::path out = scratch_dir();
    fs::remove_all(out);
    const fs::path cfg = write_config(R"({
        "schema": "singdyn/1", "mode": "vortex",
        "mu": 1.0, "t0": 0.0, "t1": 0.1, "dt": 0.01
    })");
    const ScenarioResult r = run_scenario(cfg.string(), out.string());
    CHECK(r.exit_code == 2);
    CHECK((!fs::exists(out) || fs::is_empty(out)));
}

TEST_CASE("vortex sweep writes one trajectory per entry plus a combined plot") {
    const fs::path cfg = write_config(R"({
        "schema": "singdyn/1",
        "mode": "vortex",
        "mu": 1.0,
        "t0": 0.0, "t1": 0.05, "dt": 0.005,
        "sweep": [
            {"a": [0,0], "phi": 0.0, "c1_0": 1.0},
            {"a": [0,0], "phi": 1.0, "c1_0": 1.0},
            {"a": [0,0], "phi": 2.0, "c1_0": -0.8}
        ]
    })");
    const fs::path out = scratch_dir();
    const ScenarioResult r = run_scenario(cfg.string(), out.string());
    REQUIRE(r.exit_code == 0);
    CHECK(fs::exists(out / "vortex_0.csv"));
    CHECK(fs::exists(out / "vortex_1.csv"));
    CHECK(fs::exists(out / "vortex_2.csv"));
    const std::string svg = slurp(out / "trajectory.svg");
    CHECK(std::count(svg.begin(), svg.end(), '\n') > 10);
    size_t polylines = 0;
    for (size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos; ++pos)
        ++polylines;
    CHECK(polylines == 3);
}

TEST_CASE("runtime failure: exit 3 and the error lands in the report") {
    const fs::path cfg = write_config(R"({
        "schema": "singdyn/1",
        "mode": "chain1d",
        "initial": {"phi": 0.0, "a": [50.0, 50.0, 50.0]},
        "t0": 0.1, "t1": 10.0, "dt": 0.01
    })");
    const fs::path out = scratch_dir();
    const ScenarioResult r = run_scenario(cfg.string(), out.string());
    CHECK(r.exit_code == 3);
    const std::string report = slurp(out / "report.json");
    CHECK(report.find("error") != std::string::npos);
    CHECK(report.find("non-finite") != std::string::npos);
}

TEST_CASE("identical configs produce byte-identical artifacts") {
    const fs::path cfg = write_config(R"({
        "schema": "singdyn/1",
        "mode": "vortex",
        "mu": 1.0,
        "t0": 0.0, "t1": 0.02, "dt": 0.002,
        "initial": {"a": [0.1, -0.2], "phi": 0.3, "c1_0": 1.1, "sigma": 0.2}
    })");
    const fs::path o1 = scratch_dir(), o2 = scratch_dir();
    REQUIRE(run_scenario(cfg.string(), o1.string()).exit_code == 0);
    REQUIRE(run_scenario(cfg.string(), o2.string()).exit_code == 0);
    for (const char* name : {"vortex.csv", "trajectory.svg", "report.json"})
        CHECK(slurp(o1 / name) == slurp(o2 / name));
}

TEST_CASE("plot: two-point trajectory becomes a two-vertex polyline, deterministically") {
    const fs::path dir = scratch_dir();
    const fs::path csv = dir / "traj.csv";
    {
        std::ofstream f(csv);
        f << "x,y\n0,0\n1,1\n";
    }
    const fs::path svg1 = dir / "a.svg", svg2 = dir / "b.svg";
    plot_csv_to_svg(csv.string(), svg1.string());
    plot_csv_to_svg(csv.string(), svg2.string());
    const std::string s1 = slurp(svg1);
    CHECK(s1 == slurp(svg2));
    const size_t pos = s1.find("<polyline");
    REQUIRE(pos != std::string::npos);
    const size_t pts = s1.find("points=\"", pos);
    const size_t end = s1.find('"', pts + 8);
    const std::string pointlist = s1.substr(pts + 8, end - pts - 8);
    CHECK(std::count(pointlist.begin(), pointlist.end(), ',') == 2);
    CHECK(s1.find("width=\"800\"") != std::string::npos);
    CHECK(s1.find("height=\"600\"") != std::string::npos);
}

TEST_CASE("plot rejects empty or non-numeric CSV input") {
    const fs::path dir = scratch_dir();
    const fs::path bad = dir / "bad.csv";
    {
        std::ofstream f(bad);
        f << "x,y\n1,notanumber\n";
    }
    CHECK_THROWS_AS(plot_csv_to_svg(bad.string(), (dir / "o.svg").string()), ConfigError);
    const fs::path empty = dir / "empty.csv";
    { std::ofstream f(empty); }
    CHECK_THROWS_AS(plot_csv_to_svg(empty.string(), (dir / "o.svg").string()),
                    ConfigError);
}

TEST_CASE("csv round trip at full precision") {
    std::ostringstream ss;
    {
        CsvWriter w(ss, {"a", "b"});
        w.row(std::vector<double>{1.0 / 3.0, -2.718281828459045e-7});
        w.row(std::vector<double>{6.02214076e23, 0.1});
    }
    std::istringstream in(ss.str());
    const CsvTable t = read_csv(in);
    CHECK(t.rows[0][0] == 1.0 / 3.0);
    CHECK(t.rows[0][1] == -2.718281828459045e-7);
    CHECK(t.rows[1][0] == 6.02214076e23);
    CHECK(t.rows[1][1] == 0.1);
}

}  // TEST_SUITE
