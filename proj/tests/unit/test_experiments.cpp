#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "slzflow/experiments.hpp"
#include "slzflow/potentials.hpp"

using namespace slz;

namespace {

std::string base_config(const std::string& run_type, const std::string& extra = "") {
    return "[space]\n"
           "z = 1.0\n"
           "kappa2 = 1.0\n"
           "profile = exponential\n"
           "s = 1\n"
           "[run]\n"
           "type = " + run_type + "\n"
           "seed = 42\n" +
           extra;
}

} // namespace

TEST_CASE("config: parse, serialize, typed access") {
    const std::string text = "[space]\nz = 1.5\nkappa2 = -1\nprofile = identity\n"
                             "# comment\n[run]\ntype = audit\nseed = 7\n";
    const Config cfg = Config::parse_string(text);
    CHECK(cfg.get_double("space", "z") == 1.5);
    CHECK(cfg.get("run", "type") == "audit");
    CHECK(cfg.get_int_or("run", "seed", 0) == 7);
    CHECK(cfg.get_or("run", "missing", "d") == "d");
    CHECK_THROWS_AS(cfg.get("run", "missing"), ConfigError);

    // serialize -> parse -> serialize is a fixed point
    const std::string s1 = cfg.serialize();
    const std::string s2 = Config::parse_string(s1).serialize();
    CHECK(s1 == s2);

    CHECK_THROWS_AS(Config::parse_string("key = 1\n"), ConfigError);       // outside section
    CHECK_THROWS_AS(Config::parse_string("[a]\nbad line\n"), ConfigError); // no '='
    CHECK_THROWS_AS(Config::parse_string("[a]\nx = 1\nx = 2\n"), ConfigError);
}

TEST_CASE("experiment config: validation and unknown-key rejection") {
    CHECK_THROWS_AS(ExperimentConfig::from_config(
                        Config::parse_string(base_config("audit", "[bogus]\nx = 1\n"))),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_config(
                        Config::parse_string(base_config("audit", "[audit]\nnope = 1\n"))),
                    ConfigError);
    CHECK_THROWS_AS(
        ExperimentConfig::from_config(Config::parse_string(base_config("not-a-run"))),
        ConfigError);
    // kappa2 = 0 violates the module precondition
    CHECK_THROWS_AS(ExperimentConfig::from_config(Config::parse_string(
                        "[space]\nz = 1\nkappa2 = 0\nprofile = identity\n[run]\ntype = audit\n")),
                    ConfigError);
    // empty grid
    CHECK_THROWS_AS(ExperimentConfig::from_config(Config::parse_string(base_config(
                        "curvature-grid", "[curvature]\nr_count = 0\n"))),
                    ConfigError);
}

TEST_CASE("curvature grid: constant-curvature scalar column") {
    const auto ec = ExperimentConfig::from_config(Config::parse_string(base_config(
        "curvature-grid", "[curvature]\nchart = spherical\nr_count = 6\ntheta_count = 4\n")));
    const ResultRecord rec = run_curvature_grid(ec);
    CHECK(rec.all_pass);
    const std::size_t scalar_col = 5;
    for (const auto& row : rec.rows)
        CHECK(std::abs(row[scalar_col] - 6.0) <= 1e-8);
}

TEST_CASE("curvature grid: g == 1 scalar formula and per-point domain flags") {
    const auto ec = ExperimentConfig::from_config(Config::parse_string(
        "[space]\nz = 1.0\nkappa2 = 1.0\nprofile = identity\n"
        "[run]\ntype = curvature-grid\n"
        "[curvature]\nchart = spherical\nr_min = 0.2\nr_max = 2.0\nr_count = 8\n"
        "theta_min = 0.3\ntheta_max = 1.2\ntheta_count = 3\n"));
    const ResultRecord rec = run_curvature_grid(ec);
    bool saw_flag = false;
    for (std::size_t i = 0; i < rec.rows.size(); ++i) {
        if (!rec.row_flags[i].empty()) {
            saw_flag = true; // r beyond pi/2 rows are flagged, not fatal
            continue;
        }
        const double r = rec.rows[i][0];
        CHECK(rec.rows[i][5] ==
              doctest::Approx(-2.5 * std::sin(r) * std::tan(r)).epsilon(1e-10));
    }
    CHECK(saw_flag);
}

TEST_CASE("geodesic run: flat free flight passes, boundary escape is flagged") {
    const auto flat = ExperimentConfig::from_config(Config::parse_string(
        "[space]\nz = 1e-12\nkappa2 = 1.0\nprofile = identity\n"
        "[run]\ntype = geodesic\n"
        "[geodesic]\nchart = cartesian\nx1 = 0.1\nx2 = -0.2\nx3 = 0.3\n"
        "p1 = 0.4\np2 = 0.3\np3 = -0.5\nt_end = 5\n"));
    const ResultRecord rec = run_geodesic(flat);
    CHECK(rec.all_pass);
    for (const auto& [name, value] : rec.summary_values)
        if (name == "truncated") CHECK(value == 0.0);

    const auto escape = ExperimentConfig::from_config(Config::parse_string(
        "[space]\nz = 1.0\nkappa2 = 1.0\nprofile = exponential\ns = 1\n"
        "[run]\ntype = geodesic\n"
        "[geodesic]\nchart = spherical\nx1 = 0.7\nx2 = 0.8\nx3 = 0.9\n"
        "p1 = 0.5\np2 = 0.2\np3 = 0.3\nt_end = 10\n"));
    const ResultRecord esc = run_geodesic(escape);
    double truncated = 0, t_reached = 10;
    for (const auto& [name, value] : esc.summary_values) {
        if (name == "truncated") truncated = value;
        if (name == "t_reached") t_reached = value;
    }
    CHECK(truncated == 1.0);
    CHECK(t_reached < 10.0);
}

TEST_CASE("audit: all properties pass for a built-in profile, deterministically") {
    const auto ec = ExperimentConfig::from_config(Config::parse_string(base_config(
        "audit", "[audit]\nstates = 40\nrank_states = 10\noracle_points = 5\n")));
    const ResultRecord a = run_audit(ec);
    CHECK(a.all_pass);
    const ResultRecord b = run_audit(ec);
    CHECK(a.to_json() == b.to_json()); // identical seed, identical bytes

    // different seed changes the draws but not the verdict
    Config cfg = Config::parse_string(base_config(
        "audit", "[audit]\nstates = 40\nrank_states = 10\noracle_points = 5\n"));
    cfg.set("run", "seed", "77");
    const ResultRecord c = run_audit(ExperimentConfig::from_config(cfg));
    CHECK(c.all_pass);
    CHECK(c.to_json() != a.to_json());
}

TEST_CASE("audit: staeckel negative control on the identity profile") {
    const auto ec = ExperimentConfig::from_config(Config::parse_string(
        "[space]\nz = 0.5\nkappa2 = 1.0\nprofile = identity\n"
        "[run]\ntype = audit\nseed = 11\n"
        "[audit]\nstates = 10\nrank_states = 5\noracle_points = 3\ncheck_staeckel = true\n"));
    const ResultRecord rec = run_audit(ec);
    double drift = 0, expected = 1;
    for (const auto& [name, value] : rec.summary_values) {
        if (name == "staeckel_drift") drift = value;
        if (name == "staeckel_expected_conserved") expected = value;
    }
    CHECK(expected == 0.0);
    CHECK(drift > 1e-3);
    for (const auto& [name, pass] : rec.summary_flags)
        if (name == "staeckel_behavior") CHECK(pass);
}

TEST_CASE("config echo round trip reproduces the record byte for byte") {
    const auto ec = ExperimentConfig::from_config(Config::parse_string(base_config(
        "audit", "[audit]\nstates = 15\nrank_states = 5\noracle_points = 3\n")));
    const ResultRecord first = run_audit(ec);

    Config echo;
    for (const auto& [key, value] : first.config_echo) {
        const auto dot = key.find('.');
        echo.set(key.substr(0, dot), key.substr(dot + 1), value);
    }
    const auto ec2 = ExperimentConfig::from_config(Config::parse_string(echo.serialize()));
    const ResultRecord second = run_audit(ec2);
    CHECK(first.to_json() == second.to_json());
}

TEST_CASE("potential scan: dual-path agreement and the singular oscillator row") {
    const auto cc = ExperimentConfig::from_config(Config::parse_string(
        "[space]\nz = 1.0\nkappa2 = 1.0\nprofile = exponential\ns = 1\n"
        "[run]\ntype = potential-scan\n"
        "[potential]\nr_min = 0.05\nr_max = 1.5\ncount = 30\n"));
    const ResultRecord rec = run_potential_scan(cc);
    CHECK(rec.all_pass);
    for (std::size_t i = 0; i < rec.rows.size(); ++i) {
        const double r = rec.rows[i][0];
        CHECK(rec.rows[i][1] == doctest::Approx(-1.0 / std::tan(r)).epsilon(1e-9));
    }

    // oscillator scan across a zero of U: the k < 0 power-cosine Green
    // function changes sign inside the patch; build the grid so its middle
    // node lands on the zero
    SpaceSpec pcspec;
    pcspec.z = 1.0;
    pcspec.profile = ConformalProfile::power_cosine(-0.4);
    const GreenFunction gf(pcspec.profile, pcspec.z);
    double lo = 0.2, hi = 1.5;
    REQUIRE(gf.value(lo) < 0.0);
    REQUIRE(gf.value(hi) > 0.0);
    for (int i = 0; i < 90; ++i) {
        const double mid = 0.5 * (lo + hi);
        (gf.value(mid) < 0.0 ? lo : hi) = mid;
    }
    const double r_zero = 0.5 * (lo + hi);
    char grid[256];
    std::snprintf(grid, sizeof(grid),
                  "[potential]\nr_min = %.17g\nr_max = %.17g\ncount = 5\n", r_zero - 0.2,
                  r_zero + 0.2);
    const auto pc = ExperimentConfig::from_config(Config::parse_string(
        std::string("[space]\nz = 1.0\nkappa2 = 1.0\nprofile = power_cosine\nk = -0.4\n"
                    "[run]\ntype = potential-scan\n") +
        grid));
    const ResultRecord scan = run_potential_scan(pc);
    REQUIRE(scan.rows.size() == 5);
    CHECK(scan.row_flags[2] == "oscillator_singular");
    const std::size_t osc_col = 4;
    for (std::size_t i : {std::size_t(0), std::size_t(4)}) {
        CHECK(scan.row_flags[i].empty());
        CHECK(std::isfinite(scan.rows[i][osc_col]));
        CHECK(std::abs(scan.rows[i][osc_col]) < 1e6);
    }
}

TEST_CASE("result record serialization shapes") {
    ResultRecord rec;
    rec.run_type = "audit";
    rec.columns = {"a", "b"};
    rec.rows = {{1.0, 2.5}};
    rec.row_flags = {""};
    rec.add_summary("x", 0.125);
    rec.add_property("ok", true);
    const std::string js = rec.to_json();
    CHECK(js.find("\"schema_version\": 1") != std::string::npos);
    CHECK(js.find("\"x\": 0.125") != std::string::npos);
    const std::string csv = rec.to_csv();
    CHECK(csv.find("a,b,flag") != std::string::npos);
    CHECK(csv.find("1,2.5,") != std::string::npos);
}
