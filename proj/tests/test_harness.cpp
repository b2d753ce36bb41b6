#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "support/oracles.hpp"

using namespace rieszmg;

namespace {

std::vector<ConvergenceRow> sample_rows() {
    std::vector<ConvergenceRow> rows(3);
    rows[0] = {16, 1.0 / 3.0, std::nan(""), 10.0 / 3.0, 0.125};
    rows[1] = {32, 1.0 / 12.7, 1.93, 4.0, 0.5};
    rows[2] = {64, 1.0 / 51.3, 2.05, 4.25, 2.0};
    return rows;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path(name) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("a short study converges at second order") {
    RunConfig config;
    config.problem = "1d";
    config.alpha = 1.5;
    config.kmin = 3;
    config.kmax = 4;
    const StudyResult result = run_study(config);
    REQUIRE(result.ok());
    REQUIRE(result.rows.size() == 2);
    CHECK(result.rows[0].N == 8);
    CHECK(result.rows[1].N == 16);
    CHECK(std::isnan(result.rows[0].rate));
    CHECK(result.rows[1].rate > 1.5);
    CHECK(result.rows[1].rate < 2.5);
    CHECK(result.rows[1].max_error < result.rows[0].max_error);
    CHECK(result.rows[0].avg_iter >= 1.0);
    CHECK(result.rows[0].cpu_seconds >= 0.0);
}

TEST_CASE("the study driver resolves problems and schemes from the config") {
    RunConfig config;
    config.problem = "2d";
    config.alpha = 1.4;
    config.beta = 1.6;
    config.scheme = Scheme::prad;
    config.kmin = 3;
    config.kmax = 3;
    const StudyResult result = run_study(config);
    REQUIRE(result.ok());
    REQUIRE(result.rows.size() == 1);
    CHECK(result.rows[0].N == 8);

    config.problem = "coupled";
    CHECK_THROWS_AS(run_study(config), std::invalid_argument);
}

TEST_CASE("grid exponent bounds are validated") {
    RunConfig config;
    config.kmin = 2;
    config.kmax = 4;
    CHECK_THROWS_AS(run_study(config), std::invalid_argument);
    config.kmin = 5;
    config.kmax = 4;
    CHECK_THROWS_AS(run_study(config), std::invalid_argument);
}

TEST_CASE("a failing grid is reported without aborting the study") {
    RunConfig config;
    config.problem = "1d";
    config.kmin = 4;
    config.kmax = 4;
    config.control.max_iterations = 1;
    config.control.tolerance = 1e-14;
    const StudyResult result = run_study(config);
    CHECK_FALSE(result.ok());
    CHECK(result.rows.empty());
    REQUIRE(result.failures.size() == 1);
    CHECK(result.failures[0].find("N = 16") != std::string::npos);
}

TEST_CASE("CSV output round-trips bit for bit") {
    const std::vector<ConvergenceRow> rows = sample_rows();
    const std::string csv = emit_csv(rows);
    CHECK(csv.rfind("N,max_error,rate,avg_iter,cpu_seconds\n", 0) == 0);

    const std::vector<ConvergenceRow> back = parse_csv(csv);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CAPTURE(i);
        CHECK(back[i].N == rows[i].N);
        CHECK(back[i].max_error == rows[i].max_error); // exact, not approximate
        if (std::isnan(rows[i].rate)) {
            CHECK(std::isnan(back[i].rate));
        } else {
            CHECK(back[i].rate == rows[i].rate);
        }
        CHECK(back[i].avg_iter == rows[i].avg_iter);
        CHECK(back[i].cpu_seconds == rows[i].cpu_seconds);
    }

    // The first row's rate cell is empty, not a number.
    const std::string second_line = csv.substr(csv.find('\n') + 1);
    const std::string first_row = second_line.substr(0, second_line.find('\n'));
    CHECK(first_row.find(",,") != std::string::npos);
}

TEST_CASE("CSV parsing rejects malformed input") {
    CHECK_THROWS_AS(parse_csv("wrong,header\n1,2,3,4,5\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_csv(""), std::invalid_argument);
    const std::string good_header = "N,max_error,rate,avg_iter,cpu_seconds\n";
    CHECK_THROWS_AS(parse_csv(good_header + "16,not_a_number,,1,1\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_csv(good_header + "16,1e-3\n"), std::invalid_argument);
    CHECK(parse_csv(good_header).empty());
    CHECK(parse_csv(good_header + "\n\n").empty());
}

TEST_CASE("table rendering marks the first rate as empty") {
    const std::string table = emit_table(sample_rows());
    CHECK(table.find("max_error") != std::string::npos);
    CHECK(table.find("--") != std::string::npos);
    CHECK(table.find("3.3333e-01") != std::string::npos);
    CHECK(table.find("1.9300") != std::string::npos);
    // One header plus one line per row.
    CHECK(std::count(table.begin(), table.end(), '\n') == 4);
}

TEST_CASE("plot output is well-formed deterministic SVG") {
    const std::vector<ConvergenceRow> rows = sample_rows();
    const std::string svg = emit_plot_svg(rows);
    CHECK(svg.rfind("<svg ", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos); // reference slope
    CHECK(svg.find("polyline") != std::string::npos);
    // One marker per row.
    std::size_t circles = 0, pos = 0;
    while ((pos = svg.find("<circle", pos)) != std::string::npos) {
        ++circles;
        pos += 7;
    }
    CHECK(circles == rows.size());
    CHECK(emit_plot_svg(rows) == svg); // byte-identical on repeat
    CHECK_THROWS_AS(emit_plot_svg({}), std::invalid_argument);
}

TEST_CASE("config lines set every exposed knob") {
    RunConfig config;
    apply_config_line(config, "problem", "3d");
    apply_config_line(config, "alpha", "1.2");
    apply_config_line(config, "beta", "1.4");
    apply_config_line(config, "gamma", "1.8");
    apply_config_line(config, "scheme", "dad");
    apply_config_line(config, "kmin", "3");
    apply_config_line(config, "kmax", "5");
    apply_config_line(config, "tol", "1e-9");
    apply_config_line(config, "max_iter", "25");
    apply_config_line(config, "coarsest", "7");
    apply_config_line(config, "omega_pre", "0.9");
    apply_config_line(config, "omega_post", "0.6");
    apply_config_line(config, "sweeps_pre", "2");
    apply_config_line(config, "sweeps_post", "3");
    apply_config_line(config, "out", "errors.csv");
    apply_config_line(config, "plot", "errors.svg");

    CHECK(config.problem == "3d");
    CHECK(config.alpha == 1.2);
    CHECK(config.beta == 1.4);
    CHECK(config.gamma == 1.8);
    CHECK(config.scheme == Scheme::dad);
    CHECK(config.kmin == 3);
    CHECK(config.kmax == 5);
    CHECK(config.control.tolerance == 1e-9);
    CHECK(config.control.max_iterations == 25);
    CHECK(config.control.coarsest_size == 7);
    CHECK(config.control.smoother.omega_pre == 0.9);
    CHECK(config.control.smoother.omega_post == 0.6);
    CHECK(config.control.smoother.pre_sweeps == 2);
    CHECK(config.control.smoother.post_sweeps == 3);
    CHECK(config.out == "errors.csv");
    CHECK(config.plot == "errors.svg");

    // Later assignments win.
    apply_config_line(config, "alpha", "1.9");
    CHECK(config.alpha == 1.9);

    CHECK_THROWS_AS(apply_config_line(config, "omega", "0.5"), std::invalid_argument);
    CHECK_THROWS_AS(apply_config_line(config, "alpha", "fast"), std::invalid_argument);
}

TEST_CASE("config files parse comments, blanks, and spacing") {
    const TempFile file("harness_test_config.cfg",
                        "# study setup\n"
                        "\n"
                        "problem = 2d\n"
                        "alpha=1.8\n"
                        "  beta = 1.9  \n"
                        "scheme = prad # splitting\n"
                        "kmax = 7\n");
    const RunConfig config = parse_config_file(file.path);
    CHECK(config.problem == "2d");
    CHECK(config.alpha == 1.8);
    CHECK(config.beta == 1.9);
    CHECK(config.scheme == Scheme::prad);
    CHECK(config.kmax == 7);
    CHECK(config.kmin == 4); // untouched default

    CHECK_THROWS_AS(parse_config_file("no_such_file.cfg"), std::invalid_argument);

    const TempFile bad("harness_test_bad.cfg", "problem\n");
    CHECK_THROWS_AS(parse_config_file(bad.path), std::invalid_argument);
}

TEST_CASE("study rows describe strictly growing grids") {
    RunConfig config;
    config.kmin = 3;
    config.kmax = 5;
    config.problem = "1d";
    const StudyResult result = run_study(config);
    REQUIRE(result.rows.size() == 3);
    for (std::size_t i = 1; i < result.rows.size(); ++i) {
        CHECK(result.rows[i].N == 2 * result.rows[i - 1].N);
    }
}
