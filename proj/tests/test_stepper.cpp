#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "support/oracles.hpp"

using namespace rieszmg;
using namespace rieszmg::testing;

namespace {

SolveControl tight_control() {
    SolveControl control;
    control.tolerance = 1e-12;
    return control;
}

Eigen::VectorXd sample_vec(const CoefficientField& fn, const GridSpec& grid, double t) {
    return to_vector(sample_on_grid(fn, grid, t));
}

double rel_gap(const Field& a, const Eigen::VectorXd& b) {
    double scale = 0.0;
    for (int i = 0; i < b.size(); ++i) {
        scale = std::max(scale, std::abs(b[i]));
    }
    double gap = 0.0;
    for (std::size_t p = 0; p < a.v.size(); ++p) {
        gap = std::max(gap, std::abs(a.v[p] - b[static_cast<Eigen::Index>(p)]));
    }
    return gap / scale;
}

} // namespace

TEST_CASE("scheme names round-trip and bad names are rejected") {
    CHECK(scheme_from_name("cn") == Scheme::cn);
    CHECK(scheme_from_name("dad") == Scheme::dad);
    CHECK(scheme_from_name("prad") == Scheme::prad);
    CHECK(scheme_name(Scheme::dad) == "dad");
    CHECK(scheme_name(scheme_from_name(scheme_name(Scheme::prad))) == "prad");
    CHECK_THROWS_AS(scheme_from_name("adi"), std::invalid_argument);
}

TEST_CASE("one 1D step equals the dense two-level solve") {
    const auto problem = problem_1d(1.5);
    const GridSpec grid = grid_for(problem, 16, 2);
    const double dt = grid.dt();
    const double t_half = 0.5 * dt;
    const FractionalOrder nu = problem.order(0);

    const Eigen::MatrixXd A =
        dense_directional(grid, 0, nu, problem.coefficient[0], t_half);
    const Eigen::VectorXd u0 = sample_vec(problem.exact, grid, 0.0);
    const Eigen::VectorXd f = sample_vec(problem.forcing, grid, t_half);
    const int n = grid.interior(0);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    const Eigen::VectorXd want =
        (I - A).partialPivLu().solve((I + A) * u0 + dt * f);

    MgmSolver solver(tight_control());
    FftWorkspace ws;
    Field u = sample_on_grid(problem.exact, grid, 0.0);
    StepTrace trace;
    const StepReport report = cn_step_1d(problem, grid, 0, u, solver, ws, &trace);

    CHECK(rel_gap(u, want) < 1e-8);
    REQUIRE(trace.sweeps.size() == 1);
    CHECK(max_abs_diff(trace.sweeps[0], u) == 0.0);
    REQUIRE(report.directions.size() == 1);
    CHECK(report.directions[0].line_solves == 1);
    CHECK(report.directions[0].converged);
}

TEST_CASE("one 2D combined-sweep step equals the dense factored solve") {
    const auto problem = problem_2d(1.8, 1.9);
    const GridSpec grid = grid_for(problem, 8, 2);
    const double dt = grid.dt();
    const double t_half = 0.5 * dt;

    const Eigen::MatrixXd Ax =
        dense_directional(grid, 0, problem.order(0), problem.coefficient[0], t_half);
    const Eigen::MatrixXd Ay =
        dense_directional(grid, 1, problem.order(1), problem.coefficient[1], t_half);
    const Eigen::VectorXd u0 = sample_vec(problem.exact, grid, 0.0);
    const Eigen::VectorXd f = sample_vec(problem.forcing, grid, t_half);
    const int total = grid.interior(0) * grid.interior(1);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(total, total);

    const Eigen::VectorXd star =
        (I - Ax).partialPivLu().solve((I + Ax + 2.0 * Ay) * u0 + dt * f);
    const Eigen::VectorXd want = (I - Ay).partialPivLu().solve(star - Ay * u0);

    MgmSolver solver(tight_control());
    FftWorkspace ws;
    Field u = sample_on_grid(problem.exact, grid, 0.0);
    StepTrace trace;
    dad_step_2d(problem, grid, 0, u, solver, ws, &trace);

    REQUIRE(trace.sweeps.size() == 2);
    CHECK(rel_gap(trace.sweeps[0], star) < 1e-8);
    CHECK(rel_gap(u, want) < 1e-8);
}

TEST_CASE("one 2D symmetric-sweep step equals the dense factored solve") {
    const auto problem = problem_2d(1.2, 1.6);
    const GridSpec grid = grid_for(problem, 8, 4);
    const double dt = grid.dt();
    const double t_half = 0.5 * dt;

    const Eigen::MatrixXd Ax =
        dense_directional(grid, 0, problem.order(0), problem.coefficient[0], t_half);
    const Eigen::MatrixXd Ay =
        dense_directional(grid, 1, problem.order(1), problem.coefficient[1], t_half);
    const Eigen::VectorXd u0 = sample_vec(problem.exact, grid, 0.0);
    const Eigen::VectorXd f = sample_vec(problem.forcing, grid, t_half);
    const int total = grid.interior(0) * grid.interior(1);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(total, total);

    const Eigen::VectorXd star =
        (I - Ax).partialPivLu().solve((I + Ay) * u0 + 0.5 * dt * f);
    const Eigen::VectorXd want =
        (I - Ay).partialPivLu().solve((I + Ax) * star + 0.5 * dt * f);

    MgmSolver solver(tight_control());
    FftWorkspace ws;
    Field u = sample_on_grid(problem.exact, grid, 0.0);
    StepTrace trace;
    prad_step_2d(problem, grid, 0, u, solver, ws, &trace);

    REQUIRE(trace.sweeps.size() == 2);
    CHECK(rel_gap(trace.sweeps[0], star) < 1e-8);
    CHECK(rel_gap(u, want) < 1e-8);
}

TEST_CASE("one 3D step equals the dense factored solve") {
    const auto problem = problem_3d(1.8, 1.9, 1.8);
    const GridSpec grid = grid_for(problem, 8, 2);
    const double dt = grid.dt();
    const double t_half = 0.5 * dt;

    const Eigen::MatrixXd Ax =
        dense_directional(grid, 0, problem.order(0), problem.coefficient[0], t_half);
    const Eigen::MatrixXd Ay =
        dense_directional(grid, 1, problem.order(1), problem.coefficient[1], t_half);
    const Eigen::MatrixXd Az =
        dense_directional(grid, 2, problem.order(2), problem.coefficient[2], t_half);
    const Eigen::VectorXd u0 = sample_vec(problem.exact, grid, 0.0);
    const Eigen::VectorXd f = sample_vec(problem.forcing, grid, t_half);
    const int total = grid.interior(0) * grid.interior(1) * grid.interior(2);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(total, total);

    const Eigen::VectorXd s1 = (I - Ax).partialPivLu().solve(
        (I + Ax + 2.0 * Ay + 2.0 * Az) * u0 + dt * f);
    const Eigen::VectorXd s2 = (I - Ay).partialPivLu().solve(s1 - Ay * u0);
    const Eigen::VectorXd want = (I - Az).partialPivLu().solve(s2 - Az * u0);

    MgmSolver solver(tight_control());
    FftWorkspace ws;
    Field u = sample_on_grid(problem.exact, grid, 0.0);
    StepTrace trace;
    dad_step_3d(problem, grid, 0, u, solver, ws, &trace);

    REQUIRE(trace.sweeps.size() == 3);
    CHECK(rel_gap(trace.sweeps[0], s1) < 1e-8);
    CHECK(rel_gap(trace.sweeps[1], s2) < 1e-8);
    CHECK(rel_gap(u, want) < 1e-8);
}

TEST_CASE("the two 2D splittings agree to solver accuracy") {
    const auto problem = problem_2d(1.8, 1.9);
    const GridSpec grid = grid_for(problem, 16, 16);
    const SolveControl control = tight_control();

    const Field a = run_time_stepping(problem, grid, Scheme::dad, control);
    const Field b = run_time_stepping(problem, grid, Scheme::prad, control);
    const double scale = std::max(a.max_abs(), b.max_abs());
    CHECK(max_abs_diff(a, b) / scale < 1e-9);
}

TEST_CASE("time accuracy is second order on a fixed grid") {
    const auto problem = problem_1d(1.5);
    SolveControl control = tight_control();
    const Field u4 = run_time_stepping(problem, grid_for(problem, 32, 4), Scheme::cn, control);
    const Field u8 = run_time_stepping(problem, grid_for(problem, 32, 8), Scheme::cn, control);
    const Field u16 = run_time_stepping(problem, grid_for(problem, 32, 16), Scheme::cn, control);
    const double d1 = max_abs_diff(u4, u8);
    const double d2 = max_abs_diff(u8, u16);
    const double ratio = d1 / d2;
    // Halving dt shrinks the dt^2 error gap by 4.
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.5);
}

TEST_CASE("run aggregates per-line statistics") {
    const auto problem = problem_2d(1.5, 1.5);
    const GridSpec grid = grid_for(problem, 16, 4);
    RunReport report;
    run_time_stepping(problem, grid, Scheme::dad, SolveControl{}, &report);
    // 4 steps, each solving 15 lines per direction in two directions.
    CHECK(report.line_solves == 4 * 2 * 15);
    CHECK(report.total_iterations > 0);
    CHECK(report.converged);
    CHECK(report.avg_iterations() > 0.5);
    CHECK(report.seconds >= 0.0);
}

TEST_CASE("runs are deterministic down to the last bit") {
    const auto problem = problem_2d(1.3, 1.7);
    const GridSpec grid = grid_for(problem, 8, 4);
    const Field a = run_time_stepping(problem, grid, Scheme::dad, SolveControl{});
    const Field b = run_time_stepping(problem, grid, Scheme::dad, SolveControl{});
    CHECK(max_abs_diff(a, b) == 0.0);
}

TEST_CASE("scheme and dimension pairs are validated") {
    const auto p1 = problem_1d(1.5);
    const auto p2 = problem_2d(1.5, 1.5);
    const auto p3 = problem_3d(1.5, 1.5, 1.5);
    const SolveControl control;
    CHECK_THROWS_AS(
        run_time_stepping(p2, grid_for(p2, 8, 2), Scheme::cn, control),
        std::invalid_argument);
    CHECK_THROWS_AS(
        run_time_stepping(p1, grid_for(p1, 8, 2), Scheme::dad, control),
        std::invalid_argument);
    CHECK_THROWS_AS(
        run_time_stepping(p1, grid_for(p1, 8, 2), Scheme::prad, control),
        std::invalid_argument);
    CHECK_THROWS_AS(
        run_time_stepping(p3, grid_for(p3, 8, 2), Scheme::prad, control),
        std::invalid_argument);
    // Grid dimension must match the problem too.
    CHECK_THROWS_AS(
        run_time_stepping(p1, grid_for(p2, 8, 2), Scheme::cn, control),
        std::invalid_argument);
}

TEST_CASE("line-solve failures name the line and axis") {
    const auto problem = problem_1d(1.9);
    const GridSpec grid = grid_for(problem, 64, 64);
    SolveControl control;
    control.tolerance = 1e-14;
    control.max_iterations = 1;
    try {
        run_time_stepping(problem, grid, Scheme::cn, control);
        FAIL("expected a convergence error");
    } catch (const ConvergenceError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line") != std::string::npos);
        CHECK(msg.find("axis") != std::string::npos);
        CHECK(!e.residual_history().empty());
    }
}

TEST_CASE("solutions stay bounded far beyond the accuracy horizon") {
    const auto problem = problem_1d(1.5);
    // dt = 10 dx: far past any accuracy regime, still unconditionally stable.
    const int cells = 64;
    const int steps = 40;
    const double dt = 10.0 / cells;
    const GridSpec grid({AxisSpec{0.0, 1.0, cells}}, steps, steps * dt);
    const Field u0 = sample_on_grid(problem.exact, grid, 0.0);
    const Field u = run_time_stepping(problem, grid, Scheme::cn, SolveControl{});
    CHECK(u.max_abs() <= 2.0 * u0.max_abs());
}
