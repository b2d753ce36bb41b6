#include "rieszmg/stepper.hpp"

#include <chrono>
#include <stdexcept>

namespace rieszmg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Solves (I - A_axis) out_line = rhs_line on every grid line along the axis,
// warm-started from the guess field (the current time level). Builds one
// line hierarchy per line; spectra are shared through the process-wide cache,
// so the per-line work is the coefficient sampling and the coarse LU.
DirectionReport solve_direction(const ManufacturedProblem& problem, const GridSpec& grid,
                                int axis, double t_half, const Field& rhs,
                                const Field& guess, Field& out, MgmSolver& solver) {
    DirectionReport report;
    report.axis = axis;

    const FractionalOrder nu = problem.order(axis);
    const CoefficientField& coeff = problem.coefficient[static_cast<std::size_t>(axis)];
    const LineWalker walk(rhs.extent, axis);
    const double lo = grid.axis(axis).lo;
    const double dxa = grid.dx(axis);
    const int dim = grid.dimension();

    std::vector<double> line_rhs(static_cast<std::size_t>(walk.length));
    std::vector<double> line_u(static_cast<std::size_t>(walk.length));

    for (int ln = 0; ln < walk.count; ++ln) {
        // Fixed orthogonal coordinates of this line.
        double fixed[3] = {0.0, 0.0, 0.0};
        {
            const std::size_t base = walk.offset(ln);
            int idx[3] = {0, 0, 0};
            std::size_t rem = base;
            idx[2] = static_cast<int>(rem / (static_cast<std::size_t>(rhs.extent[0]) *
                                             rhs.extent[1]));
            rem %= static_cast<std::size_t>(rhs.extent[0]) * rhs.extent[1];
            idx[1] = static_cast<int>(rem / rhs.extent[0]);
            idx[0] = static_cast<int>(rem % rhs.extent[0]);
            for (int a = 0; a < dim; ++a) {
                if (a != axis) {
                    fixed[a] = grid.coord(a, idx[a]);
                }
            }
        }
        auto coeff_line = [&](double s) {
            double pt[3] = {fixed[0], fixed[1], fixed[2]};
            pt[axis] = s;
            return coeff(pt[0], pt[1], pt[2], t_half);
        };
        LineHierarchy hier(nu, lo, dxa, walk.length, grid.dt(), coeff_line,
                           solver.control().coarsest_size);

        const std::size_t base = walk.offset(ln);
        for (int i = 0; i < walk.length; ++i) {
            const std::size_t p = base + static_cast<std::size_t>(i) * walk.stride;
            line_rhs[static_cast<std::size_t>(i)] = rhs.v[p];
            line_u[static_cast<std::size_t>(i)] = guess.v[p];
        }
        try {
            const SolveStats stats = solver.solve(hier, line_u, line_rhs);
            report.total_iterations += stats.iterations;
            report.converged = report.converged && stats.converged;
        } catch (const ConvergenceError& err) {
            throw ConvergenceError("line " + std::to_string(ln) + " along axis " +
                                       std::to_string(axis) + ": " + err.what(),
                                   err.residual_history());
        }
        ++report.line_solves;
        for (int i = 0; i < walk.length; ++i) {
            out.v[base + static_cast<std::size_t>(i) * walk.stride] =
                line_u[static_cast<std::size_t>(i)];
        }
    }
    return report;
}

void axpy(Field& y, double a, const Field& x) {
    for (std::size_t p = 0; p < y.v.size(); ++p) {
        y.v[p] += a * x.v[p];
    }
}

} // namespace

Scheme scheme_from_name(const std::string& name) {
    if (name == "cn") return Scheme::cn;
    if (name == "dad") return Scheme::dad;
    if (name == "prad") return Scheme::prad;
    throw std::invalid_argument("unknown scheme '" + name + "' (expected cn, dad, or prad)");
}

std::string scheme_name(Scheme scheme) {
    switch (scheme) {
        case Scheme::cn: return "cn";
        case Scheme::dad: return "dad";
        default: return "prad";
    }
}

StepReport cn_step_1d(const ManufacturedProblem& problem, const GridSpec& grid, int k,
                      Field& u, MgmSolver& solver, FftWorkspace& ws, StepTrace* trace) {
    const auto t0 = Clock::now();
    const double dt = grid.dt();
    const double t_half = (k + 0.5) * dt;

    const DirectionalOperator ax =
        build_directional_operator(grid, 0, problem.order(0), problem.coefficient[0], t_half);

    Field rhs(grid);
    apply_shifted(ax, u, rhs, 1.0, ws); // (I + A) u
    const Field f = sample_on_grid(problem.forcing, grid, t_half);
    axpy(rhs, dt, f);

    Field next = u;
    StepReport report;
    report.directions.push_back(
        solve_direction(problem, grid, 0, t_half, rhs, u, next, solver));
    u = std::move(next);
    if (trace != nullptr) {
        trace->sweeps.push_back(u);
    }
    report.seconds = seconds_since(t0);
    return report;
}

StepReport dad_step_2d(const ManufacturedProblem& problem, const GridSpec& grid, int k,
                       Field& u, MgmSolver& solver, FftWorkspace& ws, StepTrace* trace) {
    const auto t0 = Clock::now();
    const double dt = grid.dt();
    const double t_half = (k + 0.5) * dt;

    const DirectionalOperator ax =
        build_directional_operator(grid, 0, problem.order(0), problem.coefficient[0], t_half);
    const DirectionalOperator ay =
        build_directional_operator(grid, 1, problem.order(1), problem.coefficient[1], t_half);

    // Sweep 1: (I - A_x) u* = (I + A_x + 2 A_y) u + dt f.
    Field rhs(grid);
    Field tmp(grid);
    apply_shifted(ax, u, rhs, 1.0, ws);
    apply(ay, u, tmp, ws);
    axpy(rhs, 2.0, tmp);
    const Field f = sample_on_grid(problem.forcing, grid, t_half);
    axpy(rhs, dt, f);

    StepReport report;
    Field ustar(grid);
    report.directions.push_back(
        solve_direction(problem, grid, 0, t_half, rhs, u, ustar, solver));
    if (trace != nullptr) {
        trace->sweeps.push_back(ustar);
    }

    // Sweep 2: (I - A_y) u^{k+1} = u* - A_y u.
    rhs = ustar;
    axpy(rhs, -1.0, tmp); // tmp still holds A_y u
    Field next(grid);
    report.directions.push_back(
        solve_direction(problem, grid, 1, t_half, rhs, u, next, solver));
    u = std::move(next);
    if (trace != nullptr) {
        trace->sweeps.push_back(u);
    }
    report.seconds = seconds_since(t0);
    return report;
}

StepReport prad_step_2d(const ManufacturedProblem& problem, const GridSpec& grid, int k,
                        Field& u, MgmSolver& solver, FftWorkspace& ws, StepTrace* trace) {
    const auto t0 = Clock::now();
    const double dt = grid.dt();
    const double t_half = (k + 0.5) * dt;

    const DirectionalOperator ax =
        build_directional_operator(grid, 0, problem.order(0), problem.coefficient[0], t_half);
    const DirectionalOperator ay =
        build_directional_operator(grid, 1, problem.order(1), problem.coefficient[1], t_half);
    const Field f = sample_on_grid(problem.forcing, grid, t_half);

    // Sweep 1: (I - A_x) u* = (I + A_y) u + dt/2 f.
    Field rhs(grid);
    apply_shifted(ay, u, rhs, 1.0, ws);
    axpy(rhs, 0.5 * dt, f);

    StepReport report;
    Field ustar(grid);
    report.directions.push_back(
        solve_direction(problem, grid, 0, t_half, rhs, u, ustar, solver));
    if (trace != nullptr) {
        trace->sweeps.push_back(ustar);
    }

    // Sweep 2: (I - A_y) u^{k+1} = (I + A_x) u* + dt/2 f.
    apply_shifted(ax, ustar, rhs, 1.0, ws);
    axpy(rhs, 0.5 * dt, f);
    Field next(grid);
    report.directions.push_back(
        solve_direction(problem, grid, 1, t_half, rhs, u, next, solver));
    u = std::move(next);
    if (trace != nullptr) {
        trace->sweeps.push_back(u);
    }
    report.seconds = seconds_since(t0);
    return report;
}

StepReport dad_step_3d(const ManufacturedProblem& problem, const GridSpec& grid, int k,
                       Field& u, MgmSolver& solver, FftWorkspace& ws, StepTrace* trace) {
    const auto t0 = Clock::now();
    const double dt = grid.dt();
    const double t_half = (k + 0.5) * dt;

    const DirectionalOperator ax =
        build_directional_operator(grid, 0, problem.order(0), problem.coefficient[0], t_half);
    const DirectionalOperator ay =
        build_directional_operator(grid, 1, problem.order(1), problem.coefficient[1], t_half);
    const DirectionalOperator az =
        build_directional_operator(grid, 2, problem.order(2), problem.coefficient[2], t_half);

    Field ayu(grid);
    Field azu(grid);
    apply(ay, u, ayu, ws);
    apply(az, u, azu, ws);

    // Sweep 1: (I - A_x) u1 = (I + A_x + 2 A_y + 2 A_z) u + dt f.
    Field rhs(grid);
    apply_shifted(ax, u, rhs, 1.0, ws);
    axpy(rhs, 2.0, ayu);
    axpy(rhs, 2.0, azu);
    const Field f = sample_on_grid(problem.forcing, grid, t_half);
    axpy(rhs, dt, f);

    StepReport report;
    Field stage(grid);
    report.directions.push_back(
        solve_direction(problem, grid, 0, t_half, rhs, u, stage, solver));
    if (trace != nullptr) {
        trace->sweeps.push_back(stage);
    }

    // Sweep 2: (I - A_y) u2 = u1 - A_y u.
    rhs = stage;
    axpy(rhs, -1.0, ayu);
    report.directions.push_back(
        solve_direction(problem, grid, 1, t_half, rhs, u, stage, solver));
    if (trace != nullptr) {
        trace->sweeps.push_back(stage);
    }

    // Sweep 3: (I - A_z) u^{k+1} = u2 - A_z u.
    rhs = stage;
    axpy(rhs, -1.0, azu);
    Field next(grid);
    report.directions.push_back(
        solve_direction(problem, grid, 2, t_half, rhs, u, next, solver));
    u = std::move(next);
    if (trace != nullptr) {
        trace->sweeps.push_back(u);
    }
    report.seconds = seconds_since(t0);
    return report;
}

Field run_time_stepping(const ManufacturedProblem& problem, const GridSpec& grid,
                        Scheme scheme, const SolveControl& control, RunReport* report) {
    if (grid.dimension() != problem.dimension) {
        throw std::invalid_argument("grid dimension does not match the problem");
    }
    const int dim = problem.dimension;
    const bool valid = (scheme == Scheme::cn && dim == 1) ||
                       (scheme == Scheme::prad && dim == 2) ||
                       (scheme == Scheme::dad && (dim == 2 || dim == 3));
    if (!valid) {
        throw std::invalid_argument("scheme '" + scheme_name(scheme) + "' has no " +
                                    std::to_string(dim) + "D stepping rule");
    }

    MgmSolver solver(control);
    FftWorkspace ws;
    Field u = sample_on_grid(problem.exact, grid, 0.0);

    RunReport agg;
    const auto t0 = Clock::now();
    for (int k = 0; k < grid.time_steps(); ++k) {
        StepReport step;
        if (scheme == Scheme::cn) {
            step = cn_step_1d(problem, grid, k, u, solver, ws);
        } else if (scheme == Scheme::prad) {
            step = prad_step_2d(problem, grid, k, u, solver, ws);
        } else if (dim == 2) {
            step = dad_step_2d(problem, grid, k, u, solver, ws);
        } else {
            step = dad_step_3d(problem, grid, k, u, solver, ws);
        }
        for (const DirectionReport& dir : step.directions) {
            agg.line_solves += dir.line_solves;
            agg.total_iterations += dir.total_iterations;
            agg.converged = agg.converged && dir.converged;
        }
    }
    agg.seconds = seconds_since(t0);
    if (report != nullptr) {
        *report = agg;
    }
    return u;
}

} // namespace rieszmg
