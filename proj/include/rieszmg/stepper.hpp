/// @file stepper.hpp
/// @brief Crank-Nicolson time stepping with directional splitting. Every
///        implicit factor (I - A_axis) is block-diagonal over grid lines, so
///        each time level reduces to independent 1D multigrid line solves.
///        Coefficients and forcing are sampled at the half time level.

#pragma once

#include "rieszmg/multigrid.hpp"
#include "rieszmg/problems.hpp"

namespace rieszmg {

enum class Scheme {
    cn,   // 1D Crank-Nicolson
    dad,  // 2D/3D splitting with a combined first sweep and corrector sweeps
    prad, // 2D splitting with symmetric half-step sweeps
};

Scheme scheme_from_name(const std::string& name);
std::string scheme_name(Scheme scheme);

/// Aggregated line-solve statistics for one sweep direction.
struct DirectionReport {
    int axis = 0;
    int line_solves = 0;
    long total_iterations = 0;
    bool converged = true;

    double avg_iterations() const {
        return line_solves == 0 ? 0.0 : static_cast<double>(total_iterations) / line_solves;
    }
};

/// One time level: per-direction solve statistics and wall time.
struct StepReport {
    std::vector<DirectionReport> directions;
    double seconds = 0.0;
};

/// Optional test hook capturing the fields after each implicit sweep.
struct StepTrace {
    std::vector<Field> sweeps;
};

/// Whole-run aggregate.
struct RunReport {
    long line_solves = 0;
    long total_iterations = 0;
    double seconds = 0.0;
    bool converged = true;

    double avg_iterations() const {
        return line_solves == 0 ? 0.0 : static_cast<double>(total_iterations) / line_solves;
    }
};

/// Advances u from time level k to k+1 with the scheme matching the problem
/// dimension. u must hold the level-k field on entry.
StepReport cn_step_1d(const ManufacturedProblem& problem, const GridSpec& grid, int k,
                      Field& u, MgmSolver& solver, FftWorkspace& ws,
                      StepTrace* trace = nullptr);
StepReport dad_step_2d(const ManufacturedProblem& problem, const GridSpec& grid, int k,
                       Field& u, MgmSolver& solver, FftWorkspace& ws,
                       StepTrace* trace = nullptr);
StepReport prad_step_2d(const ManufacturedProblem& problem, const GridSpec& grid, int k,
                        Field& u, MgmSolver& solver, FftWorkspace& ws,
                        StepTrace* trace = nullptr);
StepReport dad_step_3d(const ManufacturedProblem& problem, const GridSpec& grid, int k,
                       Field& u, MgmSolver& solver, FftWorkspace& ws,
                       StepTrace* trace = nullptr);

/// Runs all time levels from the problem's initial condition. Returns the
/// final field and fills report if given. Rejects scheme/dimension pairs
/// that have no stepping rule (cn is 1D, prad is 2D, dad is 2D or 3D).
Field run_time_stepping(const ManufacturedProblem& problem, const GridSpec& grid,
                        Scheme scheme, const SolveControl& control,
                        RunReport* report = nullptr);

} // namespace rieszmg
