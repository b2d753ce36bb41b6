/// @file harness.hpp
/// @brief Convergence-study driver: runs a problem across a ladder of grids
///        (N = 2^k, N_t = N), measures max-norm errors against the exact
///        solution, and renders tables, CSV, and a log-log plot.

#pragma once

#include <string>
#include <vector>

#include "rieszmg/stepper.hpp"

namespace rieszmg {

struct RunConfig {
    std::string problem = "1d"; // 1d | 2d | 3d
    double alpha = 1.5;
    double beta = 1.5;
    double gamma = 1.5;
    Scheme scheme = Scheme::cn;
    int kmin = 4;
    int kmax = 6;
    SolveControl control;
    std::string out;  // CSV path; empty writes no file
    std::string plot; // SVG path; empty writes no file
};

/// One grid of the study. rate is NaN on the first row (rendered blank).
struct ConvergenceRow {
    int N = 0;
    double max_error = 0.0;
    double rate = 0.0;
    double avg_iter = 0.0;
    double cpu_seconds = 0.0;
};

struct StudyResult {
    std::vector<ConvergenceRow> rows;
    std::vector<std::string> failures; // one diagnostic per aborted grid

    bool ok() const noexcept { return failures.empty(); }
};

/// Runs grids N = 2^kmin .. 2^kmax. A failed grid is reported in failures
/// and the remaining grids still run.
StudyResult run_study(const ManufacturedProblem& problem, const RunConfig& config);

/// Resolves the problem from config.problem and the orders, then runs.
StudyResult run_study(const RunConfig& config);

/// Fixed-width text table of the study rows.
std::string emit_table(const std::vector<ConvergenceRow>& rows);

/// CSV with header "N,max_error,rate,avg_iter,cpu_seconds". Values use
/// full precision so they round-trip through parsing; the first row's rate
/// is empty.
std::string emit_csv(const std::vector<ConvergenceRow>& rows);
std::vector<ConvergenceRow> parse_csv(const std::string& text);

/// Self-contained SVG: log-log error-vs-N points with a slope -2 reference
/// line. Byte-deterministic for identical rows.
std::string emit_plot_svg(const std::vector<ConvergenceRow>& rows);

/// Flat key = value file ('#' comments). Keys are the CLI flag names with
/// '-' replaced by '_'. Unknown keys are rejected.
void apply_config_line(RunConfig& config, const std::string& key, const std::string& value);
RunConfig parse_config_file(const std::string& path);

} // namespace rieszmg
