/// @file multigrid.hpp
/// @brief Geometric V-cycle multigrid for the line systems (I - diag(xi) T) u = f
///        produced by Crank-Nicolson time stepping of Riesz fractional
///        diffusion. Coarse levels re-discretize the coefficient on the
///        coarse grid; every operator apply stays a cached-spectrum FFT
///        matvec, so no level ever assembles a large dense matrix.

#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "rieszmg/operators.hpp"

namespace rieszmg {

/// Damped Jacobi sweep counts and weights. The defaults are one pre-sweep at
/// omega = 1 and one post-sweep at omega = 1/2.
struct SmootherConfig {
    int pre_sweeps = 1;
    int post_sweeps = 1;
    double omega_pre = 1.0;
    double omega_post = 0.5;
};

/// Iteration controls for the V-cycle solver. Grids coarsen until the line
/// has at most coarsest_size interior points; that level is solved densely.
struct SolveControl {
    double tolerance = 1e-7;
    int max_iterations = 100;
    int coarsest_size = 3;
    SmootherConfig smoother;
};

/// One multigrid level of a line system: the operator is
/// u |-> u - xi .* (T u) with diag(I - diag(xi) T) = 1 - xi w_0 >= 1.
struct LineLevel {
    std::shared_ptr<const CirculantSpectrum> spectrum;
    std::vector<double> xi;
    std::vector<double> inv_diag;

    int size() const noexcept { return static_cast<int>(xi.size()); }
    /// out = (I - diag(xi) T) u.
    void apply(std::span<const double> u, std::span<double> out, FftWorkspace& ws) const;
};

/// The level stack for one grid line, finest first, plus a dense LU of the
/// coarsest operator. Interior sizes must be 2^k - 1 so each coarsening of
/// the cell count is exact.
class LineHierarchy {
public:
    /// coeff_line evaluates the diffusion coefficient along the line as a
    /// function of the axis coordinate (orthogonal coordinates and the
    /// evaluation time are fixed by the caller's closure).
    LineHierarchy(FractionalOrder nu, double lo, double dx, int n, double dt,
                  const std::function<double(double)>& coeff_line, int coarsest_size);

    int depth() const noexcept { return static_cast<int>(levels_.size()); }
    const LineLevel& level(int l) const { return levels_[static_cast<std::size_t>(l)]; }
    /// Direct solve on the coarsest level.
    void coarse_solve(std::span<const double> rhs, std::span<double> u) const;

private:
    std::vector<LineLevel> levels_;
    int nc_ = 0;
    std::vector<double> lu_;
    std::vector<int> pivot_;
};

/// Full-weighting restriction: coarse[j] = (fine[2j] + 2 fine[2j+1] + fine[2j+2]) / 4.
/// fine has odd length 2m+1, coarse has length m.
void restrict_full_weighting(std::span<const double> fine, std::span<double> coarse);

/// Linear-interpolation prolongation, the transpose of restriction times 2:
/// coarse-aligned fine points copy the coarse value, the rest average their
/// coarse neighbours (boundary values are zero).
void prolong_linear(std::span<const double> coarse, std::span<double> fine);

/// Convergence record of one line solve. residual_history[0] is the initial
/// residual norm; one entry follows per executed V-cycle.
struct SolveStats {
    int iterations = 0;
    std::vector<double> residual_history;
    bool converged = false;
};

/// Thrown when the iteration cap is reached before the residual drops.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::vector<double> history)
        : std::runtime_error(what), residual_history_(std::move(history)) {}

    const std::vector<double>& residual_history() const noexcept {
        return residual_history_;
    }

private:
    std::vector<double> residual_history_;
};

/// V-cycle iteration engine. Owns transform workspaces and per-level scratch,
/// so one solver instance serves many line solves but must not be shared
/// between concurrent callers.
class MgmSolver {
public:
    explicit MgmSolver(SolveControl control = {});

    const SolveControl& control() const noexcept { return control_; }

    /// Runs V-cycles on (I - diag(xi) T) u = f until the residual norm falls
    /// below tolerance * (initial residual norm). u carries the initial
    /// guess in and the solution out. Throws ConvergenceError at the cap.
    SolveStats solve(const LineHierarchy& hier, std::span<double> u,
                     std::span<const double> f);

    /// One V-cycle starting at the given level (0 = finest). Exposed for
    /// direct measurement; solve() is the normal entry point.
    void v_cycle(const LineHierarchy& hier, int level, std::span<double> u,
                 std::span<const double> f);

    /// sweeps damped-Jacobi passes on one level: u += omega D^{-1} (f - A u).
    void smooth(const LineLevel& level, std::span<double> u, std::span<const double> f,
                double omega, int sweeps);

private:
    double residual_norm(const LineLevel& level, std::span<const double> u,
                         std::span<const double> f);
    void take_scratch(std::vector<double>& buf, std::size_t size);
    void give_scratch(std::vector<double>&& buf);

    SolveControl control_;
    FftWorkspace ws_;
    std::vector<std::vector<double>> scratch_; // recycled work vectors
};

} // namespace rieszmg
