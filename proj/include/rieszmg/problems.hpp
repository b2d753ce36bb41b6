/// @file problems.hpp
/// @brief Manufactured diffusion problems with known exact solutions and
///        closed-form forcings, used for convergence studies and tests.

#pragma once

#include <array>
#include <string>

#include "rieszmg/operators.hpp"

namespace rieszmg {

/// Riemann-Liouville derivative of order nu of the power (distance)^p,
/// evaluated at wing coordinate s >= 0 measured from the differentiation
/// boundary: Gamma(p+1) / Gamma(p+1-nu) * s^{p-nu}. Requires p > nu - 1.
double rl_power_derivative(double p, FractionalOrder nu, double s);

/// A complete problem statement: domain, orders, per-axis diffusion
/// coefficients, forcing, and the exact solution (whose t = 0 trace is the
/// initial condition). The exact solution vanishes on the boundary.
struct ManufacturedProblem {
    std::string name;
    int dimension = 1;
    std::array<double, 3> orders{1.5, 1.5, 1.5}; // only [0, dimension) used
    std::array<AxisSpec, 3> domain;               // cell counts filled by callers
    double t_final = 1.0;
    std::array<CoefficientField, 3> coefficient;  // per axis
    CoefficientField forcing;
    CoefficientField exact;

    FractionalOrder order(int axis) const {
        return FractionalOrder(orders[static_cast<std::size_t>(axis)]);
    }
};

/// 1D: u = e^{-t} x^2 (1-x)^2 on (0,1), coefficient x^alpha t, T = 1.
ManufacturedProblem problem_1d(double alpha);

/// 2D: u = e^{-t} x^2(1-x)^2 y^2(1-y)^2 on (0,1)^2, coefficients
/// (x^alpha y, x y^beta), T = 1.
ManufacturedProblem problem_2d(double alpha, double beta);

/// 3D: u = e^{-t} prod over axes of s^2(1-s)^2 on (0,1)^3, coefficients
/// (x^alpha y z, x y^beta z, x y z^gamma), T = 1.
ManufacturedProblem problem_3d(double alpha, double beta, double gamma);

/// Samples an evaluator over the interior of a grid at time t.
Field sample_on_grid(const CoefficientField& fn, const GridSpec& grid, double t);

/// A grid over the problem's domain with N cells per axis and time_steps
/// steps up to the problem's final time.
GridSpec grid_for(const ManufacturedProblem& problem, int cells_per_axis,
                  int time_steps);

} // namespace rieszmg
