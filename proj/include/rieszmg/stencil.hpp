/// @file stencil.hpp
/// @brief Second-order finite-difference weights for the Riesz fractional
///        derivative of order nu in (1, 2], and the scale factors that turn
///        them into time-stepping operator entries.

#pragma once

#include <vector>

namespace rieszmg {

/// Fractional order validated to lie in (1, 2]. nu = 2 is the classical
/// diffusion limit and is allowed.
class FractionalOrder {
public:
    explicit FractionalOrder(double nu);
    double value() const noexcept { return nu_; }

private:
    double nu_;
};

/// Weights g_0 .. g_{count-1} of the second-order one-sided approximation.
///
/// g_0 = 1, g_1 = -4 + 2^{3-nu}, g_2 = 6 - 2^{5-nu} + 3^{3-nu}, and for
/// m >= 3 the fourth difference of m^{3-nu}. The naive five-term formula
/// loses every significant digit once m is large (the terms grow like
/// m^{3-nu} while the result decays like m^{-nu-1}), so for m >= 4 the
/// difference is evaluated through its binomial series, which performs the
/// cancellation analytically and stays ~1e-15 relative for all m.
std::vector<double> grunwald_weights(FractionalOrder nu, int count);

/// First column (length n) of the symmetric interior matrix shared by the
/// left and right one-sided sums: (2 g_1, g_0 + g_2, g_3, g_4, ..., g_n).
/// Entry 0 is negative, every later entry is positive, and each row of the
/// induced Toeplitz matrix is strictly diagonally dominant.
std::vector<double> riesz_row_weights(FractionalOrder nu, int n);

/// kappa_nu = 1 / (2 cos(nu pi / 2)); negative on (1, 2], and -1/2 at nu = 2.
double riesz_coefficient(FractionalOrder nu);

/// Per-point operator scale xi = -dt * kappa_nu * coeff / (2 Gamma(4-nu) dx^nu).
/// Nonnegative whenever coeff >= 0; a negative coeff is a domain error.
double xi_scale(FractionalOrder nu, double dx, double dt, double coeff);

} // namespace rieszmg
