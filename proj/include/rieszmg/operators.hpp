/// @file operators.hpp
/// @brief Directional fractional-diffusion operators A = diag(xi) T applied
///        line by line over a tensor-product grid. T is the shared symmetric
///        Toeplitz weight matrix for one axis; xi folds the time step, the
///        Riesz constant, and the pointwise diffusion coefficient.

#pragma once

#include <functional>
#include <memory>

#include "rieszmg/grid.hpp"
#include "rieszmg/stencil.hpp"
#include "rieszmg/toeplitz.hpp"

namespace rieszmg {

/// Pointwise diffusion coefficient or source evaluator. Arguments beyond the
/// problem dimension are passed as 0 and should be ignored.
using CoefficientField = std::function<double(double x, double y, double z, double t)>;

/// Shared, cached spectrum of the length-n Riesz row-weight Toeplitz matrix.
/// One entry exists per (nu, n); rebuilt only when either changes.
std::shared_ptr<const CirculantSpectrum> shared_operator_spectrum(FractionalOrder nu,
                                                                  int n);

/// A = diag(xi) T along one axis, frozen at one evaluation time. Storage is
/// one first-column spectrum plus one xi value per interior grid point, so
/// memory grows linearly with the unknown count.
struct DirectionalOperator {
    int axis = 0;
    double nu = 1.5;
    std::shared_ptr<const CirculantSpectrum> spectrum;
    std::vector<double> xi; // Field layout, same extents as operand fields

    std::size_t storage_bytes() const noexcept;
};

/// Samples coeff at every interior point at time t_half and binds it to the
/// cached axis spectrum. Throws std::domain_error naming the grid point if
/// the coefficient is negative anywhere.
DirectionalOperator build_directional_operator(const GridSpec& grid, int axis,
                                               FractionalOrder nu,
                                               const CoefficientField& coeff,
                                               double t_half);

/// out = A in. Lines along the operator axis are gathered into contiguous
/// scratch, sent through the Toeplitz matvec, scaled by xi, and scattered
/// back. in and out must not alias.
void apply(const DirectionalOperator& op, const Field& in, Field& out,
           FftWorkspace& ws);

/// out = in + sign * (A in). in and out must not alias.
void apply_shifted(const DirectionalOperator& op, const Field& in, Field& out,
                   double sign, FftWorkspace& ws);

/// Offsets and stride for walking the lines of a field along one axis.
struct LineWalker {
    int length = 0;
    int stride = 0;
    int count = 0;

    LineWalker(const std::array<int, 3>& extent, int axis);
    /// Flat index of element 0 of the given line.
    std::size_t offset(int line) const;

private:
    int axis_ = 0;
    std::array<int, 3> extent_{1, 1, 1};
};

} // namespace rieszmg
