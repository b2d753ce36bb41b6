/// @file grid.hpp
/// @brief Uniform tensor-product grids with homogeneous Dirichlet boundaries,
///        and the interior solution fields that live on them.

#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace rieszmg {

/// One spatial axis: cells uniform subintervals of [lo, hi]. Cell counts are
/// restricted to powers of two >= 8 so every multigrid coarsening is exact.
struct AxisSpec {
    double lo = 0.0;
    double hi = 1.0;
    int cells = 8;
};

class GridSpec {
public:
    GridSpec(std::vector<AxisSpec> axes, int time_steps, double t_final);

    int dimension() const noexcept { return static_cast<int>(axes_.size()); }
    const AxisSpec& axis(int a) const { return axes_[static_cast<std::size_t>(a)]; }
    double dx(int a) const;
    /// Interior unknowns along axis a: cells - 1.
    int interior(int a) const { return axis(a).cells - 1; }
    /// Coordinate of interior index i (0-based): lo + (i + 1) dx.
    double coord(int a, int i) const;

    int time_steps() const noexcept { return time_steps_; }
    double t_final() const noexcept { return t_final_; }
    double dt() const noexcept { return t_final_ / time_steps_; }

private:
    std::vector<AxisSpec> axes_;
    int time_steps_;
    double t_final_;
};

/// Interior nodal values, x fastest: index = i + nx*(j + ny*l). Axes beyond
/// the grid dimension have extent 1.
struct Field {
    std::array<int, 3> extent{1, 1, 1};
    std::vector<double> v;

    Field() = default;
    explicit Field(const GridSpec& grid);
    Field(int nx, int ny, int nz);

    std::size_t size() const noexcept { return v.size(); }
    double& operator[](std::size_t p) noexcept { return v[p]; }
    double operator[](std::size_t p) const noexcept { return v[p]; }

    double max_abs() const;
};

/// Largest absolute entry of a - b; operands must be congruent.
double max_abs_diff(const Field& a, const Field& b);

} // namespace rieszmg
