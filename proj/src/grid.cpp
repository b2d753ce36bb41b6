#include "rieszmg/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rieszmg {

namespace {

bool dyadic_cells(int cells) {
    return cells >= 8 && (cells & (cells - 1)) == 0;
}

} // namespace

GridSpec::GridSpec(std::vector<AxisSpec> axes, int time_steps, double t_final)
    : axes_(std::move(axes)), time_steps_(time_steps), t_final_(t_final) {
    if (axes_.empty() || axes_.size() > 3) {
        throw std::invalid_argument("grid dimension must be 1, 2, or 3");
    }
    for (const AxisSpec& ax : axes_) {
        if (!(ax.hi > ax.lo)) {
            throw std::invalid_argument("axis upper bound must exceed lower bound");
        }
        if (!dyadic_cells(ax.cells)) {
            throw std::invalid_argument("axis cell count must be a power of two >= 8, got " +
                                        std::to_string(ax.cells));
        }
    }
    if (time_steps_ < 1) {
        throw std::invalid_argument("time step count must be positive");
    }
    if (!(t_final_ > 0.0)) {
        throw std::invalid_argument("final time must be positive");
    }
}

double GridSpec::dx(int a) const {
    const AxisSpec& ax = axis(a);
    return (ax.hi - ax.lo) / ax.cells;
}

double GridSpec::coord(int a, int i) const {
    return axis(a).lo + (i + 1) * dx(a);
}

Field::Field(const GridSpec& grid) {
    for (int a = 0; a < grid.dimension(); ++a) {
        extent[static_cast<std::size_t>(a)] = grid.interior(a);
    }
    v.assign(static_cast<std::size_t>(extent[0]) * extent[1] * extent[2], 0.0);
}

Field::Field(int nx, int ny, int nz) : extent{nx, ny, nz} {
    if (nx < 1 || ny < 1 || nz < 1) {
        throw std::invalid_argument("field extents must be positive");
    }
    v.assign(static_cast<std::size_t>(nx) * ny * nz, 0.0);
}

double Field::max_abs() const {
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

double max_abs_diff(const Field& a, const Field& b) {
    if (a.extent != b.extent) {
        throw std::invalid_argument("fields live on different grids");
    }
    double m = 0.0;
    for (std::size_t p = 0; p < a.v.size(); ++p) {
        m = std::max(m, std::abs(a.v[p] - b.v[p]));
    }
    return m;
}

} // namespace rieszmg
