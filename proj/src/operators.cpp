#include "rieszmg/operators.hpp"

#include <cstdint>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace rieszmg {

std::shared_ptr<const CirculantSpectrum> shared_operator_spectrum(FractionalOrder nu,
                                                                  int n) {
    static std::mutex mutex;
    static std::map<std::pair<std::uint64_t, int>,
                    std::shared_ptr<const CirculantSpectrum>> cache;

    std::uint64_t bits;
    const double v = nu.value();
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(bits));

    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{bits, n}];
    if (slot == nullptr) {
        slot = std::make_shared<const CirculantSpectrum>(
            embed_circulant(SymmetricToeplitz{riesz_row_weights(nu, n)}));
    }
    return slot;
}

std::size_t DirectionalOperator::storage_bytes() const noexcept {
    std::size_t bytes = xi.size() * sizeof(double);
    if (spectrum != nullptr) {
        bytes += spectrum->eigenvalues().size() * sizeof(std::complex<double>);
    }
    return bytes;
}

DirectionalOperator build_directional_operator(const GridSpec& grid, int axis,
                                               FractionalOrder nu,
                                               const CoefficientField& coeff,
                                               double t_half) {
    if (axis < 0 || axis >= grid.dimension()) {
        throw std::invalid_argument("operator axis outside the grid dimension");
    }
    DirectionalOperator op;
    op.axis = axis;
    op.nu = nu.value();
    op.spectrum = shared_operator_spectrum(nu, grid.interior(axis));

    const double dxa = grid.dx(axis);
    const double dt = grid.dt();
    const int dim = grid.dimension();
    const int nx = grid.interior(0);
    const int ny = dim > 1 ? grid.interior(1) : 1;
    const int nz = dim > 2 ? grid.interior(2) : 1;
    op.xi.resize(static_cast<std::size_t>(nx) * ny * nz);

    std::size_t p = 0;
    for (int l = 0; l < nz; ++l) {
        const double z = dim > 2 ? grid.coord(2, l) : 0.0;
        for (int j = 0; j < ny; ++j) {
            const double y = dim > 1 ? grid.coord(1, j) : 0.0;
            for (int i = 0; i < nx; ++i, ++p) {
                const double x = grid.coord(0, i);
                const double c = coeff(x, y, z, t_half);
                if (c < 0.0) {
                    throw std::domain_error(
                        "diffusion coefficient negative at (" + std::to_string(x) + ", " +
                        std::to_string(y) + ", " + std::to_string(z) + "), t = " +
                        std::to_string(t_half));
                }
                op.xi[p] = xi_scale(nu, dxa, dt, c);
            }
        }
    }
    return op;
}

LineWalker::LineWalker(const std::array<int, 3>& extent, int axis)
    : axis_(axis), extent_(extent) {
    length = extent[static_cast<std::size_t>(axis)];
    stride = axis == 0 ? 1 : (axis == 1 ? extent[0] : extent[0] * extent[1]);
    count = (extent[0] * extent[1] * extent[2]) / length;
}

std::size_t LineWalker::offset(int line) const {
    switch (axis_) {
        case 0:
            return static_cast<std::size_t>(line) * extent_[0];
        case 1: {
            const int i = line % extent_[0];
            const int l = line / extent_[0];
            return static_cast<std::size_t>(i) +
                   static_cast<std::size_t>(l) * extent_[0] * extent_[1];
        }
        default: {
            const int i = line % extent_[0];
            const int j = line / extent_[0];
            return static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * extent_[0];
        }
    }
}

namespace {

void apply_lines(const DirectionalOperator& op, const Field& in, Field& out,
                 FftWorkspace& ws, double shift, double sign) {
    if (in.extent != out.extent || in.v.size() != op.xi.size()) {
        throw std::invalid_argument("operator and field extents disagree");
    }
    if (&in == &out) {
        throw std::invalid_argument("operator application cannot run in place");
    }
    const LineWalker walk(in.extent, op.axis);
    if (walk.length != op.spectrum->toeplitz_size()) {
        throw std::invalid_argument("operator spectrum does not match the field extent");
    }
    std::vector<double> line(static_cast<std::size_t>(walk.length));
    std::vector<double> image(static_cast<std::size_t>(walk.length));
    for (int ln = 0; ln < walk.count; ++ln) {
        const std::size_t base = walk.offset(ln);
        for (int i = 0; i < walk.length; ++i) {
            line[static_cast<std::size_t>(i)] = in.v[base + static_cast<std::size_t>(i) * walk.stride];
        }
        ws.matvec(*op.spectrum, line, image);
        for (int i = 0; i < walk.length; ++i) {
            const std::size_t p = base + static_cast<std::size_t>(i) * walk.stride;
            out.v[p] = shift * in.v[p] +
                       sign * op.xi[p] * image[static_cast<std::size_t>(i)];
        }
    }
}

} // namespace

void apply(const DirectionalOperator& op, const Field& in, Field& out,
           FftWorkspace& ws) {
    apply_lines(op, in, out, ws, 0.0, 1.0);
}

void apply_shifted(const DirectionalOperator& op, const Field& in, Field& out,
                   double sign, FftWorkspace& ws) {
    apply_lines(op, in, out, ws, 1.0, sign);
}

} // namespace rieszmg
