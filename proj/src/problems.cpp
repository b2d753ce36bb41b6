#include "rieszmg/problems.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rieszmg {

double rl_power_derivative(double p, FractionalOrder nu, double s) {
    const double v = nu.value();
    if (!(p > v - 1.0)) {
        throw std::domain_error("power derivative needs exponent p > nu - 1, got p = " +
                                std::to_string(p));
    }
    if (s < 0.0) {
        throw std::domain_error("wing coordinate must be nonnegative");
    }
    return std::tgamma(p + 1.0) / std::tgamma(p + 1.0 - v) * std::pow(s, p - v);
}

namespace {

double hump(double s) {
    const double w = s * (1.0 - s);
    return w * w; // s^2 (1-s)^2
}

// Sum of the left and right Riemann-Liouville derivatives of s^2(1-s)^2 of
// order nu on (0,1), divided by 2. Follows from the power rule applied to
// s^2 - 2s^3 + s^4 and the mirror symmetry of the hump.
double hump_bracket(double s, double nu) {
    const double a = (std::pow(s, 2.0 - nu) + std::pow(1.0 - s, 2.0 - nu)) /
                     std::tgamma(3.0 - nu);
    const double b = (std::pow(s, 3.0 - nu) + std::pow(1.0 - s, 3.0 - nu)) /
                     std::tgamma(4.0 - nu);
    const double c = (std::pow(s, 4.0 - nu) + std::pow(1.0 - s, 4.0 - nu)) /
                     std::tgamma(5.0 - nu);
    return a - 6.0 * b + 12.0 * c;
}

double half_sec(double nu) {
    return 1.0 / std::cos(nu * M_PI / 2.0);
}

std::array<AxisSpec, 3> unit_domain() {
    return {AxisSpec{0.0, 1.0, 8}, AxisSpec{0.0, 1.0, 8}, AxisSpec{0.0, 1.0, 8}};
}

} // namespace

ManufacturedProblem problem_1d(double alpha) {
    ManufacturedProblem p;
    p.name = "1d";
    p.dimension = 1;
    p.orders = {FractionalOrder(alpha).value(), alpha, alpha};
    p.domain = unit_domain();
    p.coefficient[0] = [alpha](double x, double, double, double t) {
        return std::pow(x, alpha) * t;
    };
    p.exact = [](double x, double, double, double t) { return std::exp(-t) * hump(x); };
    p.forcing = [alpha](double x, double, double, double t) {
        return std::exp(-t) * (-hump(x) + std::pow(x, alpha) * t * half_sec(alpha) *
                                              hump_bracket(x, alpha));
    };
    return p;
}

ManufacturedProblem problem_2d(double alpha, double beta) {
    ManufacturedProblem p;
    p.name = "2d";
    p.dimension = 2;
    p.orders = {FractionalOrder(alpha).value(), FractionalOrder(beta).value(), beta};
    p.domain = unit_domain();
    p.coefficient[0] = [alpha](double x, double y, double, double) {
        return std::pow(x, alpha) * y;
    };
    p.coefficient[1] = [beta](double x, double y, double, double) {
        return x * std::pow(y, beta);
    };
    p.exact = [](double x, double y, double, double t) {
        return std::exp(-t) * hump(x) * hump(y);
    };
    p.forcing = [alpha, beta](double x, double y, double, double t) {
        return std::exp(-t) *
               (-hump(x) * hump(y) +
                std::pow(x, alpha) * y * hump(y) * half_sec(alpha) * hump_bracket(x, alpha) +
                x * std::pow(y, beta) * hump(x) * half_sec(beta) * hump_bracket(y, beta));
    };
    return p;
}

ManufacturedProblem problem_3d(double alpha, double beta, double gamma) {
    ManufacturedProblem p;
    p.name = "3d";
    p.dimension = 3;
    p.orders = {FractionalOrder(alpha).value(), FractionalOrder(beta).value(),
                FractionalOrder(gamma).value()};
    p.domain = unit_domain();
    p.coefficient[0] = [alpha](double x, double y, double z, double) {
        return std::pow(x, alpha) * y * z;
    };
    p.coefficient[1] = [beta](double x, double y, double z, double) {
        return x * std::pow(y, beta) * z;
    };
    p.coefficient[2] = [gamma](double x, double y, double z, double) {
        return x * y * std::pow(z, gamma);
    };
    p.exact = [](double x, double y, double z, double t) {
        return std::exp(-t) * hump(x) * hump(y) * hump(z);
    };
    p.forcing = [alpha, beta, gamma](double x, double y, double z, double t) {
        return std::exp(-t) *
               (-hump(x) * hump(y) * hump(z) +
                std::pow(x, alpha) * y * z * hump(y) * hump(z) * half_sec(alpha) *
                    hump_bracket(x, alpha) +
                x * std::pow(y, beta) * z * hump(x) * hump(z) * half_sec(beta) *
                    hump_bracket(y, beta) +
                x * y * std::pow(z, gamma) * hump(x) * hump(y) * half_sec(gamma) *
                    hump_bracket(z, gamma));
    };
    return p;
}

Field sample_on_grid(const CoefficientField& fn, const GridSpec& grid, double t) {
    Field out(grid);
    const int dim = grid.dimension();
    const int nx = grid.interior(0);
    const int ny = dim > 1 ? grid.interior(1) : 1;
    const int nz = dim > 2 ? grid.interior(2) : 1;
    std::size_t p = 0;
    for (int l = 0; l < nz; ++l) {
        const double z = dim > 2 ? grid.coord(2, l) : 0.0;
        for (int j = 0; j < ny; ++j) {
            const double y = dim > 1 ? grid.coord(1, j) : 0.0;
            for (int i = 0; i < nx; ++i, ++p) {
                out.v[p] = fn(grid.coord(0, i), y, z, t);
            }
        }
    }
    return out;
}

GridSpec grid_for(const ManufacturedProblem& problem, int cells_per_axis,
                  int time_steps) {
    std::vector<AxisSpec> axes;
    for (int a = 0; a < problem.dimension; ++a) {
        AxisSpec ax = problem.domain[static_cast<std::size_t>(a)];
        ax.cells = cells_per_axis;
        axes.push_back(ax);
    }
    return GridSpec(std::move(axes), time_steps, problem.t_final);
}

} // namespace rieszmg
