#include "rieszmg/multigrid.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace rieszmg {

void LineLevel::apply(std::span<const double> u, std::span<double> out,
                      FftWorkspace& ws) const {
    ws.matvec(*spectrum, u, out);
    for (std::size_t i = 0; i < u.size(); ++i) {
        out[i] = u[i] - xi[i] * out[i];
    }
}

namespace {

bool interior_dyadic(int n) {
    // n = 2^k - 1 for some k >= 1, so halving the cell count stays exact.
    return n >= 1 && ((n + 1) & n) == 0;
}

} // namespace

LineHierarchy::LineHierarchy(FractionalOrder nu, double lo, double dx, int n, double dt,
                             const std::function<double(double)>& coeff_line,
                             int coarsest_size) {
    if (!interior_dyadic(n)) {
        throw std::invalid_argument("line hierarchy needs 2^k - 1 interior points, got " +
                                    std::to_string(n));
    }
    if (coarsest_size < 1) {
        throw std::invalid_argument("coarsest size must be positive");
    }

    const double w0 = 2.0 * grunwald_weights(nu, 2)[1];
    int nl = n;
    double dxl = dx;
    while (true) {
        LineLevel level;
        level.spectrum = shared_operator_spectrum(nu, nl);
        level.xi.resize(static_cast<std::size_t>(nl));
        level.inv_diag.resize(static_cast<std::size_t>(nl));
        for (int i = 0; i < nl; ++i) {
            const double xi = xi_scale(nu, dxl, dt, coeff_line(lo + (i + 1) * dxl));
            level.xi[static_cast<std::size_t>(i)] = xi;
            level.inv_diag[static_cast<std::size_t>(i)] = 1.0 / (1.0 - xi * w0);
        }
        levels_.push_back(std::move(level));
        if (nl <= coarsest_size) {
            break;
        }
        nl = (nl - 1) / 2;
        dxl *= 2.0;
    }

    // Dense LU with partial pivoting of the coarsest operator.
    const LineLevel& coarse = levels_.back();
    nc_ = coarse.size();
    const std::vector<double> w = riesz_row_weights(nu, nc_);
    lu_.assign(static_cast<std::size_t>(nc_) * nc_, 0.0);
    pivot_.resize(static_cast<std::size_t>(nc_));
    auto entry = [&](int r, int c) -> double& {
        return lu_[static_cast<std::size_t>(r) * nc_ + c];
    };
    for (int i = 0; i < nc_; ++i) {
        for (int j = 0; j < nc_; ++j) {
            entry(i, j) = (i == j ? 1.0 : 0.0) -
                          coarse.xi[static_cast<std::size_t>(i)] *
                              w[static_cast<std::size_t>(std::abs(i - j))];
        }
    }
    for (int col = 0; col < nc_; ++col) {
        int piv = col;
        for (int r = col + 1; r < nc_; ++r) {
            if (std::abs(entry(r, col)) > std::abs(entry(piv, col))) {
                piv = r;
            }
        }
        if (entry(piv, col) == 0.0) {
            throw std::runtime_error("coarsest-level operator is singular");
        }
        pivot_[static_cast<std::size_t>(col)] = piv;
        if (piv != col) {
            for (int j = 0; j < nc_; ++j) {
                std::swap(entry(col, j), entry(piv, j));
            }
        }
        for (int r = col + 1; r < nc_; ++r) {
            entry(r, col) /= entry(col, col);
            for (int j = col + 1; j < nc_; ++j) {
                entry(r, j) -= entry(r, col) * entry(col, j);
            }
        }
    }
}

void LineHierarchy::coarse_solve(std::span<const double> rhs, std::span<double> u) const {
    if (static_cast<int>(rhs.size()) != nc_ || static_cast<int>(u.size()) != nc_) {
        throw std::invalid_argument("coarse solve operand has the wrong length");
    }
    for (int i = 0; i < nc_; ++i) {
        u[static_cast<std::size_t>(i)] = rhs[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < nc_; ++i) {
        std::swap(u[static_cast<std::size_t>(i)],
                  u[static_cast<std::size_t>(pivot_[static_cast<std::size_t>(i)])]);
        for (int j = 0; j < i; ++j) {
            u[static_cast<std::size_t>(i)] -=
                lu_[static_cast<std::size_t>(i) * nc_ + j] * u[static_cast<std::size_t>(j)];
        }
    }
    for (int i = nc_ - 1; i >= 0; --i) {
        for (int j = i + 1; j < nc_; ++j) {
            u[static_cast<std::size_t>(i)] -=
                lu_[static_cast<std::size_t>(i) * nc_ + j] * u[static_cast<std::size_t>(j)];
        }
        u[static_cast<std::size_t>(i)] /= lu_[static_cast<std::size_t>(i) * nc_ + i];
    }
}

void restrict_full_weighting(std::span<const double> fine, std::span<double> coarse) {
    const std::size_t m = coarse.size();
    if (fine.size() != 2 * m + 1) {
        throw std::invalid_argument("restriction needs fine length 2m+1 for coarse length m");
    }
    for (std::size_t j = 0; j < m; ++j) {
        coarse[j] = 0.25 * (fine[2 * j] + 2.0 * fine[2 * j + 1] + fine[2 * j + 2]);
    }
}

void prolong_linear(std::span<const double> coarse, std::span<double> fine) {
    const std::size_t m = coarse.size();
    if (fine.size() != 2 * m + 1 || m == 0) {
        throw std::invalid_argument("prolongation needs fine length 2m+1 for coarse length m >= 1");
    }
    fine[0] = 0.5 * coarse[0];
    for (std::size_t j = 0; j < m; ++j) {
        fine[2 * j + 1] = coarse[j];
        if (j + 1 < m) {
            fine[2 * j + 2] = 0.5 * (coarse[j] + coarse[j + 1]);
        }
    }
    fine[2 * m] = 0.5 * coarse[m - 1];
}

MgmSolver::MgmSolver(SolveControl control) : control_(control) {
    if (!(control_.tolerance > 0.0)) {
        throw std::invalid_argument("solver tolerance must be positive");
    }
    if (control_.max_iterations < 1) {
        throw std::invalid_argument("iteration cap must be positive");
    }
    if (control_.smoother.pre_sweeps < 0 || control_.smoother.post_sweeps < 0) {
        throw std::invalid_argument("smoother sweep counts must be nonnegative");
    }
}

void MgmSolver::smooth(const LineLevel& level, std::span<double> u,
                       std::span<const double> f, double omega, int sweeps) {
    if (scratch_.empty()) {
        scratch_.resize(1);
    }
    std::vector<double> au = std::move(scratch_.back());
    scratch_.pop_back();
    au.resize(u.size());
    for (int s = 0; s < sweeps; ++s) {
        level.apply(u, au, ws_);
        for (std::size_t i = 0; i < u.size(); ++i) {
            u[i] += omega * level.inv_diag[i] * (f[i] - au[i]);
        }
    }
    scratch_.push_back(std::move(au));
}

void MgmSolver::v_cycle(const LineHierarchy& hier, int level, std::span<double> u,
                        std::span<const double> f) {
    if (hier.depth() < 2 || level < 0 || level >= hier.depth() - 1) {
        throw std::invalid_argument(
            "v-cycle starts on a non-coarsest level of a multi-level hierarchy");
    }
    const LineLevel& fine = hier.level(level);
    const std::size_t n = u.size();
    const std::size_t m = (n - 1) / 2;

    std::vector<double> r, rc, ec;
    take_scratch(r, n);
    take_scratch(rc, m);
    take_scratch(ec, m);

    smooth(fine, u, f, control_.smoother.omega_pre, control_.smoother.pre_sweeps);

    fine.apply(u, r, ws_);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = f[i] - r[i];
    }
    restrict_full_weighting(r, rc);

    if (level + 1 == hier.depth() - 1) {
        hier.coarse_solve(rc, ec);
    } else {
        for (double& x : ec) {
            x = 0.0;
        }
        v_cycle(hier, level + 1, ec, rc);
    }

    prolong_linear(ec, r); // r now holds the interpolated correction
    for (std::size_t i = 0; i < n; ++i) {
        u[i] += r[i];
    }

    smooth(fine, u, f, control_.smoother.omega_post, control_.smoother.post_sweeps);

    give_scratch(std::move(ec));
    give_scratch(std::move(rc));
    give_scratch(std::move(r));
}

void MgmSolver::take_scratch(std::vector<double>& buf, std::size_t size) {
    if (!scratch_.empty()) {
        buf = std::move(scratch_.back());
        scratch_.pop_back();
    }
    buf.resize(size);
}

void MgmSolver::give_scratch(std::vector<double>&& buf) {
    scratch_.push_back(std::move(buf));
}

double MgmSolver::residual_norm(const LineLevel& level, std::span<const double> u,
                                std::span<const double> f) {
    std::vector<double> au;
    take_scratch(au, u.size());
    level.apply(u, au, ws_);
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double r = f[i] - au[i];
        s += r * r;
    }
    give_scratch(std::move(au));
    return std::sqrt(s);
}

SolveStats MgmSolver::solve(const LineHierarchy& hier, std::span<double> u,
                            std::span<const double> f) {
    SolveStats stats;
    const LineLevel& fine = hier.level(0);
    const double r0 = residual_norm(fine, u, f);
    stats.residual_history.push_back(r0);
    if (r0 == 0.0) {
        stats.converged = true;
        return stats;
    }

    if (hier.depth() == 1) {
        hier.coarse_solve(f, u);
        stats.residual_history.push_back(residual_norm(fine, u, f));
        stats.iterations = 1;
        stats.converged = true;
        return stats;
    }

    for (int it = 1; it <= control_.max_iterations; ++it) {
        v_cycle(hier, 0, u, f);
        const double r = residual_norm(fine, u, f);
        stats.residual_history.push_back(r);
        stats.iterations = it;
        if (r / r0 < control_.tolerance) {
            stats.converged = true;
            return stats;
        }
    }
    // Build the message before handing the history to the exception: the
    // argument evaluation order is unspecified, so reading the vector in one
    // argument while moving it in another would race with itself.
    const std::string what = "V-cycle iteration cap (" +
                             std::to_string(control_.max_iterations) +
                             ") reached; last relative residual " +
                             std::to_string(stats.residual_history.back() / r0);
    throw ConvergenceError(what, std::move(stats.residual_history));
}

} // namespace rieszmg
