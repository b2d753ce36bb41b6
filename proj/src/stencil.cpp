#include "rieszmg/stencil.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rieszmg {

FractionalOrder::FractionalOrder(double nu) : nu_(nu) {
    if (!(nu > 1.0 && nu <= 2.0)) {
        throw std::invalid_argument("fractional order must lie in (1, 2], got " +
                                    std::to_string(nu));
    }
}

namespace {

// g_m for m >= 4 via the binomial series of the fourth central difference
// of s^p around s = m - 1:
//   g_m = (m-1)^p * sum_{k >= 4 even} binom(p, k) (2^{k+1} - 8) t^k,
// t = 1/(m-1) <= 1/3, p = 3 - nu. All terms are positive for p in (1, 2),
// so the loop can stop on a relative-size test.
double tail_weight(double p, int m) {
    const double t = 1.0 / (m - 1.0);
    const double t2 = t * t;
    double binom = p * (p - 1.0) * (p - 2.0) * (p - 3.0) / 24.0; // binom(p, 4)
    double tk = t2 * t2;
    double pow2 = 32.0; // 2^{k+1} at k = 4
    double sum = 0.0;
    for (int k = 4; k < 240; k += 2) {
        const double term = binom * (pow2 - 8.0) * tk;
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) {
            break;
        }
        binom *= (p - k) / (k + 1.0) * ((p - k - 1.0) / (k + 2.0));
        tk *= t2;
        pow2 *= 4.0;
    }
    return std::pow(m - 1.0, p) * sum;
}

} // namespace

std::vector<double> grunwald_weights(FractionalOrder nu, int count) {
    if (count < 1) {
        throw std::invalid_argument("weight count must be positive");
    }
    const double v = nu.value();
    const double p = 3.0 - v;
    std::vector<double> g(static_cast<std::size_t>(count));
    g[0] = 1.0;
    if (count > 1) g[1] = -4.0 + std::pow(2.0, p);
    if (count > 2) g[2] = 6.0 - std::pow(2.0, 5.0 - v) + std::pow(3.0, p);
    if (count > 3) {
        g[3] = std::pow(4.0, p) - 4.0 * std::pow(3.0, p) + 6.0 * std::pow(2.0, p) - 4.0;
    }
    for (int m = 4; m < count; ++m) {
        g[static_cast<std::size_t>(m)] = tail_weight(p, m);
    }
    return g;
}

std::vector<double> riesz_row_weights(FractionalOrder nu, int n) {
    if (n < 1) {
        throw std::invalid_argument("row weight length must be positive");
    }
    const std::vector<double> g = grunwald_weights(nu, n + 1);
    std::vector<double> w(static_cast<std::size_t>(n));
    w[0] = 2.0 * g[1];
    if (n > 1) w[1] = g[0] + g[2];
    for (int k = 2; k < n; ++k) {
        w[static_cast<std::size_t>(k)] = g[static_cast<std::size_t>(k) + 1];
    }
    return w;
}

double riesz_coefficient(FractionalOrder nu) {
    return 1.0 / (2.0 * std::cos(nu.value() * M_PI / 2.0));
}

double xi_scale(FractionalOrder nu, double dx, double dt, double coeff) {
    if (!(dx > 0.0) || !(dt > 0.0)) {
        throw std::invalid_argument("grid spacings must be positive");
    }
    if (coeff < 0.0) {
        throw std::domain_error("diffusion coefficient must be nonnegative, got " +
                                std::to_string(coeff));
    }
    const double v = nu.value();
    return -dt * riesz_coefficient(nu) * coeff /
           (2.0 * std::tgamma(4.0 - v) * std::pow(dx, v));
}

} // namespace rieszmg
