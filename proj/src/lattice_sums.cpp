#include "nlpoisson/lattice_sums.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "nlpoisson/operators.hpp"

namespace nlpoisson {

namespace {

double theta_minus_one(double t) {
    double sum = 0.0;
    for (int k = 1; k < 64; ++k) {
        const double term = std::exp(-std::numbers::pi * t * k * k);
        sum += term;
        if (term < 1e-20 * sum) break;
    }
    return 2.0 * sum;
}

// value of the inverse transform of a frequency field at x = 0 after
// multiplying by `symbol(k)`
template <class Symbol>
double spectral_at_origin(const Field& spectrum, Symbol symbol) {
    Complex acc{};
    for (std::size_t k = 0; k < spectrum.samples.size(); ++k) {
        acc += symbol(k) * spectrum.samples[k];
    }
    const double weight = std::pow(spectrum.grid.dual_spacing() / std::sqrt(2.0 * std::numbers::pi),
                                   spectrum.grid.n_dim());
    return (weight * acc).real();
}

}  // namespace

double epstein_zeta(int n, double s) {
    if (n < 1) throw std::invalid_argument("epstein_zeta needs n >= 1");
    if (s == n) throw std::domain_error("epstein_zeta has a pole at s = n");
    const double half = 0.5 * s;
    if (half <= 0.0 && std::floor(half) == half) {
        return half == 0.0 ? -1.0 : 0.0;
    }
    // pi^(-s/2) Gamma(s/2) Z(s) = 2/(s-n) - 2/s + \int_1^inf (t^(s/2-1) + t^((n-s)/2-1)) (theta^n - 1) dt
    auto integrand = [n, s](double t) {
        const double th = theta_minus_one(t);
        const double theta_n = std::pow(1.0 + th, n) - 1.0;
        if (theta_n == 0.0) return 0.0;
        return (std::pow(t, 0.5 * s - 1.0) + std::pow(t, 0.5 * (n - s) - 1.0)) * theta_n;
    };
    boost::math::quadrature::exp_sinh<double> integrator;
    const double tail = integrator.integrate(integrand, 1.0, std::numeric_limits<double>::infinity());
    const double completed = 2.0 / (s - n) - 2.0 / s + tail;
    return completed * std::pow(std::numbers::pi, half) / boost::math::tgamma(half);
}

double singular_weighted_integral(const Field& density, double gamma) {
    if (density.space != SpaceTag::physical) {
        throw std::invalid_argument("singular_weighted_integral expects a physical field");
    }
    if (!(gamma > 0.0)) throw std::invalid_argument("weight exponent must be positive");
    const SpatialGrid& grid = density.grid;
    const int n = grid.n_dim();
    const double h = grid.spacing();

    double sum = 0.0;
    for (std::size_t j = 0; j < density.samples.size(); ++j) {
        const double r2 = grid.radius_sq(j);
        if (r2 > 0.0) sum += std::pow(r2, 0.5 * gamma) * density.samples[j].real();
    }
    sum *= std::pow(h, n);

    const Field spectrum = fourier(density);
    const double g0 = density.samples[grid.origin_index()].real();
    double correction = std::pow(h, n + gamma) * epstein_zeta(n, -gamma) * g0;
    if (n == 1) {
        double factorial = 1.0;
        for (int k = 2; k <= 6; k += 2) {
            factorial *= (k - 1) * k;
            const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;  // (i xi)^k
            const double derivative = spectral_at_origin(spectrum, [&](std::size_t m) {
                return sign * std::pow(grid.frequency(m), k);
            });
            correction += std::pow(h, 1.0 + gamma + k) * epstein_zeta(1, -gamma - k) *
                          derivative / factorial;
        }
    } else {
        const double laplacian = spectral_at_origin(spectrum, [&](std::size_t m) {
            return -grid.frequency_radius_sq(m);
        });
        correction += std::pow(h, n + gamma + 2.0) * epstein_zeta(n, -gamma - 2.0) * laplacian /
                      (2.0 * n);
    }
    return sum - correction;
}

}  // namespace nlpoisson
