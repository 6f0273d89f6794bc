#include "nlpoisson/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nlpoisson {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

double norm_sq(std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return r2;
}

void require_positive_width(const GaussianState& s) {
    if (!(s.width.real() > 0.0)) {
        throw std::domain_error("Gaussian state needs Re(width) > 0");
    }
}

void require_dims(int n, std::span<const double> xi) {
    if (static_cast<int>(xi.size()) != n) {
        throw std::invalid_argument("point dimension does not match n");
    }
}

}  // namespace

cd GaussianState::operator()(std::span<const double> x) const {
    return at_radius_sq(norm_sq(x));
}

cd GaussianState::at_radius_sq(double r2) const {
    return amplitude * std::exp(-0.5 * width * r2);
}

GaussianState unit_gaussian(cd z, int n_dim) {
    GaussianState s{cd{1.0, 0.0}, z, n_dim};
    require_positive_width(s);
    return s;
}

GaussianState gaussian_fourier(const GaussianState& s) {
    require_positive_width(s);
    const double half_n = 0.5 * s.n_dim;
    return {s.amplitude * std::pow(s.width, -half_n), 1.0 / s.width, s.n_dim};
}

cd gaussian_fourier(const GaussianState& s, std::span<const double> xi) {
    require_dims(s.n_dim, xi);
    return gaussian_fourier(s)(xi);
}

GaussianState gaussian_evolve(const GaussianState& s, double t) {
    require_positive_width(s);
    if (t == 0.0) return s;
    const cd d = 1.0 + I * t * s.width;
    return {s.amplitude * std::pow(d, -0.5 * s.n_dim), s.width / d, s.n_dim};
}

GaussianState gaussian_quadratic_phase(const GaussianState& s, double t) {
    if (t == 0.0) throw std::domain_error("quadratic phase needs t != 0");
    return {s.amplitude, s.width - I / t, s.n_dim};
}

cd dilation_factor(double t, int n_dim) {
    if (!(t > 0.0)) throw std::domain_error("dilation needs t > 0");
    const double half_n = 0.5 * n_dim;
    return std::pow(t, half_n) * std::polar(1.0, std::numbers::pi * half_n * 0.5);
}

GaussianState gaussian_dilate(const GaussianState& s, double t) {
    return {s.amplitude / dilation_factor(t, s.n_dim), s.width / (t * t), s.n_dim};
}

GaussianState gaussian_power(const GaussianState& s, double p) {
    if (!(p > 1.0)) throw std::domain_error("power nonlinearity needs p > 1");
    const double mod = std::abs(s.amplitude);
    const cd amp = mod == 0.0 ? cd{} : std::pow(mod, p - 1.0) * s.amplitude;
    return {amp, s.width + (p - 1.0) * s.width.real(), s.n_dim};
}

cd zeta(double a, double p, double t) {
    const double at = a * t;
    return a * cd{p, -at} / (1.0 + at * at);
}

cd zeta(cd z, double p, double t) {
    const double a = z.real();
    const double b = z.imag();
    const double q = (1.0 - b * t) * (1.0 - b * t) + (a * t) * (a * t);
    return (p - 1.0) * a / q + z / (1.0 + I * t * z);
}

cd lhs_integrand_gaussian_r2(double a, double p, int n, double t, double xi_sq) {
    const double at = a * t;
    const double q = 1.0 + at * at;
    const double prefactor = std::pow(q, -0.25 * n * (p - 1.0));
    // zeta (1 + i t a) and i t - 1/zeta in forms that stay accurate for large t
    const cd zeta_shift = a * cd{p + at * at, at * (p - 1.0)} / q;
    const cd exponent = cd{-1.0, at * p} / (a * cd{p, -at});
    return prefactor * std::pow(zeta_shift, -0.5 * n) * std::exp(0.5 * xi_sq * exponent);
}

cd lhs_integrand_gaussian(double a, double p, int n, double t, std::span<const double> xi) {
    require_dims(n, xi);
    return lhs_integrand_gaussian_r2(a, p, n, t, norm_sq(xi));
}

cd lhs_integrand_state(const GaussianState& s, double p, double t, double xi_sq) {
    const GaussianState out = gaussian_fourier(gaussian_power(gaussian_evolve(s, t), p));
    return std::exp(I * (0.5 * t * xi_sq)) * out.at_radius_sq(xi_sq);
}

cd rhs_core_state(const GaussianState& s, double p, double t, double xi_sq) {
    const GaussianState back = gaussian_evolve(gaussian_fourier(s), -t);
    return gaussian_evolve(gaussian_power(back, p), t).at_radius_sq(xi_sq);
}

cd rhs_integrand_state(const GaussianState& s, double p, double t, double xi_sq) {
    const double exponent = 0.5 * s.n_dim * (p - 1.0) - 2.0;
    return std::pow(t, exponent) * rhs_core_state(s, p, t, xi_sq);
}

cd rhs_integrand_gaussian_r2(double a, double p, int n, double t, double xi_sq) {
    return rhs_integrand_state(GaussianState{1.0, a, n}, p, t, xi_sq);
}

cd rhs_integrand_gaussian(double a, double p, int n, double t, std::span<const double> xi) {
    require_dims(n, xi);
    return rhs_integrand_gaussian_r2(a, p, n, t, norm_sq(xi));
}

double lhs_asymptote(double a, double p, int n, double t, double xi_sq) {
    const double at = a * t;
    return std::pow(1.0 + at * at, -0.25 * n * (p - 1.0)) * std::pow(a, -0.5 * n) *
           std::exp(-p * xi_sq / (2.0 * a));
}

double rhs_core_small_time_limit(double a, double p, int n, double xi_sq) {
    return std::pow(a, -0.5 * n * p) * std::exp(-p * xi_sq / (2.0 * a));
}

}  // namespace nlpoisson
