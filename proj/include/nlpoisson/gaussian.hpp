#pragma once

#include <complex>
#include <span>

namespace nlpoisson {

/// Isotropic Gaussian x -> A exp(-w |x|^2 / 2) on R^n, with Re w > 0.
///
/// The family is closed under the free flow, the Fourier transform, the
/// quadratic phase, dilations and the power nonlinearity |u|^(p-1) u.
struct GaussianState {
    std::complex<double> amplitude{1.0, 0.0};
    std::complex<double> width{1.0, 0.0};
    int n_dim = 1;

    std::complex<double> operator()(std::span<const double> x) const;
    std::complex<double> at_radius_sq(double r2) const;
};

/// g_z with unit amplitude.
GaussianState unit_gaussian(std::complex<double> z, int n_dim);

// Complex powers below use the principal branch. Every base that appears
// ((1 + i t w), w, zeta (1 + i t a), i t) lies in a fixed open half plane for
// all admissible t of one sign, so the principal branch is the branch that is
// continuous in t from t = 0.

/// Fourier transform as a state: A w^(-n/2) exp(-|xi|^2 / (2 w)).
GaussianState gaussian_fourier(const GaussianState& s);
std::complex<double> gaussian_fourier(const GaussianState& s, std::span<const double> xi);

/// U(t) applied to the state: A (1 + i t w)^(-n/2), width w / (1 + i t w).
GaussianState gaussian_evolve(const GaussianState& s, double t);

/// Multiplication by exp(i |x|^2 / (2 t)).
GaussianState gaussian_quadratic_phase(const GaussianState& s, double t);

/// D_t f(x) = (i t)^(-n/2) f(x / t), t > 0.
GaussianState gaussian_dilate(const GaussianState& s, double t);

/// |u|^(p-1) u.
GaussianState gaussian_power(const GaussianState& s, double p);

/// (i t)^(n/2) for t > 0, principal branch t^(n/2) e^(i pi n / 4).
std::complex<double> dilation_factor(double t, int n_dim);

/// zeta = a (p - i a t) / (1 + (a t)^2) for real initial width a.
std::complex<double> zeta(double a, double p, double t);

/// zeta for complex initial width z = a + i b.
std::complex<double> zeta(std::complex<double> z, double p, double t);

/// exp(i t |xi|^2/2) F(|U(t) g_a|^(p-1) U(t) g_a)(xi), closed form in zeta.
std::complex<double> lhs_integrand_gaussian(double a, double p, int n, double t,
                                            std::span<const double> xi);
std::complex<double> lhs_integrand_gaussian_r2(double a, double p, int n, double t,
                                               double xi_sq);

/// Same integrand for an arbitrary Gaussian state, composed step by step
/// from gaussian_evolve, gaussian_power and gaussian_fourier.
std::complex<double> lhs_integrand_state(const GaussianState& s, double p, double t,
                                         double xi_sq);

/// U(t)(|U(-t) F g|^(p-1) U(-t) F g)(xi), composed from the state algebra.
std::complex<double> rhs_core_state(const GaussianState& s, double p, double t,
                                    double xi_sq);

/// t^(n(p-1)/2 - 2) U(t)(|U(-t) F g_a|^(p-1) U(-t) F g_a)(xi).
std::complex<double> rhs_integrand_gaussian(double a, double p, int n, double t,
                                            std::span<const double> xi);
std::complex<double> rhs_integrand_gaussian_r2(double a, double p, int n, double t,
                                               double xi_sq);
std::complex<double> rhs_integrand_state(const GaussianState& s, double p, double t,
                                         double xi_sq);

/// Large-time form of the left integrand:
/// (1 + (a t)^2)^(-n(p-1)/4) a^(-n/2) exp(-p |xi|^2 / (2 a)).
double lhs_asymptote(double a, double p, int n, double t, double xi_sq);

/// Limit of the right-hand core as t -> 0+, derived from the state algebra:
/// a^(-n p / 2) exp(-p |xi|^2 / (2 a)).
double rhs_core_small_time_limit(double a, double p, int n, double xi_sq);

}  // namespace nlpoisson
