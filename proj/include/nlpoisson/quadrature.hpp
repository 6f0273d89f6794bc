#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace nlpoisson {

struct QuadratureSpec {
    double abs_tol = 1e-13;
    double rel_tol = 1e-11;
    /// [0, split] is integrated directly, [split, inf) through t -> 1/t.
    double split_point = 1.0;
    /// Bisections allowed after the initial partition.
    std::size_t max_subdivisions = 4000;
    /// Known behavior f(t) ~ t^alpha as t -> 0+ (alpha > -1).
    std::optional<double> singular_exponent;
    /// Known behavior of the mapped tail f(1/s)/s^2 ~ s^alpha as s -> 0+.
    std::optional<double> tail_exponent;

    void validate() const;
};

struct QuadratureResult {
    std::complex<double> value;
    double error = 0.0;
    bool converged = true;
    std::size_t evaluations = 0;
};

struct VectorQuadratureResult {
    std::vector<std::complex<double>> values;
    std::vector<double> errors;
    bool converged = true;
    std::size_t evaluations = 0;
};

using ScalarIntegrand = std::function<std::complex<double>(double)>;

/// Writes the m components of the integrand at t into `out`.
using VectorIntegrand = std::function<void(double, std::span<std::complex<double>>)>;

/// \int_0^inf f(t) dt.
///
/// Each of the two pieces is integrated by globally adaptive 7/15-point
/// Gauss-Kronrod on a shared subdivision tree. When the endpoint exponent of a
/// piece is known, its initial partition is graded geometrically toward 0 and
/// the innermost sliver [0, eps] is closed with f(eps) eps / (alpha + 1).
/// Throws std::runtime_error if the integrand returns a non-finite value.
QuadratureResult integrate_half_line(const ScalarIntegrand& f, const QuadratureSpec& spec);
VectorQuadratureResult integrate_half_line(const VectorIntegrand& f, std::size_t components,
                                           const QuadratureSpec& spec);

/// \int_{1/T}^{T} f(t) dt on a dyadic initial partition (T > 1).
QuadratureResult partial_integral(const ScalarIntegrand& f, double cutoff, const QuadratureSpec& spec);

/// \int_a^b f(t) dt, adaptive Gauss-Kronrod from a single panel.
QuadratureResult integrate_interval(const ScalarIntegrand& f, double a, double b,
                                    const QuadratureSpec& spec);

}  // namespace nlpoisson
