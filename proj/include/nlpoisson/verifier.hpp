#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nlpoisson/gaussian.hpp"
#include "nlpoisson/grid.hpp"
#include "nlpoisson/nonlinearity.hpp"
#include "nlpoisson/params.hpp"
#include "nlpoisson/quadrature.hpp"

namespace nlpoisson {

/// Initial data: sampled on a grid, or a closed-form Gaussian.
using InitialData = std::variant<Field, GaussianState>;

/// Frequencies at which the two sides are compared (row-major, n per point).
struct XiSet {
    int n_dim = 1;
    std::vector<double> coords;
    /// Spacing of a uniform tensor grid, 0 if the set is not one.
    double spacing = 0.0;

    std::size_t size() const noexcept { return coords.size() / static_cast<std::size_t>(n_dim); }
    std::span<const double> point(std::size_t m) const noexcept {
        return {coords.data() + m * static_cast<std::size_t>(n_dim), static_cast<std::size_t>(n_dim)};
    }
    double radius_sq(std::size_t m) const noexcept;

    /// `points_per_axis` uniformly spaced values per axis in [-xi_max, xi_max].
    static XiSet uniform(int n_dim, double xi_max, std::size_t points_per_axis);
};

struct ProfileResult {
    std::vector<Complex> values;
    std::vector<double> errors;
    std::vector<bool> converged;
    std::vector<std::string> warnings;
    std::size_t evaluations = 0;
};

/// \int_0^inf e^(i t |xi|^2/2) F(|U(t) phi|^(p-1) U(t) phi)(xi) dt at each xi.
ProfileResult lhs_profile(const InitialData& phi, const SimParams& params, const XiSet& xi,
                          const QuadratureSpec& spec);

/// \int_0^inf t^(n(p-1)/2-2) U(t)(|U(-t) F phi|^(p-1) U(-t) F phi)(xi) dt at each xi.
ProfileResult rhs_profile(const InitialData& phi, const SimParams& params, const XiSet& xi,
                          const QuadratureSpec& spec);

struct VerificationReport {
    SimParams params;
    XiSet xi;
    std::vector<Complex> lhs_values;
    std::vector<Complex> rhs_values;
    std::vector<double> abs_residual;
    std::vector<double> rel_residual;
    double l2_lhs = 0.0;
    double l2_rhs = 0.0;
    double max_rel_residual = 0.0;
    /// max over xi of (lhs error + rhs error) / denominator
    double combined_error_estimate = 0.0;
    double threshold = 0.0;
    bool passed = false;
    std::vector<std::string> quadrature_warnings;
};

/// Compares both sides. Relative residuals use max(|lhs|, |rhs|, 1e-14 max|lhs|)
/// as denominator. Passes when every integral converged and max_rel_residual
/// is at most max(10 x combined_error_estimate, residual_tolerance); the extra
/// tolerance covers grid discretization error, which the quadrature cannot see.
VerificationReport verify_identity(const InitialData& phi, const SimParams& params, const XiSet& xi,
                                   const QuadratureSpec& spec, double residual_tolerance = 0.0);

struct PointwiseReport {
    double t = 0.0;
    double residual = 0.0;  ///< max abs difference of the two sides
    double scale = 0.0;     ///< max abs value of the left side
    std::vector<std::string> warnings;
};

/// U(t)(|U(-t) F phi|^(p-1) U(-t) F phi) against t^(-n(p-1)/2) M_t F(|U(1/t) phi|^(p-1) U(1/t) phi)
/// on the frequency nodes of phi's grid, both sides by FFT pipelines.
PointwiseReport pointwise_check(const Field& phi, const SimParams& params, double t);

/// Same identity for a Gaussian, both sides from the closed-form state algebra.
PointwiseReport pointwise_check(const GaussianState& phi, const SimParams& params, double t,
                                const XiSet& xi);

struct LogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
    double relative_residual = 0.0;  ///< rms residual / mean |value|
};

/// Least-squares fit values ~ slope ln T + intercept.
LogFit fit_log_growth(std::span<const double> cutoffs, std::span<const double> values);

/// \int_{1/T}^{T} f for each cutoff T.
std::vector<double> scan_partial_integrals(const ScalarIntegrand& f, std::span<const double> cutoffs,
                                           const QuadratureSpec& spec);

struct DivergenceReport {
    double p = 0.0;
    std::vector<double> cutoffs;
    std::vector<double> partial_magnitudes;
    double fitted_slope = 0.0;
    double fitted_intercept = 0.0;
    double fit_residual = 0.0;
    double relative_fit_residual = 0.0;

    /// Same scan just above the threshold, p + 0.1.
    double companion_p = 0.0;
    std::vector<double> companion_magnitudes;
    std::vector<double> companion_increments;
    /// increment_k / increment_(k+1), normalized to one decade of T
    std::vector<double> companion_decay_per_decade;

    bool diverges() const noexcept { return fitted_slope > 0.0 && relative_fit_residual < 0.02; }
    bool companion_converges() const noexcept;
};

/// Partial integrals of |lhs integrand| at xi = 0 for g_a at p = 1 + 2/n.
DivergenceReport divergence_scan(double a, int n, std::span<const double> cutoffs,
                                 const QuadratureSpec& spec = {});

enum class BoundSide { lhs, rhs };

struct BoundOptions {
    BoundSide side = BoundSide::lhs;
    std::size_t xi_points_per_axis = 129;
    /// Half width of the xi box for ||F||; chosen from the data when <= 0.
    double xi_half_width = 0.0;
    /// Grid on which Gaussian members are sampled for their data-space norms.
    std::size_t norm_grid_points = 1024;
    QuadratureSpec quadrature{};
};

struct BoundMember {
    std::size_t base = 0;
    double scale = 1.0;
    double f_norm = 0.0;        ///< ||F||_2 over the xi box
    double data_combination = 0.0;
    XpNorms norms;
    double ratio = 0.0;
};

struct BoundReport {
    std::string description;
    std::vector<BoundMember> members;
    double max_ratio = 0.0;
    double min_ratio = 0.0;
    /// max over bases of (max/min ratio across scalings) - 1
    double homogeneity_spread = 0.0;
    bool passed = false;
};

/// Data-space combination on the right of the a priori bound, without its
/// constant. The L2-critical case uses ||phi||_2^p.
double bound_combination(const XpNorms& norms, const SimParams& params);

/// ||F||_2 / combination for every (base, scale) pair. Passes when the ratio is
/// finite and positive everywhere and constant under scaling to 1e-6.
BoundReport bound_check(const std::vector<InitialData>& bases, const std::vector<double>& scales,
                        const SimParams& params, const BoundOptions& options = {},
                        std::string description = {});

/// (1 - sigma) p delta(p+1) - (n(p-1)/2 - 2); zero for every supercritical power.
double supercritical_exponent_defect(int n, double p);

/// 1 - ((1 - n(p-1)/4) + (p+1)/q) with 2/q = delta(p+1); zero for every admissible power.
double holder_exponent_defect(int n, double p);

}  // namespace nlpoisson
