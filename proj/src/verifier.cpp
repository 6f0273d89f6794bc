#include "nlpoisson/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "nlpoisson/operators.hpp"

namespace nlpoisson {

namespace {

// Below this time the sampled pipelines evolve directly; above it they use the
// factorization of U(t), which keeps every FFT input bounded in width.
constexpr double kFactorizationSwitch = 1.0;
constexpr double kResolutionThreshold = 1e-10;

void require_admissible(const SimParams& params) {
    if (!params.verifiable()) {
        throw std::invalid_argument("regime " + std::string(to_string(params.regime)) +
                                    " is outside the range where both integrals converge");
    }
}

void require_dimension(const InitialData& phi, const SimParams& params, const XiSet& xi) {
    const int n = std::visit([](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Field>) return d.grid.n_dim();
        else return d.n_dim;
    }, phi);
    if (n != params.n || xi.n_dim != params.n) {
        throw std::invalid_argument("dimension mismatch between data, params and xi set");
    }
}

Complex power_factor(Complex amplitude, double p) {
    const double r = std::abs(amplitude);
    return r == 0.0 ? Complex{} : std::pow(r, p - 1.0) * amplitude;
}

QuadratureSpec with_exponents(QuadratureSpec spec, bool lhs, const SimParams& params) {
    const double alpha = params.time_exponent();
    if (lhs) {
        if (!spec.tail_exponent) spec.tail_exponent = alpha;
    } else {
        if (!spec.singular_exponent) spec.singular_exponent = alpha;
    }
    return spec;
}

void note_resolution(const Field& f, const char* what, std::vector<std::string>& warnings) {
    const ResolutionReport r = resolution_check(f);
    if (!r.resolved(kResolutionThreshold)) {
        warnings.push_back(std::string(what) + " is under-resolved (edge ratio " + std::to_string(r.edge_ratio) +
                           ", spectral ratio " + std::to_string(r.spectral_ratio) + ")");
    }
}

ProfileResult gaussian_profile(const GaussianState& g, const SimParams& params, const XiSet& xi,
                               const QuadratureSpec& spec, bool lhs) {
    ProfileResult out;
    const std::size_t m = xi.size();
    out.values.resize(m);
    out.errors.resize(m);
    out.converged.assign(m, true);
    const double p = params.p;
    const int n = params.n;
    const bool real_width = g.width.imag() == 0.0 && g.width.real() > 0.0;
    const Complex factor = power_factor(g.amplitude, p);
    const double a = g.width.real();
    if (factor == Complex{}) return out;

    for (std::size_t k = 0; k < m; ++k) {
        const double r2 = xi.radius_sq(k);
        ScalarIntegrand f;
        if (lhs) {
            f = real_width ? ScalarIntegrand([=](double t) { return factor * lhs_integrand_gaussian_r2(a, p, n, t, r2); })
                           : ScalarIntegrand([&g, p, r2](double t) { return lhs_integrand_state(g, p, t, r2); });
        } else {
            f = real_width ? ScalarIntegrand([=](double t) { return factor * rhs_integrand_gaussian_r2(a, p, n, t, r2); })
                           : ScalarIntegrand([&g, p, r2](double t) { return rhs_integrand_state(g, p, t, r2); });
        }
        try {
            const QuadratureResult r = integrate_half_line(f, spec);
            out.values[k] = r.value;
            out.errors[k] = r.error;
            out.converged[k] = r.converged;
            out.evaluations += r.evaluations;
            if (!r.converged) {
                out.warnings.push_back("quadrature did not reach tolerance at xi index " + std::to_string(k));
            }
        } catch (const std::runtime_error& e) {
            out.values[k] = Complex{std::nan(""), std::nan("")};
            out.errors[k] = std::numeric_limits<double>::infinity();
            out.converged[k] = false;
            out.warnings.push_back("quadrature failed at xi index " + std::to_string(k) + ": " + e.what());
        }
    }
    return out;
}

ProfileResult sampled_profile(const Field& phi, const SimParams& params, const XiSet& xi,
                              const QuadratureSpec& spec, bool lhs) {
    if (phi.space != SpaceTag::physical) throw std::invalid_argument("sampled data must be a physical field");
    ProfileResult out;
    const std::size_t m = xi.size();
    const double p = params.p;
    const int n = params.n;
    note_resolution(phi, "initial data", out.warnings);

    // drop the closed form so the pipeline is purely sampled
    Field data = phi;
    data.analytic.reset();

    std::vector<double> xi_sq(m);
    for (std::size_t k = 0; k < m; ++k) xi_sq[k] = xi.radius_sq(k);

    VectorIntegrand integrand;
    Field dual_data = data;
    std::optional<PointTransform> transform;
    if (lhs) {
        transform.emplace(data.grid, SpaceTag::physical, xi.coords);
        integrand = [&](double t, std::span<Complex> values) {
            if (t <= kFactorizationSwitch) {
                const Field u = power_nonlinearity(propagate(data, t), p);
                transform->apply(u, values);
                for (std::size_t k = 0; k < m; ++k) values[k] *= std::polar(1.0, 0.5 * t * xi_sq[k]);
            } else {
                Field w = power_nonlinearity(fourier(quadratic_phase(data, t)), p);
                const Field back = quadratic_phase(inverse_fourier(w), -t);
                transform->apply(back, values);
                const double scale = std::pow(t, -0.5 * n * (p - 1.0));
                for (Complex& v : values) v *= scale;
            }
        };
    } else {
        dual_data = as_physical_on_dual(fourier(data));
        dual_data.analytic.reset();
        transform.emplace(dual_data.grid, SpaceTag::frequency, xi.coords);
        const double alpha = params.time_exponent();
        integrand = [&, alpha](double t, std::span<Complex> values) {
            if (t <= kFactorizationSwitch) {
                const Field c = power_nonlinearity(propagate(dual_data, -t), p);
                const Field spectrum = chirp(fourier(c), -0.5 * t);
                transform->apply(spectrum, values);
                const double scale = std::pow(t, alpha);
                for (Complex& v : values) v *= scale;
            } else {
                const Field s = power_nonlinearity(fourier(quadratic_phase(dual_data, -t)), p);
                transform->apply(s, values);
                const double scale = 1.0 / (t * t);
                for (std::size_t k = 0; k < m; ++k) values[k] *= scale * std::polar(1.0, 0.5 * xi_sq[k] / t);
            }
        };
    }

    out.values.assign(m, Complex{});
    out.errors.assign(m, 0.0);
    out.converged.assign(m, true);
    if (max_abs(data) == 0.0) return out;
    try {
        const VectorQuadratureResult r = integrate_half_line(integrand, m, spec);
        out.values = r.values;
        out.errors = r.errors;
        out.converged.assign(m, r.converged);
        out.evaluations = r.evaluations;
        if (!r.converged) out.warnings.push_back("quadrature did not reach tolerance on the shared subdivision");
    } catch (const std::runtime_error& e) {
        out.values.assign(m, Complex{std::nan(""), std::nan("")});
        out.errors.assign(m, std::numeric_limits<double>::infinity());
        out.converged.assign(m, false);
        out.warnings.push_back(std::string("quadrature failed: ") + e.what());
    }
    return out;
}

ProfileResult profile(const InitialData& phi, const SimParams& params, const XiSet& xi,
                      const QuadratureSpec& spec, bool lhs) {
    require_admissible(params);
    require_dimension(phi, params, xi);
    const QuadratureSpec s = with_exponents(spec, lhs, params);
    if (const auto* g = std::get_if<GaussianState>(&phi)) return gaussian_profile(*g, params, xi, s, lhs);
    return sampled_profile(std::get<Field>(phi), params, xi, s, lhs);
}

double xi_l2(const XiSet& xi, const std::vector<Complex>& values) {
    if (xi.spacing <= 0.0) return std::nan("");
    double sum = 0.0;
    for (const Complex& v : values) sum += std::norm(v);
    return std::sqrt(sum * std::pow(xi.spacing, xi.n_dim));
}

}  // namespace

double XiSet::radius_sq(std::size_t m) const noexcept {
    double r2 = 0.0;
    for (double c : point(m)) r2 += c * c;
    return r2;
}

XiSet XiSet::uniform(int n_dim, double xi_max, std::size_t points_per_axis) {
    if (n_dim < 1 || n_dim > 3) throw std::invalid_argument("xi set dimension must be 1, 2 or 3");
    if (!(xi_max > 0.0)) throw std::invalid_argument("xi_max must be positive");
    if (points_per_axis < 2) throw std::invalid_argument("need at least 2 xi points per axis");
    XiSet set;
    set.n_dim = n_dim;
    set.spacing = 2.0 * xi_max / static_cast<double>(points_per_axis - 1);
    std::vector<double> axis(points_per_axis);
    for (std::size_t i = 0; i < points_per_axis; ++i) {
        axis[i] = -xi_max + set.spacing * static_cast<double>(i);
    }
    axis.back() = xi_max;
    std::size_t total = 1;
    for (int d = 0; d < n_dim; ++d) total *= points_per_axis;
    set.coords.resize(total * static_cast<std::size_t>(n_dim));
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        for (int d = n_dim - 1; d >= 0; --d) {
            set.coords[flat * static_cast<std::size_t>(n_dim) + static_cast<std::size_t>(d)] = axis[rest % points_per_axis];
            rest /= points_per_axis;
        }
    }
    return set;
}

ProfileResult lhs_profile(const InitialData& phi, const SimParams& params, const XiSet& xi,
                          const QuadratureSpec& spec) {
    return profile(phi, params, xi, spec, true);
}

ProfileResult rhs_profile(const InitialData& phi, const SimParams& params, const XiSet& xi,
                          const QuadratureSpec& spec) {
    return profile(phi, params, xi, spec, false);
}

VerificationReport verify_identity(const InitialData& phi, const SimParams& params, const XiSet& xi,
                                   const QuadratureSpec& spec, double residual_tolerance) {
    if (residual_tolerance < 0.0) throw std::invalid_argument("residual tolerance must be nonnegative");
    const ProfileResult lhs = lhs_profile(phi, params, xi, spec);
    const ProfileResult rhs = rhs_profile(phi, params, xi, spec);

    VerificationReport report;
    report.params = params;
    report.xi = xi;
    report.lhs_values = lhs.values;
    report.rhs_values = rhs.values;
    for (const auto& w : lhs.warnings) report.quadrature_warnings.push_back("lhs: " + w);
    for (const auto& w : rhs.warnings) report.quadrature_warnings.push_back("rhs: " + w);

    const std::size_t m = xi.size();
    double sup = 0.0;
    for (const Complex& v : lhs.values) sup = std::max(sup, std::abs(v));
    const double floor = 1e-14 * sup;

    report.abs_residual.resize(m);
    report.rel_residual.resize(m);
    bool all_converged = true;
    bool all_finite = true;
    for (std::size_t k = 0; k < m; ++k) {
        const Complex l = lhs.values[k];
        const Complex r = rhs.values[k];
        const double diff = std::abs(l - r);
        const double denom = std::max({std::abs(l), std::abs(r), floor});
        report.abs_residual[k] = diff;
        report.rel_residual[k] = denom > 0.0 ? diff / denom : 0.0;
        const double est = denom > 0.0 ? (lhs.errors[k] + rhs.errors[k]) / denom : 0.0;
        if (!std::isfinite(report.rel_residual[k]) || !std::isfinite(est)) {
            all_finite = false;
            continue;
        }
        report.max_rel_residual = std::max(report.max_rel_residual, report.rel_residual[k]);
        report.combined_error_estimate = std::max(report.combined_error_estimate, est);
        all_converged = all_converged && lhs.converged[k] && rhs.converged[k];
    }
    if (!all_finite) report.max_rel_residual = std::numeric_limits<double>::infinity();
    report.l2_lhs = xi_l2(xi, lhs.values);
    report.l2_rhs = xi_l2(xi, rhs.values);
    report.threshold = std::max(10.0 * report.combined_error_estimate, residual_tolerance);
    report.passed = all_finite && all_converged && report.max_rel_residual <= report.threshold;
    return report;
}

PointwiseReport pointwise_check(const Field& phi, const SimParams& params, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("pointwise check needs t > 0");
    if (phi.space != SpaceTag::physical) throw std::invalid_argument("pointwise check expects a physical field");
    if (phi.grid.n_dim() != params.n) throw std::invalid_argument("field dimension does not match params.n");
    const double p = params.p;
    PointwiseReport report;
    report.t = t;

    Field data = phi;
    data.analytic.reset();

    Field hat = as_physical_on_dual(fourier(data));
    const Field backward = propagate(hat, -t);
    note_resolution(backward, "U(-t) F phi", report.warnings);
    const Field left = propagate(power_nonlinearity(backward, p), t);

    const Field forward = propagate(data, 1.0 / t);
    note_resolution(forward, "U(1/t) phi", report.warnings);
    Field right = chirp(fourier(power_nonlinearity(forward, p)), 0.5 / t);
    const double scale = std::pow(t, -0.5 * params.n * (p - 1.0));

    for (std::size_t k = 0; k < left.samples.size(); ++k) {
        report.residual = std::max(report.residual, std::abs(left.samples[k] - scale * right.samples[k]));
        report.scale = std::max(report.scale, std::abs(left.samples[k]));
    }
    return report;
}

PointwiseReport pointwise_check(const GaussianState& phi, const SimParams& params, double t,
                                const XiSet& xi) {
    if (!(t > 0.0)) throw std::invalid_argument("pointwise check needs t > 0");
    if (phi.n_dim != params.n || xi.n_dim != params.n) throw std::invalid_argument("dimension mismatch");
    const double p = params.p;
    PointwiseReport report;
    report.t = t;
    const GaussianState right_state =
        gaussian_fourier(gaussian_power(gaussian_evolve(phi, 1.0 / t), p));
    const double scale = std::pow(t, -0.5 * params.n * (p - 1.0));
    for (std::size_t k = 0; k < xi.size(); ++k) {
        const double r2 = xi.radius_sq(k);
        const Complex left = rhs_core_state(phi, p, t, r2);
        const Complex right = scale * std::polar(1.0, 0.5 * r2 / t) * right_state.at_radius_sq(r2);
        report.residual = std::max(report.residual, std::abs(left - right));
        report.scale = std::max(report.scale, std::abs(left));
    }
    return report;
}

LogFit fit_log_growth(std::span<const double> cutoffs, std::span<const double> values) {
    if (cutoffs.size() != values.size() || cutoffs.size() < 2) {
        throw std::invalid_argument("log fit needs at least two matching points");
    }
    const std::size_t m = cutoffs.size();
    std::vector<double> x(m);
    for (std::size_t i = 0; i < m; ++i) x[i] = std::log(cutoffs[i]);
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(m);
    const double my = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(m);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (values[i] - my);
    }
    LogFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    double mean_abs = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = values[i] - (fit.slope * x[i] + fit.intercept);
        ss += r * r;
        mean_abs += std::abs(values[i]);
    }
    fit.rms_residual = std::sqrt(ss / static_cast<double>(m));
    mean_abs /= static_cast<double>(m);
    fit.relative_residual = mean_abs > 0.0 ? fit.rms_residual / mean_abs : 0.0;
    return fit;
}

std::vector<double> scan_partial_integrals(const ScalarIntegrand& f, std::span<const double> cutoffs,
                                           const QuadratureSpec& spec) {
    std::vector<double> out;
    out.reserve(cutoffs.size());
    for (double T : cutoffs) {
        const QuadratureResult r = partial_integral(f, T, spec);
        if (!std::isfinite(r.value.real())) throw std::runtime_error("non-finite partial integral");
        out.push_back(r.value.real());
    }
    return out;
}

bool DivergenceReport::companion_converges() const noexcept {
    if (companion_decay_per_decade.empty()) return false;
    return std::all_of(companion_decay_per_decade.begin(), companion_decay_per_decade.end(),
                       [](double r) { return r >= 1.2; });
}

DivergenceReport divergence_scan(double a, int n, std::span<const double> cutoffs, const QuadratureSpec& spec) {
    if (!(a > 0.0)) throw std::invalid_argument("Gaussian width must be positive");
    if (n < 1 || n > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
    if (cutoffs.size() < 2) throw std::invalid_argument("need at least two cutoffs");
    for (std::size_t i = 0; i < cutoffs.size(); ++i) {
        if (!(cutoffs[i] > 1.0)) throw std::invalid_argument("cutoffs must exceed 1");
        if (i > 0 && !(cutoffs[i] > cutoffs[i - 1])) throw std::invalid_argument("cutoffs must be strictly increasing");
    }
    if (cutoffs.back() / cutoffs.front() < 1000.0 * (1.0 - 1e-12)) {
        throw std::invalid_argument("cutoffs must span at least three decades");
    }

    DivergenceReport report;
    report.p = 1.0 + 2.0 / n;
    report.cutoffs.assign(cutoffs.begin(), cutoffs.end());
    auto magnitude = [a, n](double p) {
        return ScalarIntegrand([a, n, p](double t) { return Complex{std::abs(lhs_integrand_gaussian_r2(a, p, n, t, 0.0))}; });
    };
    report.partial_magnitudes = scan_partial_integrals(magnitude(report.p), cutoffs, spec);
    const LogFit fit = fit_log_growth(cutoffs, report.partial_magnitudes);
    report.fitted_slope = fit.slope;
    report.fitted_intercept = fit.intercept;
    report.fit_residual = fit.rms_residual;
    report.relative_fit_residual = fit.relative_residual;

    report.companion_p = report.p + 0.1;
    report.companion_magnitudes = scan_partial_integrals(magnitude(report.companion_p), cutoffs, spec);
    for (std::size_t i = 0; i + 1 < cutoffs.size(); ++i) {
        report.companion_increments.push_back(report.companion_magnitudes[i + 1] - report.companion_magnitudes[i]);
    }
    for (std::size_t i = 0; i + 1 < report.companion_increments.size(); ++i) {
        const double decades = 0.5 * std::log10(cutoffs[i + 2] / cutoffs[i]);
        const double ratio = report.companion_increments[i] / report.companion_increments[i + 1];
        report.companion_decay_per_decade.push_back(std::pow(ratio, 1.0 / decades));
    }
    return report;
}

double bound_combination(const XpNorms& norms, const SimParams& params) {
    const double p = params.p;
    switch (params.regime) {
        case RegimeTag::subcritical: {
            const double theta = params.theta.value();
            return std::pow(norms.weighted.value(), theta * p) * std::pow(norms.l2, (1.0 - theta) * p);
        }
        case RegimeTag::L2_critical: return std::pow(norms.l2, p);
        case RegimeTag::supercritical: {
            const double sigma = params.sigma.value();
            return std::pow(norms.sobolev_hom.value(), (1.0 - sigma) * p) * std::pow(norms.l2, sigma * p);
        }
        default: throw std::invalid_argument("no bound outside the admissible regimes");
    }
}

double supercritical_exponent_defect(int n, double p) {
    const double sigma = sigma_exponent(n, p);
    return (1.0 - sigma) * p * delta(n, p + 1.0) - (0.5 * n * (p - 1.0) - 2.0);
}

double holder_exponent_defect(int n, double p) {
    const double inv_q = 0.5 * delta(n, p + 1.0);
    return 1.0 - ((1.0 - 0.25 * n * (p - 1.0)) + (p + 1.0) * inv_q);
}

BoundReport bound_check(const std::vector<InitialData>& bases, const std::vector<double>& scales,
                        const SimParams& params, const BoundOptions& options, std::string description) {
    require_admissible(params);
    if (bases.empty() || scales.empty()) throw std::invalid_argument("bound family is empty");
    if (params.regime == RegimeTag::supercritical) {
        const double defect = supercritical_exponent_defect(params.n, params.p);
        if (std::abs(defect) > 1e-12) throw std::logic_error("supercritical exponent identity fails");
    }
    for (double s : scales) {
        if (!(s > 0.0)) throw std::invalid_argument("amplitude scales must be positive");
    }
    std::size_t norm_points = options.norm_grid_points;
    if (params.n >= 2) norm_points = std::min<std::size_t>(norm_points, params.n == 2 ? 256 : 64);

    BoundReport report;
    report.description = std::move(description);
    report.min_ratio = std::numeric_limits<double>::infinity();
    bool all_good = true;
    for (std::size_t b = 0; b < bases.size(); ++b) {
        double half_width = options.xi_half_width;
        if (half_width <= 0.0) {
            if (const auto* g = std::get_if<GaussianState>(&bases[b])) {
                const double w = std::abs(g->width);
                const double spread = std::max(w, w * w / g->width.real());
                half_width = std::sqrt(80.0 * spread * params.p);
            } else {
                half_width = 0.9 * std::get<Field>(bases[b]).grid.dual_half_width();
            }
        }
        const XiSet xi = XiSet::uniform(params.n, half_width, options.xi_points_per_axis);
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (double s : scales) {
            const auto* g = std::get_if<GaussianState>(&bases[b]);
            const Field sampled = g ? sample(GaussianState{g->amplitude * s, g->width, g->n_dim},
                                             make_self_dual_grid(params.n, norm_points))
                                    : scaled(std::get<Field>(bases[b]), s);
            const InitialData member = g ? InitialData{GaussianState{g->amplitude * s, g->width, g->n_dim}}
                                         : InitialData{sampled};
            const ProfileResult prof = options.side == BoundSide::lhs
                                           ? lhs_profile(member, params, xi, options.quadrature)
                                           : rhs_profile(member, params, xi, options.quadrature);
            BoundMember row;
            row.base = b;
            row.scale = s;
            row.f_norm = xi_l2(xi, prof.values);
            row.norms = compute_xp_norms(sampled, params);
            row.data_combination = bound_combination(row.norms, params);
            row.ratio = row.f_norm / row.data_combination;
            if (!std::isfinite(row.ratio) || !(row.ratio > 0.0)) all_good = false;
            lo = std::min(lo, row.ratio);
            hi = std::max(hi, row.ratio);
            report.max_ratio = std::max(report.max_ratio, row.ratio);
            report.min_ratio = std::min(report.min_ratio, row.ratio);
            report.members.push_back(row);
        }
        report.homogeneity_spread = std::max(report.homogeneity_spread, hi / lo - 1.0);
    }
    report.passed = all_good && report.homogeneity_spread <= 1e-6;
    return report;
}

}  // namespace nlpoisson
