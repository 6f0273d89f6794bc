#include "nlpoisson/operators.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace nlpoisson {

namespace {

constexpr Complex I{0.0, 1.0};

// The FFTW planner is not thread safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

void fft_in_place(std::vector<Complex>& data, const SpatialGrid& grid, int sign) {
    std::vector<int> dims(static_cast<std::size_t>(grid.n_dim()),
                          static_cast<int>(grid.points_per_dim()));
    auto* buffer = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft(grid.n_dim(), dims.data(), buffer, buffer, sign, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw std::runtime_error("FFTW failed to create a plan");
    fftw_execute(plan);
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
}

// (-1)^(sum of per-axis indices) for every flat index
void apply_checkerboard(std::vector<Complex>& data, const SpatialGrid& grid) {
    const std::size_t n = grid.points_per_dim();
    for (std::size_t flat = 0; flat < data.size(); ++flat) {
        std::size_t rest = flat;
        std::size_t parity = 0;
        for (int d = 0; d < grid.n_dim(); ++d) {
            parity += rest % n;
            rest /= n;
        }
        if (parity & 1U) data[flat] = -data[flat];
    }
}

bool on_outer_layer(std::size_t flat, const SpatialGrid& grid) {
    const std::size_t n = grid.points_per_dim();
    for (int d = 0; d < grid.n_dim(); ++d) {
        const std::size_t j = flat % n;
        if (j == 0 || j == n - 1) return true;
        flat /= n;
    }
    return false;
}

bool beyond_fraction_of_nyquist(std::size_t flat, const SpatialGrid& grid, double fraction) {
    const std::size_t n = grid.points_per_dim();
    const double cutoff = fraction * grid.dual_half_width();
    for (int d = 0; d < grid.n_dim(); ++d) {
        if (std::abs(grid.frequency(flat % n)) > cutoff) return true;
        flat /= n;
    }
    return false;
}

}  // namespace

Field fourier(const Field& f) {
    if (f.space != SpaceTag::physical) throw std::invalid_argument("fourier expects a physical field");
    std::vector<Complex> data = f.samples;
    apply_checkerboard(data, f.grid);
    fft_in_place(data, f.grid, FFTW_FORWARD);
    apply_checkerboard(data, f.grid);
    const double weight = std::pow(f.grid.spacing() / std::sqrt(2.0 * std::numbers::pi), f.grid.n_dim());
    for (Complex& v : data) v *= weight;
    std::optional<GaussianState> closed;
    if (f.analytic) closed = gaussian_fourier(*f.analytic);
    Field out(f.grid, std::move(data), SpaceTag::frequency, closed);
    require_finite(out, "fourier");
    return out;
}

Field inverse_fourier(const Field& f) {
    if (f.space != SpaceTag::frequency) {
        throw std::invalid_argument("inverse_fourier expects a frequency field");
    }
    std::vector<Complex> data = f.samples;
    apply_checkerboard(data, f.grid);
    fft_in_place(data, f.grid, FFTW_BACKWARD);
    apply_checkerboard(data, f.grid);
    const double weight =
        std::pow(f.grid.dual_spacing() / std::sqrt(2.0 * std::numbers::pi), f.grid.n_dim());
    for (Complex& v : data) v *= weight;
    // Gaussians are even, so F^-1 and F agree on them.
    std::optional<GaussianState> closed;
    if (f.analytic) closed = gaussian_fourier(*f.analytic);
    Field out(f.grid, std::move(data), SpaceTag::physical, closed);
    require_finite(out, "inverse_fourier");
    return out;
}

Field as_physical_on_dual(const Field& f) {
    if (f.space != SpaceTag::frequency) {
        throw std::invalid_argument("as_physical_on_dual expects a frequency field");
    }
    return Field(f.grid.dual(), f.samples, SpaceTag::physical, f.analytic);
}

PointTransform::PointTransform(const SpatialGrid& grid, SpaceTag input_space,
                               std::span<const double> points)
    : grid_(grid), input_(input_space), count_(0) {
    const auto n = static_cast<std::size_t>(grid.n_dim());
    if (points.size() % n != 0) throw std::invalid_argument("point list length is not a multiple of n");
    count_ = points.size() / n;
    const std::size_t nodes = grid.points_per_dim();
    kernel_.resize(count_ * n * nodes);
    const bool forward = input_space == SpaceTag::physical;
    for (std::size_t m = 0; m < count_; ++m) {
        for (std::size_t d = 0; d < n; ++d) {
            const double q = points[m * n + d];
            for (std::size_t j = 0; j < nodes; ++j) {
                const double node = forward ? grid.coordinate(j) : grid.frequency(j);
                kernel_[(m * n + d) * nodes + j] = std::polar(1.0, (forward ? -1.0 : 1.0) * node * q);
            }
        }
    }
    const double h = forward ? grid.spacing() : grid.dual_spacing();
    weight_ = std::pow(h / std::sqrt(2.0 * std::numbers::pi), grid.n_dim());
}

void PointTransform::apply(const Field& f, std::span<Complex> out) const {
    if (f.space != input_) throw std::invalid_argument("point transform applied to a field in the wrong space");
    if (!f.grid.same_as(grid_)) throw std::invalid_argument("point transform applied on a different grid");
    if (out.size() != count_) throw std::invalid_argument("output span has the wrong size");
    const auto n = static_cast<std::size_t>(grid_.n_dim());
    const std::size_t nodes = grid_.points_per_dim();
    std::vector<Complex> partial;
    std::vector<Complex> next;
    for (std::size_t m = 0; m < count_; ++m) {
        // contract the last axis first; rows are contiguous in row-major order
        std::span<const Complex> current(f.samples);
        for (std::size_t d = n; d-- > 0;) {
            const Complex* k = &kernel_[(m * n + d) * nodes];
            const std::size_t rows = current.size() / nodes;
            next.assign(rows, Complex{});
            for (std::size_t r = 0; r < rows; ++r) {
                Complex acc{};
                const Complex* row = current.data() + r * nodes;
                for (std::size_t j = 0; j < nodes; ++j) acc += row[j] * k[j];
                next[r] = acc;
            }
            partial.swap(next);
            current = partial;
        }
        out[m] = weight_ * current[0];
    }
}

std::vector<Complex> PointTransform::apply(const Field& f) const {
    std::vector<Complex> out(count_);
    apply(f, out);
    return out;
}

std::vector<Complex> fourier_at(const Field& f, std::span<const double> points) {
    return PointTransform(f.grid, SpaceTag::physical, points).apply(f);
}

std::vector<Complex> inverse_fourier_at(const Field& f, std::span<const double> points) {
    return PointTransform(f.grid, SpaceTag::frequency, points).apply(f);
}

Field chirp(const Field& f, double phase_scale) {
    Field out = f;
    const bool physical = f.space == SpaceTag::physical;
    for (std::size_t j = 0; j < out.samples.size(); ++j) {
        const double r2 = physical ? f.grid.radius_sq(j) : f.grid.frequency_radius_sq(j);
        out.samples[j] *= std::polar(1.0, phase_scale * r2);
    }
    if (out.analytic) out.analytic->width -= 2.0 * I * phase_scale;
    return out;
}

Field quadratic_phase(const Field& f, double t) {
    if (t == 0.0) throw std::domain_error("quadratic_phase needs t != 0");
    if (f.space != SpaceTag::physical) throw std::invalid_argument("quadratic_phase expects a physical field");
    return chirp(f, 0.5 / t);
}

Complex dilate_eval(const PointFunction& f, double t, std::span<const double> x) {
    if (!(t > 0.0)) throw std::domain_error("dilation needs t > 0");
    std::vector<double> y(x.begin(), x.end());
    for (double& v : y) v /= t;
    return f(y) / dilation_factor(t, static_cast<int>(x.size()));
}

Field propagate(const Field& f, double t, PropagatorPath path) {
    if (f.space != SpaceTag::physical) throw std::invalid_argument("propagate expects a physical field");
    if (t == 0.0) return f;
    if (path == PropagatorPath::symbol) {
        Field out = inverse_fourier(chirp(fourier(f), -0.5 * t));
        if (f.analytic) out.analytic = gaussian_evolve(*f.analytic, t);
        return out;
    }
    if (!(t > 0.0)) throw std::domain_error("factored propagation is defined for t > 0 only");
    if (!f.analytic) {
        throw std::invalid_argument("factored propagation needs a field with a closed-form evaluator");
    }
    // M_t, then F on the closed form; D_t pointwise; final M_t on the samples
    const GaussianState transformed = gaussian_fourier(gaussian_quadratic_phase(*f.analytic, t));
    const PointFunction evaluator = [&transformed](std::span<const double> x) { return transformed(x); };
    std::vector<Complex> values(f.grid.size());
    std::vector<double> x(static_cast<std::size_t>(f.grid.n_dim()));
    for (std::size_t j = 0; j < values.size(); ++j) {
        f.grid.node(j, x);
        values[j] = dilate_eval(evaluator, t, x);
    }
    Field dilated(f.grid, std::move(values), SpaceTag::physical, gaussian_dilate(transformed, t));
    return quadratic_phase(dilated, t);
}

double CommutationReport::max_closed_form() const noexcept {
    return std::max({fourier_dilation, dilation_inverse, inverse_fourier_dilation});
}

CommutationReport check_commutation(double t, const Field& f, double tolerance) {
    if (!(t > 0.0)) throw std::domain_error("check_commutation needs t > 0");
    if (!f.analytic) throw std::invalid_argument("check_commutation needs a field with a closed-form Gaussian");
    const GaussianState g = *f.analytic;
    const int n = g.n_dim;
    const Complex i_pow_n = std::pow(I, n);

    CommutationReport report;
    report.t = t;
    report.tolerance = tolerance;

    const GaussianState fourier_g = gaussian_fourier(g);
    const GaussianState dilated_g = gaussian_dilate(g, t);
    const GaussianState fourier_of_dilated = gaussian_fourier(dilated_g);
    // D_t^-1 h(x) = (i t)^(n/2) h(t x)
    const GaussianState inverse_dilated_g{g.amplitude * dilation_factor(t, n), g.width * (t * t), n};
    const GaussianState inverse_fourier_of_inverse_dilated = gaussian_fourier(inverse_dilated_g);

    const PointFunction eval_fourier_g = [&](std::span<const double> x) { return fourier_g(x); };
    const PointFunction eval_dilated_g = [&](std::span<const double> x) { return dilated_g(x); };

    std::vector<double> x(static_cast<std::size_t>(n));
    for (std::size_t j = 0; j < f.grid.size(); ++j) {
        f.grid.node(j, x);
        const Complex a1 = fourier_of_dilated(x);
        const Complex b1 = dilate_eval(eval_fourier_g, 1.0 / t, x);
        report.fourier_dilation = std::max(report.fourier_dilation, std::abs(a1 - b1));

        const Complex a2 = i_pow_n * dilate_eval(eval_dilated_g, 1.0 / t, x);
        report.dilation_inverse = std::max(report.dilation_inverse, std::abs(a2 - g(x)));

        const Complex a3 = inverse_fourier_of_inverse_dilated(x);
        const Complex b3 = i_pow_n * dilate_eval(eval_fourier_g, t, x);
        report.inverse_fourier_dilation = std::max(report.inverse_fourier_dilation, std::abs(a3 - b3));
    }

    const Field sampled = sample(dilated_g, f.grid);
    const Field transformed = fourier(sampled);
    std::vector<double> xi(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < transformed.samples.size(); ++k) {
        f.grid.frequency_node(k, xi);
        const Complex expected = dilate_eval(eval_fourier_g, 1.0 / t, xi);
        report.sampled_fourier_dilation =
            std::max(report.sampled_fourier_dilation, std::abs(transformed.samples[k] - expected));
    }
    if (report.sampled_fourier_dilation > tolerance) {
        report.resolved = false;
        report.warnings.push_back("grid does not resolve D_t f at t = " + std::to_string(t) +
                                  ": sampled F D_t residual " +
                                  std::to_string(report.sampled_fourier_dilation));
    }
    return report;
}

ResolutionReport resolution_check(const Field& f) {
    if (f.space != SpaceTag::physical) throw std::invalid_argument("resolution_check expects a physical field");
    ResolutionReport report;
    const double peak = max_abs(f);
    if (peak == 0.0) return report;
    double edge = 0.0;
    for (std::size_t j = 0; j < f.samples.size(); ++j) {
        if (on_outer_layer(j, f.grid)) edge = std::max(edge, std::abs(f.samples[j]));
    }
    report.edge_ratio = edge / peak;
    const Field spectrum = fourier(f);
    const double spectral_peak = max_abs(spectrum);
    double tail = 0.0;
    for (std::size_t k = 0; k < spectrum.samples.size(); ++k) {
        if (beyond_fraction_of_nyquist(k, f.grid, 0.9)) tail = std::max(tail, std::abs(spectrum.samples[k]));
    }
    report.spectral_ratio = spectral_peak > 0.0 ? tail / spectral_peak : 0.0;
    return report;
}

}  // namespace nlpoisson
