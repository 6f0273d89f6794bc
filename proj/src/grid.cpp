#include "nlpoisson/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace nlpoisson {

namespace {

bool is_power_of_two(std::size_t v) {
    return v != 0 && (v & (v - 1)) == 0;
}

}  // namespace

SpatialGrid::SpatialGrid(int n_dim, std::size_t points_per_dim, double half_width)
    : n_dim_(n_dim), points_(points_per_dim), half_width_(half_width), total_(1) {
    if (n_dim < 1 || n_dim > 3) {
        throw std::invalid_argument("grid dimension must be 1, 2 or 3, got " + std::to_string(n_dim));
    }
    if (!is_power_of_two(points_per_dim) || points_per_dim < 8) {
        throw std::invalid_argument("points per dimension must be a power of two >= 8, got " +
                                    std::to_string(points_per_dim));
    }
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw std::invalid_argument("grid half width must be positive and finite");
    }
    for (int d = 0; d < n_dim; ++d) total_ *= points_;
}

double SpatialGrid::dual_spacing() const noexcept {
    return std::numbers::pi / half_width_;
}

double SpatialGrid::dual_half_width() const noexcept {
    return static_cast<double>(points_) * std::numbers::pi / (2.0 * half_width_);
}

SpatialGrid SpatialGrid::dual() const {
    return SpatialGrid(n_dim_, points_, dual_half_width());
}

void SpatialGrid::unflatten(std::size_t flat, std::span<std::size_t> index) const noexcept {
    for (int d = n_dim_ - 1; d >= 0; --d) {
        index[static_cast<std::size_t>(d)] = flat % points_;
        flat /= points_;
    }
}

double SpatialGrid::radius_sq(std::size_t flat) const noexcept {
    double r2 = 0.0;
    for (int d = 0; d < n_dim_; ++d) {
        const double x = coordinate(flat % points_);
        r2 += x * x;
        flat /= points_;
    }
    return r2;
}

double SpatialGrid::frequency_radius_sq(std::size_t flat) const noexcept {
    double r2 = 0.0;
    for (int d = 0; d < n_dim_; ++d) {
        const double k = frequency(flat % points_);
        r2 += k * k;
        flat /= points_;
    }
    return r2;
}

std::size_t SpatialGrid::origin_index() const noexcept {
    std::size_t flat = 0;
    for (int d = 0; d < n_dim_; ++d) flat = flat * points_ + points_ / 2;
    return flat;
}

void SpatialGrid::node(std::size_t flat, std::span<double> out) const noexcept {
    for (int d = n_dim_ - 1; d >= 0; --d) {
        out[static_cast<std::size_t>(d)] = coordinate(flat % points_);
        flat /= points_;
    }
}

void SpatialGrid::frequency_node(std::size_t flat, std::span<double> out) const noexcept {
    for (int d = n_dim_ - 1; d >= 0; --d) {
        out[static_cast<std::size_t>(d)] = frequency(flat % points_);
        flat /= points_;
    }
}

bool SpatialGrid::same_as(const SpatialGrid& other, double rel_tol) const noexcept {
    return n_dim_ == other.n_dim_ && points_ == other.points_ &&
           std::abs(half_width_ - other.half_width_) <= rel_tol * half_width_;
}

SpatialGrid make_grid(int n_dim, std::size_t points_per_dim, double half_width) {
    return SpatialGrid(n_dim, points_per_dim, half_width);
}

SpatialGrid make_self_dual_grid(int n_dim, std::size_t points_per_dim) {
    return SpatialGrid(n_dim, points_per_dim,
                       std::sqrt(std::numbers::pi * static_cast<double>(points_per_dim) / 2.0));
}

Field::Field(SpatialGrid g, std::vector<Complex> s, SpaceTag tag,
             std::optional<GaussianState> closed_form)
    : grid(std::move(g)), samples(std::move(s)), space(tag), analytic(std::move(closed_form)) {
    if (samples.size() != grid.size()) {
        throw std::invalid_argument("field has " + std::to_string(samples.size()) +
                                    " samples, grid needs " + std::to_string(grid.size()));
    }
}

Field Field::zeros(const SpatialGrid& g, SpaceTag tag) {
    return Field(g, std::vector<Complex>(g.size()), tag);
}

Field sample(const PointFunction& f, const SpatialGrid& grid) {
    std::vector<Complex> values(grid.size());
    std::vector<double> x(static_cast<std::size_t>(grid.n_dim()));
    for (std::size_t j = 0; j < values.size(); ++j) {
        grid.node(j, x);
        values[j] = f(x);
        if (!std::isfinite(values[j].real()) || !std::isfinite(values[j].imag())) {
            std::string where;
            for (double c : x) where += (where.empty() ? "" : ", ") + std::to_string(c);
            throw NonFiniteSample(j, "non-finite sample at grid index " + std::to_string(j) +
                                         " (x = " + where + ")");
        }
    }
    return Field(grid, std::move(values), SpaceTag::physical);
}

Field sample(const GaussianState& state, const SpatialGrid& grid) {
    if (state.n_dim != grid.n_dim()) {
        throw std::invalid_argument("Gaussian dimension does not match the grid");
    }
    std::vector<Complex> values(grid.size());
    for (std::size_t j = 0; j < values.size(); ++j) values[j] = state.at_radius_sq(grid.radius_sq(j));
    return Field(grid, std::move(values), SpaceTag::physical, state);
}

void require_finite(const Field& f, const char* context) {
    for (std::size_t j = 0; j < f.samples.size(); ++j) {
        const Complex v = f.samples[j];
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw NonFiniteSample(j, std::string(context) + ": non-finite sample at grid index " +
                                         std::to_string(j));
        }
    }
}

double l2_norm(const Field& f) {
    const double h = f.space == SpaceTag::physical ? f.grid.spacing() : f.grid.dual_spacing();
    double sum = 0.0;
    for (const Complex& v : f.samples) sum += std::norm(v);
    return std::sqrt(sum * std::pow(h, f.grid.n_dim()));
}

double max_abs(const Field& f) {
    double m = 0.0;
    for (const Complex& v : f.samples) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_difference(const Field& a, const Field& b) {
    if (a.samples.size() != b.samples.size()) {
        throw std::invalid_argument("fields have different sizes");
    }
    double m = 0.0;
    for (std::size_t j = 0; j < a.samples.size(); ++j) {
        m = std::max(m, std::abs(a.samples[j] - b.samples[j]));
    }
    return m;
}

Field scaled(const Field& f, Complex factor) {
    Field out = f;
    for (Complex& v : out.samples) v *= factor;
    if (out.analytic) out.analytic->amplitude *= factor;
    return out;
}

}  // namespace nlpoisson
