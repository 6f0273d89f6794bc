#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlpoisson/gaussian.hpp"

namespace nlpoisson {

using Complex = std::complex<double>;

/// Uniform periodic grid on the box [-L, L)^n with N points per axis.
///
/// The dual (frequency) grid has spacing pi/L and covers [-N pi/(2L), N pi/(2L)),
/// so that dx * dxi * N = 2 pi. Nodes are ordered row-major, last axis fastest.
class SpatialGrid {
public:
    SpatialGrid(int n_dim, std::size_t points_per_dim, double half_width);

    int n_dim() const noexcept { return n_dim_; }
    std::size_t points_per_dim() const noexcept { return points_; }
    double half_width() const noexcept { return half_width_; }
    double spacing() const noexcept { return 2.0 * half_width_ / static_cast<double>(points_); }

    double dual_spacing() const noexcept;
    double dual_half_width() const noexcept;

    /// Total number of nodes, N^n.
    std::size_t size() const noexcept { return total_; }

    /// Coordinate of node j along one axis, -L + j dx.
    double coordinate(std::size_t j) const noexcept {
        return -half_width_ + static_cast<double>(j) * spacing();
    }
    /// Frequency of node k along one axis, -N pi/(2L) + k pi/L.
    double frequency(std::size_t k) const noexcept {
        return -dual_half_width() + static_cast<double>(k) * dual_spacing();
    }

    /// Grid whose physical nodes are this grid's frequency nodes.
    SpatialGrid dual() const;

    /// Per-axis index of flat node index `flat`.
    void unflatten(std::size_t flat, std::span<std::size_t> index) const noexcept;

    /// |x|^2 at flat node index (physical) or |xi|^2 (frequency).
    double radius_sq(std::size_t flat) const noexcept;
    double frequency_radius_sq(std::size_t flat) const noexcept;

    /// Flat index of the origin node (j = N/2 on every axis).
    std::size_t origin_index() const noexcept;

    /// Physical (or frequency) coordinates of a flat node, written to `out`.
    void node(std::size_t flat, std::span<double> out) const noexcept;
    void frequency_node(std::size_t flat, std::span<double> out) const noexcept;

    bool same_as(const SpatialGrid& other, double rel_tol = 1e-12) const noexcept;

private:
    int n_dim_;
    std::size_t points_;
    double half_width_;
    std::size_t total_;
};

SpatialGrid make_grid(int n_dim, std::size_t points_per_dim, double half_width);

/// Grid equal to its own dual: L = sqrt(pi N / 2), so x-nodes and xi-nodes coincide.
SpatialGrid make_self_dual_grid(int n_dim, std::size_t points_per_dim);

enum class SpaceTag { physical, frequency };

/// Samples of a function on a grid (physical) or on the grid's dual (frequency).
///
/// `analytic`, when present, is the closed-form Gaussian the samples were
/// produced from; operations that have an exact Gaussian counterpart keep it
/// up to date, others drop it.
struct Field {
    SpatialGrid grid;
    std::vector<Complex> samples;
    SpaceTag space = SpaceTag::physical;
    std::optional<GaussianState> analytic;

    Field(SpatialGrid g, std::vector<Complex> s, SpaceTag tag,
          std::optional<GaussianState> closed_form = std::nullopt);

    static Field zeros(const SpatialGrid& g, SpaceTag tag = SpaceTag::physical);
};

/// A non-finite value was produced at a grid node.
class NonFiniteSample : public std::runtime_error {
public:
    NonFiniteSample(std::size_t index, const std::string& what_arg)
        : std::runtime_error(what_arg), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

using PointFunction = std::function<Complex(std::span<const double>)>;

/// Samples f at every physical node x_j = -L + j dx.
Field sample(const PointFunction& f, const SpatialGrid& grid);

/// Samples a Gaussian state and records it as the field's closed form.
Field sample(const GaussianState& state, const SpatialGrid& grid);

/// Throws NonFiniteSample on the first NaN/Inf sample.
void require_finite(const Field& f, const char* context);

double l2_norm(const Field& f);
double max_abs(const Field& f);
double max_abs_difference(const Field& a, const Field& b);

/// Scales every sample (and the closed form) by `factor`.
Field scaled(const Field& f, Complex factor);

}  // namespace nlpoisson
