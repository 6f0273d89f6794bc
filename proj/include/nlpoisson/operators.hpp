#pragma once

#include <span>
#include <string>
#include <vector>

#include "nlpoisson/gaussian.hpp"
#include "nlpoisson/grid.hpp"

namespace nlpoisson {

// Fourier transform normalized as (2 pi)^(-n/2) \int f(x) e^(-i x.xi) dx.
//
// On a grid this is the rectangle rule of that integral evaluated at the
// dual nodes. With x_j = -L + j dx and xi_k = -N pi/(2L) + k pi/L the kernel
// factors as (-1)^(j+k) e^(-2 pi i j k / N) (N divisible by 4), so a plain
// FFT plus two sign flips and the weight (dx / sqrt(2 pi))^n gives it
// exactly. The map is unitary between the physical and frequency grids.

Field fourier(const Field& f);
Field inverse_fourier(const Field& f);

/// Reinterprets frequency samples as a physical field on the dual grid.
Field as_physical_on_dual(const Field& f);

/// Rectangle-rule transforms evaluated at arbitrary points (row-major, n per point).
///
/// fourier_at takes a physical field and returns (F f)(xi) at each xi;
/// inverse_fourier_at takes a frequency field and returns (F^-1 f)(x).
/// Both agree with fourier / inverse_fourier on grid nodes.
class PointTransform {
public:
    PointTransform(const SpatialGrid& grid, SpaceTag input_space, std::span<const double> points);

    std::size_t size() const noexcept { return count_; }
    void apply(const Field& f, std::span<Complex> out) const;
    std::vector<Complex> apply(const Field& f) const;

private:
    SpatialGrid grid_;
    SpaceTag input_;
    std::size_t count_;
    // kernel_[(m * n + d) * N + j] = per-axis factor for point m, axis d, node j
    std::vector<Complex> kernel_;
    double weight_;
};

std::vector<Complex> fourier_at(const Field& f, std::span<const double> points);
std::vector<Complex> inverse_fourier_at(const Field& f, std::span<const double> points);

/// Pointwise multiplication by exp(i |x|^2 / (2 t)); preserves moduli.
Field quadratic_phase(const Field& f, double t);

/// Pointwise multiplication by exp(i phase_scale |x|^2) in whichever space f lives in.
Field chirp(const Field& f, double phase_scale);

/// (i t)^(-n/2) f(x / t) for t > 0.
Complex dilate_eval(const PointFunction& f, double t, std::span<const double> x);

enum class PropagatorPath {
    symbol,   ///< F^-1 exp(-i t |xi|^2 / 2) F on the grid
    factored  ///< M_t D_t F M_t composed on the field's closed form
};

/// U(t) f. The symbol path works on any sampled field; the factored path
/// needs t > 0 and a field carrying its closed-form Gaussian.
Field propagate(const Field& f, double t, PropagatorPath path = PropagatorPath::symbol);

struct CommutationReport {
    double t = 0.0;
    /// F D_t = D_{1/t} F
    double fourier_dilation = 0.0;
    /// D_t^-1 = i^n D_{1/t}
    double dilation_inverse = 0.0;
    /// F^-1 D_t^-1 = i^n D_t F^-1
    double inverse_fourier_dilation = 0.0;
    /// Same as fourier_dilation, with F applied by FFT to the sampled D_t f.
    double sampled_fourier_dilation = 0.0;
    double tolerance = 1e-10;
    bool resolved = true;
    std::vector<std::string> warnings;

    double max_closed_form() const noexcept;
    bool passed() const noexcept { return max_closed_form() < tolerance; }
};

/// Residuals of the three dilation/Fourier identities at the grid nodes of
/// `f`, which must carry a closed-form Gaussian.
CommutationReport check_commutation(double t, const Field& f, double tolerance = 1e-10);

struct ResolutionReport {
    double edge_ratio = 0.0;      ///< max |f| on the outer grid layer / max |f|
    double spectral_ratio = 0.0;  ///< max |F f| beyond 0.9 of Nyquist / max |F f|
    bool resolved(double threshold) const noexcept {
        return edge_ratio <= threshold && spectral_ratio <= threshold;
    }
};

ResolutionReport resolution_check(const Field& f);

}  // namespace nlpoisson
