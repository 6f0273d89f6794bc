#include "nlpoisson/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nlpoisson/lattice_sums.hpp"
#include "nlpoisson/operators.hpp"

namespace nlpoisson {

namespace {

Field modulus_squared(const Field& f) {
    Field out = Field::zeros(f.grid, f.space);
    for (std::size_t j = 0; j < f.samples.size(); ++j) out.samples[j] = std::norm(f.samples[j]);
    return out;
}

double checked(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw std::runtime_error(std::string("non-finite ") + name +
                                 " norm; the data may not decay on the truncated box");
    }
    return value;
}

}  // namespace

Field power_nonlinearity(const Field& f, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("power nonlinearity needs p > 1");
    Field out = f;
    for (Complex& u : out.samples) {
        const double r = std::abs(u);
        u = r == 0.0 ? Complex{} : std::pow(r, p - 1.0) * u;
    }
    if (out.analytic) out.analytic = gaussian_power(*out.analytic, p);
    return out;
}

double power_weighted_norm(const Field& f, double s) {
    if (f.space != SpaceTag::physical) throw std::invalid_argument("power_weighted_norm expects a physical field");
    const double integral = singular_weighted_integral(modulus_squared(f), 2.0 * s);
    // roundoff can leave a tiny negative value for a zero field
    return std::sqrt(std::max(integral, 0.0));
}

double homogeneous_sobolev_norm(const Field& f, double s) {
    return power_weighted_norm(as_physical_on_dual(fourier(f)), s);
}

double inhomogeneous_sobolev_norm(const Field& f, double s) {
    const Field spectrum = fourier(f);
    double sum = 0.0;
    for (std::size_t k = 0; k < spectrum.samples.size(); ++k) {
        sum += std::pow(1.0 + spectrum.grid.frequency_radius_sq(k), s) * std::norm(spectrum.samples[k]);
    }
    return std::sqrt(sum * std::pow(spectrum.grid.dual_spacing(), spectrum.grid.n_dim()));
}

XpNorms compute_xp_norms(const Field& f, const SimParams& params) {
    if (f.space != SpaceTag::physical) throw std::invalid_argument("compute_xp_norms expects a physical field");
    if (f.grid.n_dim() != params.n) throw std::invalid_argument("field dimension does not match params.n");
    XpNorms norms;
    norms.l2 = checked(l2_norm(f), "L2");
    switch (params.regime) {
        case RegimeTag::subcritical:
        case RegimeTag::long_range:
            norms.weighted = checked(power_weighted_norm(f, params.delta_2p), "weighted");
            break;
        case RegimeTag::supercritical:
            norms.sobolev_hom = checked(homogeneous_sobolev_norm(f, params.delta_p1), "homogeneous Sobolev");
            norms.sobolev_inhom =
                checked(inhomogeneous_sobolev_norm(f, params.delta_p1), "inhomogeneous Sobolev");
            break;
        default: break;
    }
    return norms;
}

}  // namespace nlpoisson
