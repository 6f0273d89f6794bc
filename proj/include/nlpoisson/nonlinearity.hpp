#pragma once

#include <optional>

#include "nlpoisson/grid.hpp"
#include "nlpoisson/params.hpp"

namespace nlpoisson {

/// Pointwise |u|^(p-1) u with 0 -> 0. Applies in either space (it is local).
Field power_nonlinearity(const Field& f, double p);

/// Norms that make up the data space for a given power.
struct XpNorms {
    double l2 = 0.0;
    std::optional<double> weighted;       ///< || |x|^delta(2p) f ||_2, subcritical
    std::optional<double> sobolev_hom;    ///< || |xi|^delta(p+1) F f ||_2, supercritical
    std::optional<double> sobolev_inhom;  ///< || (1+|xi|^2)^(delta(p+1)/2) F f ||_2, supercritical
};

/// || |x|^s f ||_2 for a physical field (s > 0), with the origin kink corrected.
double power_weighted_norm(const Field& f, double s);

/// || |xi|^s F f ||_2 and || (1+|xi|^2)^(s/2) F f ||_2.
double homogeneous_sobolev_norm(const Field& f, double s);
double inhomogeneous_sobolev_norm(const Field& f, double s);

/// l2 always; weighted for subcritical, both Sobolev norms for supercritical.
/// Throws std::runtime_error if a norm comes out non-finite.
XpNorms compute_xp_norms(const Field& f, const SimParams& params);

}  // namespace nlpoisson
