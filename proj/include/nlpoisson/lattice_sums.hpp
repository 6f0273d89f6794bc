#pragma once

#include "nlpoisson/grid.hpp"

namespace nlpoisson {

/// Epstein zeta of the integer lattice, Z_n(s) = sum over j in Z^n \ {0} of |j|^(-s),
/// analytically continued to all real s != n.
double epstein_zeta(int n, double s);

/// \int |x|^gamma G(x) dx from samples of a smooth, decayed G on a grid that
/// contains the origin.
///
/// The rectangle rule alone is only O(h^(n+gamma)) accurate because of the
/// kink of |x|^gamma at 0; the generalized Euler-Maclaurin terms
/// h^(n+gamma+k) Z_n(-gamma-k) (derivatives of G at 0) are subtracted, with the
/// derivatives taken spectrally. n = 1 uses k = 0, 2, 4, 6; n >= 2 uses k = 0, 2.
double singular_weighted_integral(const Field& density, double gamma);

}  // namespace nlpoisson
