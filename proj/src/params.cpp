#include "nlpoisson/params.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace nlpoisson {

std::string_view to_string(RegimeTag tag) noexcept {
    switch (tag) {
        case RegimeTag::long_range: return "long_range";
        case RegimeTag::subcritical: return "subcritical";
        case RegimeTag::L2_critical: return "L2_critical";
        case RegimeTag::supercritical: return "supercritical";
        case RegimeTag::out_of_range: return "out_of_range";
    }
    return "unknown";
}

double delta(int n, double r) noexcept {
    return 0.5 * n - n / r;
}

RegimeTag classify_regime(int n, double p) {
    if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
    if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("power p must be finite and > 1");
    // Boundary tests compare n(p-1) against 2 and 4 so that p = 1 + 4/n
    // computed in floating point (e.g. 1 + 4/3) still lands on the boundary.
    const double np1 = n * (p - 1.0);
    const double eps = 64.0 * std::numeric_limits<double>::epsilon() * np1;
    if (np1 <= 2.0 + eps) return RegimeTag::long_range;
    if (std::abs(np1 - 4.0) <= eps) return RegimeTag::L2_critical;
    if (np1 < 4.0) return RegimeTag::subcritical;
    if (n >= 3) {
        // energy-critical endpoint p = 1 + 4/(n-2) is admitted
        const double m = (n - 2) * (p - 1.0);
        if (m > 4.0 + 64.0 * std::numeric_limits<double>::epsilon() * m) {
            return RegimeTag::out_of_range;
        }
    }
    return RegimeTag::supercritical;
}

double theta_exponent(int n, double p) noexcept {
    return 4.0 / (n * (p - 1.0)) - 1.0;
}

double sigma_exponent(int n, double p) noexcept {
    return (n + 4.0 - (n - 4.0) * p) / (n * p * (p - 1.0));
}

SimParams make_params(int n, double p) {
    if (n < 1 || n > 3) throw std::invalid_argument("dimension n must be 1, 2 or 3");
    SimParams params;
    params.n = n;
    params.p = p;
    params.regime = classify_regime(n, p);
    if (params.regime == RegimeTag::out_of_range) {
        throw std::invalid_argument("power p = " + std::to_string(p) +
                                    " exceeds the energy-critical bound for n = " +
                                    std::to_string(n));
    }
    params.delta_2p = delta(n, 2.0 * p);
    params.delta_p1 = delta(n, p + 1.0);
    switch (params.regime) {
        case RegimeTag::subcritical: params.theta = theta_exponent(n, p); break;
        case RegimeTag::L2_critical: params.theta = 0.0; break;
        case RegimeTag::supercritical: params.sigma = sigma_exponent(n, p); break;
        default: break;
    }
    return params;
}

}  // namespace nlpoisson
