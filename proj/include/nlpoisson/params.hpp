#pragma once

#include <optional>
#include <string_view>

namespace nlpoisson {

enum class RegimeTag { long_range, subcritical, L2_critical, supercritical, out_of_range };

std::string_view to_string(RegimeTag tag) noexcept;

/// delta(r) = n/2 - n/r.
double delta(int n, double r) noexcept;

/// Power p classified against 1 + 2/n, 1 + 4/n and (n >= 3) 1 + 4/(n-2).
RegimeTag classify_regime(int n, double p);

/// Dimension, power and the exponents derived from them.
///
/// theta = 4/(n(p-1)) - 1 is set for subcritical and L2-critical powers
/// (where it is zero); sigma = (n + 4 - (n-4)p)/(n p (p-1)) is set for
/// supercritical powers.
struct SimParams {
    int n = 1;
    double p = 0.0;
    RegimeTag regime = RegimeTag::out_of_range;
    double delta_2p = 0.0;
    double delta_p1 = 0.0;
    std::optional<double> theta;
    std::optional<double> sigma;

    /// Exponent n(p-1)/2 - 2 of t on the right side of the identity.
    double time_exponent() const noexcept { return 0.5 * n * (p - 1.0) - 2.0; }

    bool verifiable() const noexcept {
        return regime != RegimeTag::long_range && regime != RegimeTag::out_of_range;
    }
};

/// Throws std::invalid_argument for out_of_range powers or unsupported n.
SimParams make_params(int n, double p);

double theta_exponent(int n, double p) noexcept;
double sigma_exponent(int n, double p) noexcept;

}  // namespace nlpoisson
