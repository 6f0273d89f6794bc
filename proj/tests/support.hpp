#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "nlpoisson/grid.hpp"

namespace testing_support {

using nlpoisson::Complex;

/// Deterministic generator for property tests.
inline std::mt19937_64& rng() {
    static std::mt19937_64 engine(20260919ULL);
    return engine;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng());
}

/// (2 pi)^(-n/2) h^n sum_j f(x_j) e^(-i x_j . xi), evaluated term by term.
inline Complex direct_fourier(const nlpoisson::Field& f, const std::vector<double>& xi) {
    const auto& g = f.grid;
    const int n = g.n_dim();
    std::vector<double> x(static_cast<std::size_t>(n));
    Complex acc{};
    for (std::size_t j = 0; j < g.size(); ++j) {
        g.node(j, x);
        double phase = 0.0;
        for (int d = 0; d < n; ++d) phase += x[static_cast<std::size_t>(d)] * xi[static_cast<std::size_t>(d)];
        acc += f.samples[j] * std::polar(1.0, -phase);
    }
    return acc * std::pow(g.spacing() / std::sqrt(2.0 * std::numbers::pi), n);
}

}  // namespace testing_support
