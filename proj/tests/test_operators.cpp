#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nlpoisson/gaussian.hpp"
#include "nlpoisson/operators.hpp"
#include "support.hpp"

using namespace nlpoisson;
using testing_support::direct_fourier;

namespace {

constexpr Complex I{0.0, 1.0};

// random sum of shifted, modulated Gaussians; smooth and well inside the box
Field random_smooth_field(const SpatialGrid& g) {
    const int terms = testing_support::uniform_int(1, 4);
    std::vector<std::array<double, 5>> params;
    for (int k = 0; k < terms; ++k) {
        params.push_back({testing_support::uniform(-2.0, 2.0), testing_support::uniform(0.5, 2.0),
                          testing_support::uniform(-1.0, 1.0), testing_support::uniform(-1.0, 1.0),
                          testing_support::uniform(-2.0, 2.0)});
    }
    return sample([params](std::span<const double> x) {
        Complex acc{};
        for (const auto& q : params) {
            double r2 = 0.0;
            double kx = 0.0;
            for (double v : x) {
                r2 += (v - q[0]) * (v - q[0]);
                kx += q[4] * v;
            }
            acc += Complex{q[2], q[3]} * std::exp(-0.5 * q[1] * r2) * std::polar(1.0, kx);
        }
        return acc;
    }, g);
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("fourier of g_1 and g_2 against the Gaussian transform pair") {
    const SpatialGrid g = make_grid(1, 512, 20.0);
    for (double z : {1.0, 2.0}) {
        Field f = sample([z](std::span<const double> x) { return Complex{std::exp(-0.5 * z * x[0] * x[0])}; }, g);
        const Field F = fourier(f);
        CHECK(F.space == SpaceTag::frequency);
        double err = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) {
            const double xi = g.frequency(k);
            err = std::max(err, std::abs(F.samples[k] - std::exp(-xi * xi / (2.0 * z)) / std::sqrt(z)));
        }
        CHECK(err < (z == 1.0 ? 1e-12 : 1e-10));
    }
}

TEST_CASE("fourier matches the direct sum at random frequencies") {
    for (int n = 1; n <= 2; ++n) {
        const SpatialGrid g = make_grid(n, n == 1 ? 64 : 16, 6.0);
        const Field f = random_smooth_field(g);
        const Field F = fourier(f);
        std::vector<double> xi(static_cast<std::size_t>(n));
        for (int trial = 0; trial < 5; ++trial) {
            const std::size_t k = static_cast<std::size_t>(testing_support::uniform_int(0, static_cast<int>(g.size()) - 1));
            g.frequency_node(k, xi);
            CHECK(std::abs(F.samples[k] - direct_fourier(f, xi)) < 1e-12);
        }
    }
}

TEST_CASE("fourier of zero and wrong space tags") {
    const SpatialGrid g = make_grid(1, 32, 5.0);
    const Field zero = Field::zeros(g);
    CHECK(max_abs(fourier(zero)) == 0.0);
    CHECK_THROWS_AS(fourier(fourier(zero)), std::invalid_argument);
    CHECK_THROWS_AS(inverse_fourier(zero), std::invalid_argument);
}

TEST_CASE("round trip, Plancherel and order four") {
    for (int trial = 0; trial < 10; ++trial) {
        const int n = testing_support::uniform_int(1, 2);
        const SpatialGrid g = make_grid(n, n == 1 ? 256 : 64, 10.0);
        const Field f = random_smooth_field(g);
        const Field F = fourier(f);
        CHECK(max_diff(inverse_fourier(F).samples, f.samples) < 1e-12);
        CHECK(std::abs(l2_norm(F) - l2_norm(f)) < 1e-12 * l2_norm(f));
        Field h = f;
        for (int k = 0; k < 4; ++k) h = as_physical_on_dual(fourier(h));
        CHECK(max_diff(h.samples, f.samples) < 1e-12);
    }
}

TEST_CASE("inverse_fourier of the transformed Gaussian gives g_1") {
    const SpatialGrid g = make_grid(1, 256, 16.0);
    Field spectrum = Field::zeros(g, SpaceTag::frequency);
    for (std::size_t k = 0; k < g.size(); ++k) spectrum.samples[k] = std::exp(-0.5 * g.frequency(k) * g.frequency(k));
    const Field back = inverse_fourier(spectrum);
    for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK(std::abs(back.samples[j] - std::exp(-0.5 * g.coordinate(j) * g.coordinate(j))) < 1e-12);
    }
}

TEST_CASE("quadratic_phase properties") {
    const SpatialGrid g = make_grid(1, 128, 8.0);
    const Field f = random_smooth_field(g);
    for (double t : {0.3, -1.0, 2.5}) {
        const Field m = quadratic_phase(f, t);
        for (std::size_t j = 0; j < g.size(); ++j) CHECK(std::abs(std::abs(m.samples[j]) - std::abs(f.samples[j])) < 1e-15);
        CHECK(max_diff(quadratic_phase(m, -t).samples, f.samples) < 1e-14);
    }
    const Field g1 = sample(unit_gaussian(1.0, 1), g);
    const Field expected = sample([](std::span<const double> x) { return std::exp(-0.5 * (1.0 - I) * x[0] * x[0]); }, g);
    CHECK(max_diff(quadratic_phase(g1, 1.0).samples, expected.samples) < 1e-14);
    CHECK_THROWS_AS(quadratic_phase(f, 0.0), std::domain_error);
}

TEST_CASE("dilate_eval examples") {
    const PointFunction one = [](std::span<const double>) { return Complex{1.0}; };
    const std::array<double, 1> origin{0.0};
    CHECK(std::abs(dilate_eval(one, 1.0, origin) - std::polar(1.0, -std::numbers::pi / 4.0)) < 1e-15);

    const PointFunction g1 = [](std::span<const double> x) { return Complex{std::exp(-0.5 * x[0] * x[0])}; };
    const std::array<double, 1> two{2.0};
    CHECK(std::abs(dilate_eval(g1, 2.0, two) - std::exp(-0.5) / std::sqrt(2.0 * I)) < 1e-15);

    // D_t D_{1/t} f = i^(-n) f
    for (double t : {0.25, 1.0, 3.0}) {
        const PointFunction inner = [&](std::span<const double> x) { return dilate_eval(g1, 1.0 / t, x); };
        const std::array<double, 1> x{0.7};
        CHECK(std::abs(dilate_eval(inner, t, x) - g1(x) / I) < 1e-15);
    }
    CHECK_THROWS_AS(dilate_eval(one, 0.0, origin), std::domain_error);
    CHECK_THROWS_AS(dilate_eval(one, -1.0, origin), std::domain_error);
}

TEST_CASE("symbol propagator against the free Gaussian evolution") {
    const SpatialGrid g = make_grid(1, 512, 20.0);
    const Field g1 = sample(unit_gaussian(1.0, 1), g);
    CHECK(max_diff(propagate(g1, 0.0).samples, g1.samples) == 0.0);
    for (double t : {0.1, 0.5, 1.0}) {
        const Field u = propagate(g1, t);
        double err = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            const double x = g.coordinate(j);
            const Complex w = 1.0 + I * t;
            err = std::max(err, std::abs(u.samples[j] - std::exp(-x * x / (2.0 * w)) / std::sqrt(w)));
        }
        CHECK(err < 1e-10);
    }
}

TEST_CASE("property: unitarity, reversibility and group law of the symbol propagator") {
    for (int trial = 0; trial < 10; ++trial) {
        const int n = testing_support::uniform_int(1, 2);
        const SpatialGrid g = make_grid(n, n == 1 ? 256 : 64, 12.0);
        const Field f = random_smooth_field(g);
        const double s = testing_support::uniform(-2.0, 2.0);
        const double t = testing_support::uniform(-2.0, 2.0);
        const Field u = propagate(f, t);
        CHECK(std::abs(l2_norm(u) - l2_norm(f)) < 1e-12 * l2_norm(f));
        CHECK(max_diff(propagate(u, -t).samples, f.samples) < 1e-12);
        CHECK(max_diff(propagate(propagate(f, s), t).samples, propagate(f, s + t).samples) < 1e-11);
    }
}

TEST_CASE("factored and symbol propagators agree on Gaussians") {
    // box wide enough that U(10) g_1 does not reach the boundary
    const SpatialGrid g = make_grid(1, 1024, 80.0);
    const Field g1 = sample(unit_gaussian(1.0, 1), g);
    for (double t : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        const Field a = propagate(g1, t, PropagatorPath::symbol);
        const Field b = propagate(g1, t, PropagatorPath::factored);
        CHECK(max_diff(a.samples, b.samples) < 1e-9);
    }
    CHECK_THROWS_AS(propagate(g1, -1.0, PropagatorPath::factored), std::domain_error);
    Field bare = g1;
    bare.analytic.reset();
    CHECK_THROWS_AS(propagate(bare, 1.0, PropagatorPath::factored), std::invalid_argument);
}

TEST_CASE("commutation identities on Gaussians") {
    for (int n = 1; n <= 2; ++n) {
        const SpatialGrid g = n == 1 ? make_grid(1, 512, 20.0) : make_grid(2, 64, 10.0);
        for (Complex z : {Complex{1.0}, Complex{2.0}, Complex{1.0, 1.0}}) {
            const Field f = sample(unit_gaussian(z, n), g);
            for (double t : {0.125, 0.5, 1.0, 2.0, 8.0}) {
                const CommutationReport r = check_commutation(t, f);
                CHECK(r.fourier_dilation < 1e-10);
                CHECK(r.dilation_inverse < 1e-10);
                CHECK(r.inverse_fourier_dilation < 1e-10);
                CHECK(r.passed());
            }
        }
    }
}

TEST_CASE("commutation check flags an under-resolved grid without failing") {
    const SpatialGrid g = make_grid(1, 32, 6.0);
    const Field f = sample(unit_gaussian(1.0, 1), g);
    const CommutationReport r = check_commutation(10.0, f);
    CHECK_FALSE(r.resolved);
    CHECK_FALSE(r.warnings.empty());
    CHECK(r.sampled_fourier_dilation > r.tolerance);
    CHECK(r.passed());
}

TEST_CASE("resolution check") {
    const Field fine = sample(unit_gaussian(1.0, 1), make_grid(1, 512, 20.0));
    CHECK(resolution_check(fine).resolved(1e-12));
    const Field coarse = sample(unit_gaussian(1.0, 1), make_grid(1, 16, 20.0));
    CHECK_FALSE(resolution_check(coarse).resolved(1e-6));
    const Field narrow_box = sample(unit_gaussian(1.0, 1), make_grid(1, 512, 2.0));
    CHECK(resolution_check(narrow_box).edge_ratio > 1e-3);
}
