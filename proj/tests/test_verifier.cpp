#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>
#include <numbers>

#include "nlpoisson/gaussian.hpp"
#include "nlpoisson/nonlinearity.hpp"
#include "nlpoisson/operators.hpp"
#include "nlpoisson/verifier.hpp"
#include "support.hpp"

using namespace nlpoisson;

namespace {

constexpr Complex I{0.0, 1.0};

// \int_0^inf of the closed-form integrand by an independent double-exponential rule
Complex lhs_oracle(double a, double p, int n, double xi_sq) {
    boost::math::quadrature::exp_sinh<double> integrator;
    const auto part = [&](auto take) {
        return integrator.integrate([&](double t) { return take(lhs_integrand_gaussian_r2(a, p, n, t, xi_sq)); }, 1e-13);
    };
    return {part([](Complex z) { return z.real(); }), part([](Complex z) { return z.imag(); })};
}

double max_rel_gap(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double scale = 0.0;
    double gap = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        scale = std::max(scale, std::abs(a[i]));
        gap = std::max(gap, std::abs(a[i] - b[i]));
    }
    return gap / scale;
}

}  // namespace

TEST_CASE("lhs profile of g_1 at xi = 0 against an independent rule") {
    XiSet xi;
    xi.coords = {0.0};
    const ProfileResult r = lhs_profile(unit_gaussian(1.0, 1), make_params(1, 4.0), xi, QuadratureSpec{});
    REQUIRE(r.values.size() == 1);
    CHECK(r.converged[0]);
    CHECK(std::abs(r.values[0] - lhs_oracle(1.0, 4.0, 1, 0.0)) < 1e-9);
    CHECK(r.errors[0] < 1e-9);
}

TEST_CASE("zero data gives zero profiles") {
    const Field zero = Field::zeros(make_grid(1, 128, 10.0));
    const XiSet xi = XiSet::uniform(1, 2.0, 5);
    for (const ProfileResult& r : {lhs_profile(zero, make_params(1, 4.0), xi, QuadratureSpec{}),
                                   rhs_profile(zero, make_params(1, 4.0), xi, QuadratureSpec{})}) {
        for (const Complex& v : r.values) CHECK(v == Complex{});
    }
}

TEST_CASE("sampled pipeline against the closed form for |xi| <= 5") {
    const SpatialGrid g = make_grid(1, 512, 20.0);
    Field sampled = sample(unit_gaussian(1.0, 1), g);
    sampled.analytic.reset();
    const XiSet xi = XiSet::uniform(1, 5.0, 11);
    const SimParams params = make_params(1, 4.0);
    const ProfileResult grid_lhs = lhs_profile(sampled, params, xi, QuadratureSpec{});
    const ProfileResult exact_lhs = lhs_profile(unit_gaussian(1.0, 1), params, xi, QuadratureSpec{});
    CHECK(max_rel_gap(exact_lhs.values, grid_lhs.values) < 1e-6);
    const ProfileResult grid_rhs = rhs_profile(sampled, params, xi, QuadratureSpec{});
    const ProfileResult exact_rhs = rhs_profile(unit_gaussian(1.0, 1), params, xi, QuadratureSpec{});
    CHECK(max_rel_gap(exact_rhs.values, grid_rhs.values) < 1e-6);
}

TEST_CASE("identity holds for Gaussians in every admissible regime") {
    struct Case {
        int n;
        double p;
    };
    for (const Case c : {Case{1, 4.0}, Case{1, 5.0}, Case{1, 6.0}, Case{2, 2.5}, Case{2, 3.0}, Case{2, 4.0}, Case{3, 2.0}}) {
        CAPTURE(c.n);
        CAPTURE(c.p);
        const XiSet xi = XiSet::uniform(c.n, 3.0, c.n == 1 ? 33 : (c.n == 2 ? 9 : 5));
        for (double a : {0.5, 1.0, 2.0}) {
            const VerificationReport r = verify_identity(unit_gaussian(a, c.n), make_params(c.n, c.p), xi, QuadratureSpec{}, 1e-6);
            CHECK(r.passed);
            CHECK(r.max_rel_residual < 1e-6);
            CHECK(std::abs(r.l2_lhs - r.l2_rhs) < 1e-6 * r.l2_lhs);
        }
    }
}

TEST_CASE("identity holds for sampled rational decay") {
    const SpatialGrid g = make_grid(1, 512, 20.0);
    const Field phi = sample([](std::span<const double> x) { return Complex{1.0 / ((1.0 + x[0] * x[0]) * (1.0 + x[0] * x[0]))}; }, g);
    const VerificationReport r = verify_identity(phi, make_params(1, 4.0), XiSet::uniform(1, 4.0, 17), QuadratureSpec{}, 1e-4);
    CHECK(r.passed);
    CHECK(r.max_rel_residual < 1e-4);
}

TEST_CASE("pointwise identity") {
    for (double t : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        const PointwiseReport exact = pointwise_check(unit_gaussian(1.0, 1), make_params(1, 4.0), t, XiSet::uniform(1, 4.0, 33));
        CHECK(exact.residual < 1e-12 * exact.scale);
    }
    const Field phi = sample(unit_gaussian(1.0, 1), make_self_dual_grid(1, 1024));
    for (double t : {0.5, 1.0, 2.0}) {
        const PointwiseReport r = pointwise_check(phi, make_params(1, 4.0), t);
        CHECK(r.residual < 1e-8 * r.scale);
    }
    CHECK_THROWS_AS(pointwise_check(phi, make_params(1, 4.0), 0.0), std::invalid_argument);
}

TEST_CASE("property: profiles scale like lambda^p") {
    const XiSet xi = XiSet::uniform(1, 3.0, 7);
    for (int trial = 0; trial < 4; ++trial) {
        const double lambda = testing_support::uniform(0.3, 3.0);
        const double p = testing_support::uniform(3.2, 6.5);
        const SimParams params = make_params(1, p);
        GaussianState scaled = unit_gaussian(1.0, 1);
        scaled.amplitude = lambda;
        const ProfileResult base = lhs_profile(unit_gaussian(1.0, 1), params, xi, QuadratureSpec{});
        const ProfileResult big = lhs_profile(scaled, params, xi, QuadratureSpec{});
        const ProfileResult base_r = rhs_profile(unit_gaussian(1.0, 1), params, xi, QuadratureSpec{});
        const ProfileResult big_r = rhs_profile(scaled, params, xi, QuadratureSpec{});
        const double f = std::pow(lambda, p);
        for (std::size_t m = 0; m < xi.size(); ++m) {
            CHECK(std::abs(big.values[m] - f * base.values[m]) < 1e-8 * f * std::abs(base.values[m]));
            CHECK(std::abs(big_r.values[m] - f * base_r.values[m]) < 1e-8 * f * std::abs(base_r.values[m]));
        }
    }
}

TEST_CASE("minus branch is the conjugate reflection for real data") {
    // e^(-i t xi^2/2) F(N(U(-t) phi))(xi) = conj(e^(i t xi^2/2) F(N(U(t) phi))(-xi))
    const SpatialGrid g = make_grid(1, 256, 20.0);
    const Field phi = sample([](std::span<const double> x) { return Complex{std::exp(-0.5 * (x[0] - 1.0) * (x[0] - 1.0)) + 0.5 * std::exp(-x[0] * x[0])}; }, g);
    for (double t : {0.3, 1.0}) {
        const Field plus = fourier(power_nonlinearity(propagate(phi, t), 4.0));
        const Field minus = fourier(power_nonlinearity(propagate(phi, -t), 4.0));
        double gap = 0.0;
        for (std::size_t k = 1; k < g.size(); ++k) {
            const std::size_t mirrored = g.size() - k;
            REQUIRE(g.frequency(mirrored) == doctest::Approx(-g.frequency(k)).epsilon(1e-14));
            const double xi = g.frequency(k);
            const Complex lhs = std::exp(-I * t * xi * xi / 2.0) * minus.samples[k];
            const Complex rhs = std::conj(std::exp(I * t * xi * xi / 2.0) * plus.samples[mirrored]);
            gap = std::max(gap, std::abs(lhs - rhs));
        }
        CHECK(gap < 1e-13);
    }
}

TEST_CASE("log fits") {
    const std::vector<double> T{10.0, 100.0, 1000.0, 1e4};
    std::vector<double> v;
    for (double c : T) v.push_back(2.0 * std::log(c));
    const LogFit exact = fit_log_growth(T, v);
    CHECK(exact.slope == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(std::abs(exact.intercept) < 1e-12);

    // control integrand 1/t: partial integrals 2 ln T
    const std::vector<double> scanned = scan_partial_integrals([](double t) { return Complex{1.0 / t}; }, T, QuadratureSpec{});
    const LogFit control = fit_log_growth(T, scanned);
    CHECK(std::abs(control.slope - 2.0) < 1e-9);
    CHECK(std::abs(control.intercept) < 1e-8);
    CHECK(control.relative_residual < 1e-10);
    CHECK_THROWS_AS(fit_log_growth(std::vector<double>{10.0}, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("partial integrals grow logarithmically at the long-range power") {
    const std::vector<double> T{10.0, 100.0, 1000.0, 1e4};
    for (int n = 1; n <= 2; ++n) {
        const DivergenceReport r = divergence_scan(1.0, n, T);
        CHECK(r.p == doctest::Approx(1.0 + 2.0 / n));
        CHECK(r.diverges());
        CHECK(r.fitted_slope > 0.0);
        for (std::size_t k = 1; k < r.partial_magnitudes.size(); ++k) CHECK(r.partial_magnitudes[k] > r.partial_magnitudes[k - 1]);
        // companion increments shrink
        for (std::size_t k = 1; k < r.companion_increments.size(); ++k) CHECK(r.companion_increments[k] < r.companion_increments[k - 1]);
    }
    CHECK_THROWS_AS(divergence_scan(1.0, 1, std::vector<double>{10.0, 100.0}), std::invalid_argument);
}

TEST_CASE("a priori bound ratios are scale invariant") {
    const std::vector<InitialData> bases{unit_gaussian(0.5, 1), unit_gaussian(1.0, 1), unit_gaussian(2.0, 1)};
    const std::vector<double> scales{0.5, 1.0, 2.0};
    for (double p : {4.0, 5.0, 6.0}) {
        CAPTURE(p);
        BoundOptions options;
        options.xi_points_per_axis = 65;
        const BoundReport lhs = bound_check(bases, scales, make_params(1, p), options);
        CHECK(lhs.passed);
        CHECK(lhs.homogeneity_spread < 1e-6);
        CHECK(lhs.min_ratio > 0.0);
        options.side = BoundSide::rhs;
        const BoundReport rhs = bound_check(bases, scales, make_params(1, p), options);
        REQUIRE(rhs.members.size() == lhs.members.size());
        for (std::size_t k = 0; k < lhs.members.size(); ++k) {
            CHECK(std::abs(rhs.members[k].f_norm - lhs.members[k].f_norm) < 1e-6 * lhs.members[k].f_norm);
        }
    }
    CHECK_THROWS_AS(bound_check(bases, {}, make_params(1, 4.0)), std::invalid_argument);
    CHECK_THROWS_AS(bound_check(bases, {-1.0}, make_params(1, 4.0)), std::invalid_argument);
}

TEST_CASE("property: exponent bookkeeping identities") {
    for (int trial = 0; trial < 200; ++trial) {
        const int n = testing_support::uniform_int(1, 3);
        const double hi = n == 3 ? 5.0 : 20.0;
        const double p_super = testing_support::uniform(1.0 + 4.0 / n + 1e-6, hi);
        CHECK(std::abs(supercritical_exponent_defect(n, p_super)) < 1e-12);
        const double p_any = testing_support::uniform(1.0 + 2.0 / n + 1e-6, hi);
        CHECK(std::abs(holder_exponent_defect(n, p_any)) < 1e-12);
    }
}

TEST_CASE("long-range and mismatched inputs are rejected") {
    const XiSet xi = XiSet::uniform(1, 2.0, 5);
    CHECK_THROWS_AS(lhs_profile(unit_gaussian(1.0, 1), make_params(1, 3.0), xi, QuadratureSpec{}), std::invalid_argument);
    CHECK_THROWS_AS(rhs_profile(unit_gaussian(1.0, 1), make_params(1, 2.5), xi, QuadratureSpec{}), std::invalid_argument);
    CHECK_THROWS_AS(verify_identity(unit_gaussian(1.0, 2), make_params(1, 4.0), xi, QuadratureSpec{}), std::invalid_argument);
    CHECK_THROWS_AS(XiSet::uniform(1, 0.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(XiSet::uniform(1, 1.0, 1), std::invalid_argument);
}
