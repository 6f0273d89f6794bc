#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>
#include <limits>
#include <numbers>

#include "nlpoisson/gaussian.hpp"
#include "nlpoisson/quadrature.hpp"
#include "support.hpp"

using namespace nlpoisson;

namespace {

const double kPi = std::numbers::pi;

// independent double-exponential rule on each component
Complex exp_sinh_oracle(const ScalarIntegrand& f) {
    boost::math::quadrature::exp_sinh<double> integrator;
    const double tol = 1e-14;
    const double re = integrator.integrate([&](double t) { return f(t).real(); }, tol);
    const double im = integrator.integrate([&](double t) { return f(t).imag(); }, tol);
    return {re, im};
}

}  // namespace

TEST_CASE("half-line integrals with known values") {
    const QuadratureSpec plain;
    const QuadratureResult e = integrate_half_line([](double t) { return Complex{std::exp(-t)}; }, plain);
    CHECK(e.converged);
    CHECK(std::abs(e.value - 1.0) < 1e-12);

    QuadratureSpec singular;
    singular.singular_exponent = -0.5;
    const QuadratureResult r = integrate_half_line([](double t) { return Complex{std::exp(-t) / std::sqrt(t)}; }, singular);
    CHECK(r.converged);
    CHECK(std::abs(r.value - std::sqrt(kPi)) < 1e-10);

    // \int_0^inf dt / (1 + t^2) = pi/2, tail ~ s^0
    QuadratureSpec tail;
    tail.tail_exponent = 0.0;
    const QuadratureResult c = integrate_half_line([](double t) { return Complex{1.0 / (1.0 + t * t)}; }, tail);
    CHECK(std::abs(c.value - 0.5 * kPi) < 1e-11);

    // complex integrand: \int_0^inf e^{-(1 - i) t} dt = 1 / (1 - i)
    const QuadratureResult z = integrate_half_line([](double t) { return std::exp(-Complex{1.0, -1.0} * t); }, plain);
    CHECK(std::abs(z.value - 1.0 / Complex{1.0, -1.0}) < 1e-12);
}

TEST_CASE("Gaussian lhs integral at xi = 0 against an independent rule") {
    const double a = 1.0;
    const double p = 4.0;
    const double alpha = 0.5 * (p - 1.0) - 2.0;
    const ScalarIntegrand f = [&](double t) { return lhs_integrand_gaussian_r2(a, p, 1, t, 0.0); };
    QuadratureSpec s1;
    s1.tail_exponent = alpha;
    QuadratureSpec s2 = s1;
    s2.split_point = 0.5;
    s2.abs_tol = 1e-14;
    s2.rel_tol = 1e-12;
    const QuadratureResult r1 = integrate_half_line(f, s1);
    const QuadratureResult r2 = integrate_half_line(f, s2);
    CHECK(r1.converged);
    CHECK(r2.converged);
    CHECK(std::abs(r1.value - r2.value) < 1e-8);
    CHECK(std::abs(r1.value - exp_sinh_oracle(f)) < 1e-8);
}

TEST_CASE("property: inversion and split invariance") {
    for (int trial = 0; trial < 20; ++trial) {
        const double b = testing_support::uniform(0.5, 3.0);
        const double w = testing_support::uniform(-2.0, 2.0);
        const double exact_re = b / (b * b + w * w);
        const double exact_im = w / (b * b + w * w);
        const ScalarIntegrand f = [&](double t) { return std::exp(Complex{-b, w} * t); };
        // the same integral after t -> 1/t
        const ScalarIntegrand g = [&](double s) { return f(1.0 / s) / (s * s); };
        QuadratureSpec spec;
        const QuadratureResult direct = integrate_half_line(f, spec);
        const QuadratureResult inverted = integrate_half_line(g, spec);
        CHECK(std::abs(direct.value - inverted.value) < 1e-11);
        CHECK(std::abs(direct.value - Complex{exact_re, exact_im}) < 1e-11);
        for (double split : {0.25, 0.5, 2.0, 4.0}) {
            QuadratureSpec moved = spec;
            moved.split_point = split;
            CHECK(std::abs(integrate_half_line(f, moved).value - direct.value) < 1e-11);
        }
    }
}

TEST_CASE("error estimates bound the true error") {
    struct Case {
        ScalarIntegrand f;
        double exact;
        std::optional<double> singular;
        std::optional<double> tail;
    };
    const std::vector<Case> cases{
        {[](double t) { return Complex{std::exp(-t)}; }, 1.0, {}, {}},
        {[](double t) { return Complex{std::exp(-t) / std::sqrt(t)}; }, std::sqrt(kPi), -0.5, {}},
        {[](double t) { return Complex{1.0 / (1.0 + t * t)}; }, 0.5 * kPi, {}, 0.0},
        {[](double t) { return Complex{std::pow(t, -0.25) / (1.0 + t)}; }, kPi / std::sin(0.75 * kPi), -0.25, -0.75},
    };
    for (const Case& c : cases) {
        for (double tol : {1e-6, 1e-9, 1e-12}) {
            QuadratureSpec spec;
            spec.abs_tol = tol;
            spec.rel_tol = tol;
            spec.singular_exponent = c.singular;
            spec.tail_exponent = c.tail;
            const QuadratureResult r = integrate_half_line(c.f, spec);
            CHECK(r.converged);
            CHECK(std::abs(r.value - c.exact) <= 10.0 * r.error + 1e-14);
            CHECK(r.error <= std::max(tol, tol * std::abs(r.value)));
        }
    }
}

TEST_CASE("vector integrand shares the partition") {
    const VectorQuadratureResult r = integrate_half_line(
        [](double t, std::span<Complex> out) {
            for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::exp(-static_cast<double>(k + 1) * t);
        },
        4, QuadratureSpec{});
    CHECK(r.converged);
    REQUIRE(r.values.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(r.values[k] - 1.0 / static_cast<double>(k + 1)) < 1e-12);
    CHECK_THROWS_AS(integrate_half_line([](double, std::span<Complex>) {}, 0, QuadratureSpec{}), std::invalid_argument);
}

TEST_CASE("partial integrals") {
    const QuadratureSpec spec;
    for (double T : {10.0, 100.0, 1e4}) {
        const QuadratureResult r = partial_integral([](double t) { return Complex{1.0 / t}; }, T, spec);
        CHECK(std::abs(r.value - 2.0 * std::log(T)) < 1e-10);
        const QuadratureResult e = partial_integral([](double t) { return Complex{std::exp(-t)}; }, T, spec);
        CHECK(std::abs(e.value - (std::exp(-1.0 / T) - std::exp(-T))) < 1e-12);
    }
    CHECK(std::abs(partial_integral([](double t) { return Complex{std::exp(-t)}; }, 1e6, spec).value - 1.0) < 1e-5);
    CHECK_THROWS_AS(partial_integral([](double) { return Complex{1.0}; }, 1.0, spec), std::invalid_argument);
}

TEST_CASE("finite interval") {
    const QuadratureResult r = integrate_interval([](double t) { return Complex{std::cos(t), std::sin(t)}; }, 0.0, 1.0, QuadratureSpec{});
    CHECK(std::abs(r.value - Complex{std::sin(1.0), 1.0 - std::cos(1.0)}) < 1e-14);
}

TEST_CASE("non-finite integrand values are reported") {
    const QuadratureSpec spec;
    CHECK_THROWS_AS(integrate_half_line([](double t) { return Complex{std::log(t - 0.5)}; }, spec), std::runtime_error);
    CHECK_THROWS_AS(integrate_half_line([](double) { return Complex{std::numeric_limits<double>::infinity()}; }, spec),
                    std::runtime_error);
}

TEST_CASE("spec validation") {
    const ScalarIntegrand f = [](double t) { return Complex{std::exp(-t)}; };
    QuadratureSpec bad;
    bad.abs_tol = 0.0;
    CHECK_THROWS_AS(integrate_half_line(f, bad), std::invalid_argument);
    bad = {};
    bad.split_point = -1.0;
    CHECK_THROWS_AS(integrate_half_line(f, bad), std::invalid_argument);
    bad = {};
    bad.singular_exponent = -1.0;
    CHECK_THROWS_AS(integrate_half_line(f, bad), std::invalid_argument);
    bad = {};
    bad.tail_exponent = -1.5;
    CHECK_THROWS_AS(integrate_half_line(f, bad), std::invalid_argument);
}

TEST_CASE("an exhausted subdivision budget is flagged") {
    QuadratureSpec spec;
    spec.max_subdivisions = 2;
    spec.abs_tol = 1e-15;
    spec.rel_tol = 1e-15;
    const QuadratureResult r = integrate_half_line([](double t) { return Complex{std::cos(40.0 * t) * std::exp(-t) / std::sqrt(t)}; }, spec);
    CHECK_FALSE(r.converged);
    CHECK(r.error > 0.0);
}
