#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nomacoop/numerics.hpp"
#include "nomacoop/rng.hpp"
#include "support/test_util.hpp"

using namespace nomacoop;
using test_util::rel_err;

// Reference values frozen from adaptive quadrature of the defining
// integral at 30-digit precision (tolerance well below 1e-12).
namespace ref {
constexpr double c1_1 = 0.86034738227088595;
constexpr double c1_2 = 1.3314785926679746;
constexpr double c1_10 = 2.906514808414805;
constexpr double c1_100 = 5.8840482336834735;
constexpr double c1_1e_5 = 1.4426806142270849e-5;
constexpr double c1_1e12 = 39.030390961411954;
constexpr double gap_2_half = 0.47113121039708866;  // c1(2) - c1(1)
}  // namespace ref

TEST_CASE("c1 matches the quadrature-derived references") {
    CHECK(rel_err(c1(1.0), ref::c1_1) < 1e-12);
    CHECK(rel_err(c1(2.0), ref::c1_2) < 1e-12);
    CHECK(rel_err(c1(10.0), ref::c1_10) < 1e-12);
    CHECK(rel_err(c1(100.0), ref::c1_100) < 1e-12);
    CHECK(rel_err(c1(1e-5), ref::c1_1e_5) < 1e-12);
    CHECK(rel_err(c1(1e12), ref::c1_1e12) < 1e-12);
}

TEST_CASE("c1 vanishes toward x -> 0+") {
    CHECK(c1(1e-6) < 1e-4);
    CHECK(c1(1e-6) > 0.0);
}

TEST_CASE("c1 rejects non-positive and non-finite arguments") {
    CHECK_THROWS_AS(c1(0.0), std::domain_error);
    CHECK_THROWS_AS(c1(-1.0), std::domain_error);
    CHECK_THROWS_AS(c1(std::nan("")), std::domain_error);
    CHECK_THROWS_AS(c1(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("series / continued-fraction crossover is seamless") {
    const double below = scaled_e1(1.0 - 1e-9);
    const double above = scaled_e1(1.0 + 1e-9);
    CHECK(rel_err(below, above) < 1e-8);
}

TEST_CASE("quadrature oracle agrees with the two-regime evaluator") {
    QuadratureSpec spec;
    spec.relative_tolerance = 1e-10;
    CHECK(std::fabs(c1_quadrature_oracle(1.0, spec) - c1(1.0)) < 1e-9);
    CHECK(rel_err(c1_quadrature_oracle(100.0, spec), c1(100.0)) < 1e-8);
    const double tiny = c1_quadrature_oracle(1e-5, spec);
    CHECK(tiny > 0.0);
    CHECK(tiny < 1e-3);

    for (double x : test_util::log_grid(1e-4, 1e8, 49)) {
        CHECK(rel_err(c1_quadrature_oracle(x), c1(x)) < 1e-8);
    }
}

TEST_CASE("quadrature failure surfaces as an error") {
    QuadratureSpec hopeless;
    hopeless.relative_tolerance = 1e-30;
    hopeless.absolute_tolerance = 1e-300;
    CHECK_THROWS_AS(c1_quadrature_oracle(1.0, hopeless), QuadratureFailure);

    QuadratureSpec invalid;
    invalid.max_subdivisions = 0;
    CHECK_THROWS_AS(c1_quadrature_oracle(1.0, invalid), std::domain_error);
}

TEST_CASE("expected_log_sinr equals c1(2a/b)") {
    CHECK(rel_err(expected_log_sinr(1.0, 1.0), ref::c1_2) < 1e-12);
    CHECK(rel_err(expected_log_sinr(1.0, 2.0), ref::c1_1) < 1e-12);
    CHECK(expected_log_sinr(1e-12, 1.0) < 1e-10);  // a -> 0 kills the rate
    CHECK_THROWS_AS(expected_log_sinr(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(expected_log_sinr(1.0, -2.0), std::domain_error);
}

TEST_CASE("expected_log_sinr matches chi-square Monte Carlo within 3 sigma") {
    const std::pair<double, double> cases[] = {{1, 1}, {1, 2}, {5, 1}, {0.1, 1}};
    SeededRng rng(20240811, 1);
    for (const auto& [a, b] : cases) {
        test_util::RunningMean acc;
        for (int i = 0; i < 10000000; ++i) {
            const double x = rng.exponential(2.0);  // chi-square with 2 dof
            acc.add(std::log2(1.0 + a * x / b));
        }
        const double analytic = expected_log_sinr(a, b);
        CHECK(std::fabs(acc.mean() - analytic) < 3.0 * acc.std_error());
    }
}

TEST_CASE("lemma2_integral equals the directly integrated left-hand side") {
    CHECK(rel_err(lemma2_integral(1.0, 1.0), ref::c1_1) < 1e-12);
    CHECK(rel_err(lemma2_integral(2.0, 1.0), ref::c1_2) < 1e-12);
    CHECK(lemma2_integral(1.0, 1e9) < 1e-9);  // b -> inf kills the mass

    QuadratureSpec spec;
    spec.relative_tolerance = 1e-11;
    const std::pair<double, double> cases[] = {{1, 1}, {2, 1}, {0.5, 3}, {40, 0.2}};
    for (const auto& [a, b] : cases) {
        const double lhs = integrate_semi_infinite(
            [a = a, b = b](double x) { return std::exp(-b * x) * std::log2(1.0 + a * x); },
            spec);
        CHECK(std::fabs(lhs - lemma2_integral(a, b)) < 1e-9);
    }
}

TEST_CASE("c1_gap examples and domain") {
    CHECK(rel_err(c1_gap(2.0, 0.5), ref::gap_2_half) < 1e-12);
    CHECK(c1_gap(5.0, 1.0 - 1e-12) < 1e-9);  // beta -> 1 collapses the gap
    SeededRng rng(7, 0);
    for (int i = 0; i < 200; ++i) {
        const double x = std::exp(rng.uniform(-6.0, 10.0));
        const double beta = rng.uniform(1e-3, 1.0 - 1e-3);
        CHECK(c1_gap(x, beta) >= 0.0);
    }
    CHECK_THROWS_AS(c1_gap(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(c1_gap(1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(c1_gap(-1.0, 0.5), std::domain_error);
}

TEST_CASE("monotonicity on a log grid over [1e-4, 1e8]") {
    const auto grid = test_util::log_grid(1e-4, 1e8, 241);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        CHECK(c1(grid[i - 1]) < c1(grid[i]));
    }
}

TEST_CASE("gap monotonicity for fixed beta") {
    const auto grid = test_util::log_grid(1e-4, 1e8, 121);
    for (double beta : {0.1, 0.5, 0.9}) {
        for (std::size_t i = 1; i < grid.size(); ++i) {
            CHECK(c1_gap(grid[i - 1], beta) <= c1_gap(grid[i], beta) + 1e-12);
        }
    }
}

TEST_CASE("concavity for x > 1: second central difference is negative") {
    for (double x : {1.01, 2.0, 5.0, 10.0, 100.0, 1e3, 1e4, 1e6, 1e8}) {
        const double h = 1e-3 * x;
        const double second = c1(x + h) - 2.0 * c1(x) + c1(x - h);
        CHECK(second <= 1e-9);
    }
}
