#include "nomacoop/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

namespace nomacoop {

namespace {

constexpr double kEulerGamma = 0.5772156649015328606;
constexpr double kLn2 = 0.6931471805599453094;

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::domain_error(std::string(what) + " must be finite and > 0");
    }
}

// e^z E1(z) via the convergent series for E1; valid and well conditioned
// for z <= 1 where e^z stays O(1).
double scaled_e1_series(double z) {
    double term = 1.0;  // z^k / k!
    double acc = 0.0;
    for (int k = 1; k < 80; ++k) {
        term *= z / k;
        const double contribution = (k % 2 == 1 ? term : -term) / k;
        acc += contribution;
        if (std::fabs(contribution) < 1e-18 * (std::fabs(acc) + 1e-30)) break;
    }
    return std::exp(z) * (-kEulerGamma - std::log(z) + acc);
}

// e^z E1(z) via the continued fraction
//   E1(z) = e^{-z} / (z+1 - 1/(z+3 - 4/(z+5 - 9/(...))))
// evaluated with the modified Lentz scheme. The e^{-z} factor is never
// formed, so the result stays finite for arbitrarily large z.
double scaled_e1_continued_fraction(double z) {
    constexpr double kTiny = 1e-300;
    double b = z + 1.0;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 400; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double delta = c * d;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) return h;
    }
    throw QuadratureFailure("continued fraction for e^z E1(z) did not converge");
}

}  // namespace

double scaled_e1(double z) {
    require_positive(z, "z");
    return z <= 1.0 ? scaled_e1_series(z) : scaled_e1_continued_fraction(z);
}

double c1(double x) {
    require_positive(x, "x");
    return scaled_e1(1.0 / x) / kLn2;
}

double integrate_semi_infinite(const std::function<double(double)>& f,
                               const QuadratureSpec& spec) {
    if (!(spec.relative_tolerance > 0.0) || !(spec.absolute_tolerance > 0.0) ||
        spec.max_subdivisions < 1) {
        throw std::domain_error("invalid QuadratureSpec");
    }
    // the budget is applied as a bisection-depth cap; depth 15 already
    // means up to 2^15 panels, so deeper requests are clamped to keep the
    // worst case (an unreachable tolerance) bounded
    const int depth = std::min(spec.max_subdivisions, 15);
    double error = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, 0.0, std::numeric_limits<double>::infinity(), depth,
        spec.relative_tolerance, &error);
    if (error > std::max(spec.absolute_tolerance,
                         spec.relative_tolerance * std::fabs(value))) {
        throw QuadratureFailure("quadrature error estimate " + std::to_string(error) +
                                " exceeds tolerance after subdivision budget");
    }
    return value;
}

double c1_quadrature_oracle(double x, const QuadratureSpec& spec) {
    require_positive(x, "x");
    const double z = 1.0 / x;
    double integral;
    if (z >= 1.0) {
        // direct fold; 1/(s+z) is gentle once z >= 1
        integral =
            integrate_semi_infinite([z](double s) { return std::exp(-s) / (s + z); }, spec);
    } else {
        // s = z(e^t - 1) turns the near-singular corner at s ~ z into a
        // smooth plateau: e^z E1(z) = e^z int_0^inf exp(-z e^t) dt
        integral = std::exp(z) * integrate_semi_infinite(
                                     [z](double t) { return std::exp(-z * std::exp(t)); },
                                     spec);
    }
    return integral / kLn2;
}

double expected_log_sinr(double a, double b) {
    require_positive(a, "a");
    require_positive(b, "b");
    return c1(2.0 * a / b);
}

double lemma2_integral(double a, double b) {
    require_positive(a, "a");
    require_positive(b, "b");
    return c1(a / b) / b;
}

double c1_gap(double x, double beta) {
    require_positive(x, "x");
    if (!(beta > 0.0) || !(beta < 1.0)) {
        throw std::domain_error("beta must lie in (0,1)");
    }
    return c1(x) - c1(beta * x);
}

}  // namespace nomacoop
