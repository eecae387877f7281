#pragma once

#include <functional>
#include <stdexcept>

namespace nomacoop {

/// Controls the adaptive Gauss-Kronrod integrator behind the quadrature
/// oracle. max_subdivisions bounds the adaptive bisection depth.
struct QuadratureSpec {
    double relative_tolerance = 1e-10;
    double absolute_tolerance = 1e-14;
    int max_subdivisions = 200;
};

/// Thrown when the integrator cannot meet the requested tolerance within
/// the subdivision budget.
struct QuadratureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// C1(x) = (1/ln 2) e^{1/x} E1(1/x), the building block of every
/// closed-form ergodic capacity here. Defined for x > 0 only.
///
/// Evaluated via a two-regime scheme for the scaled exponential integral
/// e^z E1(z), z = 1/x: convergent power series for z <= 1, modified-Lentz
/// continued fraction for z > 1. Stable at least over x in [1e-6, 1e12];
/// neither regime forms e^z or E1(z) separately, so there is no
/// overflow/underflow across the whole sweep range.
double c1(double x);

/// e^z E1(z) for z > 0. Exposed so tests can probe the regime crossover.
double scaled_e1(double z);

/// Independent evaluation path for c1: adaptive quadrature of the defining
/// integral, folded as int_0^inf e^{-s}/(s + 1/x) ds to keep the tail and
/// the e^{1/x} prefactor finite.
double c1_quadrature_oracle(double x, const QuadratureSpec& spec = {});

/// E[log2(1 + aX/b)] for X chi-square with 2 degrees of freedom; equals
/// c1(2a/b).
double expected_log_sinr(double a, double b);

/// int_0^inf e^{-bx} log2(1+ax) dx = (1/b) c1(a/b).
double lemma2_integral(double a, double b);

/// c1(x) - c1(beta*x) for 0 < beta < 1; nonnegative and increasing in x.
double c1_gap(double x, double beta);

/// Adaptive Gauss-Kronrod integration of f over [0, inf). Shared by the
/// quadrature oracle and the verification suites.
double integrate_semi_infinite(const std::function<double(double)>& f,
                               const QuadratureSpec& spec = {});

}  // namespace nomacoop
