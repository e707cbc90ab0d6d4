#pragma once

#include <functional>
#include <limits>

namespace absf::specfun {

/// Accuracy budget for adaptive quadrature. An interval set is accepted once the summed
/// error estimate is below max(absolute_tolerance, relative_tolerance * |estimate|).
struct QuadratureSpec {
    double absolute_tolerance = 1e-10;
    double relative_tolerance = 1e-8;
    int max_subdivisions = 2000;

    void validate() const;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct IntegrationResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
    bool converged = false;
};

/// Global adaptive Gauss-Kronrod (21 point) integration of f over [lower, upper].
/// `upper` may be +infinity; the tail is mapped onto [0,1) by x = lower + t/(1-t).
/// Never throws on accuracy failure; inspect `converged`.
IntegrationResult integrate_detailed(const std::function<double(double)>& f, double lower, double upper,
                                     const QuadratureSpec& spec = {});

/// Same as integrate_detailed but throws AccuracyError (carrying the best estimate) when the
/// subdivision budget runs out before the tolerance is met.
double integrate(const std::function<double(double)>& f, double lower, double upper,
                 const QuadratureSpec& spec = {});

/// rho(gamma, alpha) = gamma^{2/alpha} * int_{gamma^{-2/alpha}}^inf du / (1 + u^{alpha/2}).
/// This is the interference-field exponent of a Poisson tier under Rayleigh fading.
/// Requires alpha > 2 and gamma >= 0.
double rho(double gamma, double alpha);

/// Gauss hypergeometric function 2F1(a, b; c; z) for real parameters and z <= 0.
/// Throws DomainError for z > 0 or c a non-positive integer, AccuracyError if a series
/// fails to converge.
double gauss_2f1(double a, double b, double c, double z);

} // namespace absf::specfun
