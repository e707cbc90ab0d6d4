#include "absf/specfun.hpp"

#include "absf/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

namespace absf::specfun {

void QuadratureSpec::validate() const
{
    if (!(absolute_tolerance > 0.0) || !(relative_tolerance > 0.0)) {
        throw DomainError("QuadratureSpec: tolerances must be positive");
    }
    if (max_subdivisions < 1) {
        throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
    }
}

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 21>;

struct Segment {
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment evaluate_segment(const std::function<double(double)>& g, double a, double b)
{
    double err = 0.0;
    const double value = Rule::integrate(g, a, b, 0, 0.0, &err);
    return {a, b, value, err};
}

} // namespace

IntegrationResult integrate_detailed(const std::function<double(double)>& f, double lower, double upper,
                                     const QuadratureSpec& spec)
{
    spec.validate();
    if (std::isnan(lower) || std::isnan(upper) || std::isinf(lower)) {
        throw DomainError("integrate: lower bound must be finite");
    }
    if (lower == upper) {
        return {0.0, 0.0, 0, true};
    }
    if (upper < lower) {
        auto r = integrate_detailed(f, upper, lower, spec);
        r.value = -r.value;
        return r;
    }

    std::function<double(double)> g;
    double a = lower;
    double b = upper;
    if (std::isinf(upper)) {
        g = [&f, lower](double t) {
            const double s = 1.0 - t;
            if (s <= 0.0) {
                return 0.0; // node rounded onto the mapped infinity
            }
            return f(lower + t / s) / (s * s);
        };
        a = 0.0;
        b = 1.0;
    } else {
        g = f;
    }

    std::priority_queue<Segment> heap;
    Segment first = evaluate_segment(g, a, b);
    double total = first.value;
    double total_error = first.error;
    heap.push(first);
    int subdivisions = 1;

    auto tolerance = [&]() { return std::max(spec.absolute_tolerance, spec.relative_tolerance * std::abs(total)); };

    while (total_error > tolerance() && subdivisions < spec.max_subdivisions) {
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // interval can no longer be split in double precision
            heap.push(worst);
            break;
        }
        Segment left = evaluate_segment(g, worst.a, mid);
        Segment right = evaluate_segment(g, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }

    // re-sum to shed accumulated cancellation error from the running totals
    double sum = 0.0;
    double err = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    const bool ok = err <= std::max(spec.absolute_tolerance, spec.relative_tolerance * std::abs(sum)) && std::isfinite(sum);
    return {sum, err, subdivisions, ok};
}

double integrate(const std::function<double(double)>& f, double lower, double upper, const QuadratureSpec& spec)
{
    const auto r = integrate_detailed(f, lower, upper, spec);
    if (!r.converged) {
        std::ostringstream os;
        os << "integrate: tolerance not met after " << r.subdivisions << " subdivisions (estimate " << r.value
           << ", error " << r.error << ")";
        throw AccuracyError(os.str(), r.value, r.error);
    }
    return r.value;
}

double rho(double gamma, double alpha)
{
    if (!(alpha > 2.0) || !std::isfinite(alpha)) {
        throw DomainError("rho: path loss exponent must be > 2");
    }
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw DomainError("rho: gamma must be finite and non-negative");
    }
    if (gamma == 0.0) {
        return 0.0;
    }
    if (alpha == 4.0) {
        const double s = std::sqrt(gamma);
        return s * std::atan(s);
    }
    // With u = gamma^{-2/alpha} * s^{-2/(alpha-2)} the tail integral becomes
    // (2/(alpha-2)) * int_0^1 gamma / (1 + gamma * s^{alpha/(alpha-2)}) ds, bounded and smooth.
    const double power = alpha / (alpha - 2.0);
    const auto integrand = [gamma, power](double s) { return gamma / (1.0 + gamma * std::pow(s, power)); };
    QuadratureSpec spec;
    spec.absolute_tolerance = 1e-14;
    spec.relative_tolerance = 1e-13;
    spec.max_subdivisions = 500;
    const auto r = integrate_detailed(integrand, 0.0, 1.0, spec);
    if (!r.converged && r.error > 1e-10 * std::abs(r.value)) {
        throw AccuracyError("rho: quadrature did not converge", 2.0 / (alpha - 2.0) * r.value, r.error);
    }
    return 2.0 / (alpha - 2.0) * r.value;
}

namespace {

constexpr double kSeriesTolerance = 1e-15;
constexpr long kMaxSeriesTerms = 20'000'000;

bool is_nonpositive_integer(double x)
{
    return x <= 0.0 && std::floor(x) == x;
}

// Plain Gauss series, valid for |z| < 1.
double series_2f1(double a, double b, double c, double z)
{
    long double term = 1.0L;
    long double sum = 1.0L;
    int small_terms = 0;
    for (long n = 0; n < kMaxSeriesTerms; ++n) {
        term *= (static_cast<long double>(a) + n) * (static_cast<long double>(b) + n) /
                ((static_cast<long double>(c) + n) * (n + 1)) * z;
        sum += term;
        if (term == 0.0L) {
            return static_cast<double>(sum);
        }
        if (std::abs(term) <= kSeriesTolerance * std::abs(sum)) {
            // two consecutive small terms guard against a single accidental near-zero term
            if (++small_terms >= 2) {
                return static_cast<double>(sum);
            }
        } else {
            small_terms = 0;
        }
    }
    std::ostringstream os;
    os << "gauss_2f1: series did not converge for a=" << a << " b=" << b << " c=" << c << " z=" << z;
    throw AccuracyError(os.str(), static_cast<double>(sum), static_cast<double>(std::abs(term)));
}

double reciprocal_gamma(double x)
{
    if (is_nonpositive_integer(x)) {
        return 0.0;
    }
    return 1.0 / std::tgamma(x);
}

// Connection formula around z = infinity (requires b - a not an integer), for z < -1.
double inverse_z_2f1(double a, double b, double c, double z)
{
    const double w = 1.0 / z;
    const double mz = -z;
    const double gc = std::tgamma(c);
    double result = 0.0;
    const double c1 = gc * std::tgamma(b - a) * reciprocal_gamma(b) * reciprocal_gamma(c - a);
    if (c1 != 0.0) {
        result += c1 * std::pow(mz, -a) * series_2f1(a, a - c + 1.0, a - b + 1.0, w);
    }
    const double c2 = gc * std::tgamma(a - b) * reciprocal_gamma(a) * reciprocal_gamma(c - b);
    if (c2 != 0.0) {
        result += c2 * std::pow(mz, -b) * series_2f1(b, b - c + 1.0, b - a + 1.0, w);
    }
    return result;
}

} // namespace

double gauss_2f1(double a, double b, double c, double z)
{
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || std::isnan(z)) {
        throw DomainError("gauss_2f1: parameters must be finite");
    }
    if (is_nonpositive_integer(c)) {
        throw DomainError("gauss_2f1: c must not be a non-positive integer");
    }
    if (z > 0.0) {
        throw DomainError("gauss_2f1: only z <= 0 is supported");
    }
    if (z == 0.0 || a == 0.0 || b == 0.0) {
        return 1.0;
    }
    if (std::isinf(z)) {
        throw DomainError("gauss_2f1: z must be finite");
    }
    if (z >= -0.5) {
        return series_2f1(a, b, c, z);
    }
    const double bma = b - a;
    if (z < -2.0 && std::floor(bma) != bma) {
        return inverse_z_2f1(a, b, c, z);
    }
    // Pfaff: 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)), argument in [1/3, 1)
    const double w = z / (z - 1.0);
    return std::pow(1.0 - z, -a) * series_2f1(a, c - b, c, w);
}

} // namespace absf::specfun
