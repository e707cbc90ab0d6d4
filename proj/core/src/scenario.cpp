#include "absf/scenario.hpp"

#include "absf/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace absf {

using std::numbers::pi;

std::string_view to_string(ScenarioKind kind)
{
    return kind == ScenarioKind::MacroFemto ? "macro_femto" : "macro_pico";
}

std::string_view to_string(SubframeKind kind)
{
    return kind == SubframeKind::NSF ? "NSF" : "ABSF";
}

namespace {

[[noreturn]] void invalid(const char* field, const char* bound, double value)
{
    std::ostringstream os;
    os << "invalid scenario parameter '" << field << "' = " << value << ": must be " << bound;
    throw DomainError(os.str());
}

void require_positive(const char* field, double v)
{
    if (!(v > 0.0) || !std::isfinite(v)) {
        invalid(field, "> 0", v);
    }
}

void require_unit(const char* field, double v)
{
    if (!(v >= 0.0 && v <= 1.0)) {
        invalid(field, "in [0, 1]", v);
    }
}

} // namespace

void ScenarioParams::validate() const
{
    require_positive("lambda_m", lambda_m);
    require_positive("lambda_u", lambda_u);
    if (!(lambda_s >= 0.0) || !std::isfinite(lambda_s)) {
        invalid("lambda_s", ">= 0", lambda_s);
    }
    require_positive("p_m", p_m);
    require_positive("p_s", p_s);
    if (!(alpha_m > 2.0) || !std::isfinite(alpha_m)) {
        invalid("alpha_m", "> 2", alpha_m);
    }
    if (!(alpha_s > 2.0) || !std::isfinite(alpha_s)) {
        invalid("alpha_s", "> 2", alpha_s);
    }
    require_unit("load_m", load_m);
    require_unit("load_s", load_s);
    require_unit("rho_a", rho_a);
    if (!(theta0 >= 0.0) || !std::isfinite(theta0)) {
        invalid("theta0", ">= 0", theta0);
    }
    if (kind == ScenarioKind::MacroFemto) {
        if (!(k >= 0.0) || !std::isfinite(k)) {
            invalid("k", ">= 0", k);
        }
    } else {
        require_positive("bias", bias);
        if (!(k2 >= 0.0) || !std::isfinite(k2)) {
            invalid("k2", ">= 0", k2);
        }
        if (!(k1 >= k2) || !std::isfinite(k1)) {
            invalid("k1", ">= k2", k1);
        }
    }
    if (n_sf < 1) {
        invalid("n_sf", ">= 1", n_sf);
    }
    if (n_rb < 1) {
        invalid("n_rb", ">= 1", n_rb);
    }
    require_positive("rb_bandwidth", rb_bandwidth);
    if (!(c_v_min >= 0.0) || !std::isfinite(c_v_min)) {
        invalid("c_v_min", ">= 0", c_v_min);
    }
}

ScenarioParams reference_params(ScenarioKind kind)
{
    ScenarioParams p;
    p.kind = kind;
    p.lambda_m = 1e-5;
    p.lambda_u = 20 * p.lambda_m;
    p.p_m = std::pow(10.0, (43.0 - 30.0) / 10.0);
    p.load_m = 1.0;
    p.alpha_m = 2.5;
    p.k = 0.136;
    p.k1 = 0.471;
    p.k2 = 0.262;
    p.bias = std::pow(10.0, 0.7);
    p.rho_a = std::pow(10.0, -2.0);
    p.theta0 = std::pow(10.0, -0.5);
    p.n_sf = 10;
    p.n_rb = 25;
    p.rb_bandwidth = 180e3;
    if (kind == ScenarioKind::MacroFemto) {
        p.lambda_s = 12 * p.lambda_m;
        p.p_s = std::pow(10.0, (20.0 - 30.0) / 10.0);
        p.alpha_s = 3.5;
        p.load_s = 0.5;
        p.c_v_min = 40e3;
    } else {
        p.lambda_s = 4 * p.lambda_m;
        p.p_s = std::pow(10.0, (30.0 - 30.0) / 10.0);
        p.alpha_s = 3.0;
        p.load_s = 0.8;
        p.c_v_min = 100e3;
    }
    return p;
}

double di_coefficient(double p_num, double p_den, double alpha_a, double alpha_b, double bias)
{
    if (!(p_num > 0.0) || !(p_den > 0.0)) {
        throw DomainError("di_coefficient: powers must be positive");
    }
    if (!(alpha_a + alpha_b > 0.0)) {
        throw DomainError("di_coefficient: exponent sum must be positive");
    }
    if (!(bias > 0.0)) {
        throw DomainError("di_coefficient: bias must be positive");
    }
    return std::pow(bias * p_num / p_den, 2.0 / (alpha_a + alpha_b));
}

ScenarioParams with_formula_coefficients(ScenarioParams params)
{
    if (params.kind == ScenarioKind::MacroFemto) {
        params.k = di_coefficient(params.p_s, params.p_m, params.alpha_m, params.alpha_s);
    } else {
        params.k1 = di_coefficient(params.p_s, params.p_m, params.alpha_m, params.alpha_s, params.bias);
        params.k2 = di_coefficient(params.p_s, params.p_m, params.alpha_m, params.alpha_s);
    }
    return params;
}

double victim_probability(const ScenarioParams& params)
{
    if (params.kind == ScenarioKind::MacroFemto) {
        const double kf = params.k * params.k * params.lambda_s;
        return kf / (kf + params.lambda_m);
    }
    const double lm = params.lambda_m;
    return lm / (lm + params.k2 * params.k2 * params.lambda_s) - lm / (lm + params.k1 * params.k1 * params.lambda_s);
}

double single_di_probability(const ScenarioParams& params)
{
    if (params.kind != ScenarioKind::MacroFemto) {
        throw UsageError("single_di_probability is defined for the macro/femto scenario only");
    }
    const double kf = params.k * params.k * params.lambda_s;
    const double mu = kf + params.lambda_m;
    return kf * params.lambda_m / (mu * mu);
}

double pico_association_probability(const ScenarioParams& params)
{
    const double k1p = params.k1 * params.k1 * params.lambda_s;
    return k1p / (k1p + params.lambda_m);
}

namespace {

struct PicoShape {
    double a; // lambda_m / k1^2 + lambda_p
    double b; // lambda_m / k2^2 + lambda_p
    double c; // normalisation
};

PicoShape pico_shape(const ScenarioParams& p)
{
    const double k1s = p.k1 * p.k1;
    const double k2s = p.k2 * p.k2;
    if (!(k2s > 0.0)) {
        throw DomainError("victim distance distribution requires k2 > 0");
    }
    if (!(k1s > k2s)) {
        throw DomainError("victim distance distribution is degenerate: k1 == k2 leaves no victims");
    }
    return {p.lambda_m / k1s + p.lambda_s, p.lambda_m / k2s + p.lambda_s,
            (p.lambda_m + k1s * p.lambda_s) * (p.lambda_m + k2s * p.lambda_s) / ((k1s - k2s) * p.lambda_m)};
}

double femto_dominant_mass(const ScenarioParams& p)
{
    const double kf = p.k * p.k * p.lambda_s;
    if (!(kf > 0.0)) {
        throw DomainError("victim distance distribution is degenerate: no femto dominant interferers possible");
    }
    return kf;
}

} // namespace

double victim_distance_pdf(const ScenarioParams& params, double r, DiMode mode)
{
    if (!(r >= 0.0)) {
        throw DomainError("victim_distance_pdf: distance must be non-negative");
    }
    if (params.kind == ScenarioKind::MacroFemto) {
        const double kf = femto_dominant_mass(params);
        const double lm = params.lambda_m;
        const double mu = kf + lm;
        const double r2 = r * r;
        if (mode == DiMode::SingleDI) {
            return 2.0 * pi * pi * mu * mu * r2 * r * std::exp(-pi * mu * r2);
        }
        // e^{-pi lm r^2} - e^{-pi mu r^2} = e^{-pi lm r^2} (1 - e^{-pi kf r^2})
        return mu / kf * 2.0 * pi * lm * r * std::exp(-pi * lm * r2) * -std::expm1(-pi * kf * r2);
    }
    if (mode == DiMode::SingleDI) {
        throw UsageError("single-DI distance distribution is defined for the macro/femto scenario only");
    }
    const auto s = pico_shape(params);
    const double r2 = r * r;
    return 2.0 * pi * r * s.c * std::exp(-pi * s.a * r2) * -std::expm1(-pi * (s.b - s.a) * r2);
}

double victim_distance_tail(const ScenarioParams& params, double r, DiMode mode)
{
    if (!(r >= 0.0)) {
        throw DomainError("victim_distance_tail: distance must be non-negative");
    }
    const double r2 = r * r;
    if (params.kind == ScenarioKind::MacroFemto) {
        const double kf = femto_dominant_mass(params);
        const double lm = params.lambda_m;
        const double mu = kf + lm;
        if (mode == DiMode::SingleDI) {
            return (1.0 + pi * mu * r2) * std::exp(-pi * mu * r2);
        }
        return mu / kf * (std::exp(-pi * lm * r2) - lm / mu * std::exp(-pi * mu * r2));
    }
    if (mode == DiMode::SingleDI) {
        throw UsageError("single-DI distance distribution is defined for the macro/femto scenario only");
    }
    const auto s = pico_shape(params);
    return s.c * (std::exp(-pi * s.a * r2) / s.a - std::exp(-pi * s.b * r2) / s.b);
}

double di_poisson_mean(const ScenarioParams& params, double r)
{
    if (params.kind == ScenarioKind::MacroFemto) {
        return pi * params.k * params.k * params.lambda_s * r * r;
    }
    return pi * params.lambda_m * (1.0 / (params.k2 * params.k2) - 1.0 / (params.k1 * params.k1)) * r * r;
}

double mean_di_count(const ScenarioParams& params, double r)
{
    if (!(r >= 0.0)) {
        throw DomainError("mean_di_count: distance must be non-negative");
    }
    const double x = di_poisson_mean(params, r);
    if (x < 1e-12) {
        return 1.0 + 0.5 * x;
    }
    return x / -std::expm1(-x);
}

} // namespace absf
