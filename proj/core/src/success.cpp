#include "absf/success.hpp"

#include "absf/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace absf::success {

using std::numbers::pi;

namespace {

// Precomputes every r-independent constant of the three Laplace factors.
class LaplaceModel {
public:
    LaplaceModel(const ScenarioParams& p, SubframeKind kind) : p_(p), scale_(p.interference_scale(kind))
    {
        const bool mf = p.kind == ScenarioKind::MacroFemto;
        const double own_load = mf ? p.load_m : p.load_s;
        const double own_lambda = mf ? p.lambda_m : p.lambda_s;
        const double own_alpha = mf ? p.alpha_m : p.alpha_s;
        own_exponent_ = pi * own_load * own_lambda * specfun::rho(p.theta0, own_alpha);
        if (mf) {
            if (!(p.k > 0.0)) {
                throw DomainError("macro/femto interference terms require k > 0");
            }
        } else if (!(p.k2 > 0.0) || !(p.k1 > p.k2)) {
            throw DomainError("macro/pico interference terms require k1 > k2 > 0");
        }
    }

    double own(double r) const { return std::exp(-own_exponent_ * r * r); }

    double cross(double r) const
    {
        const double th = p_.theta0 * scale_;
        if (th == 0.0) {
            return 1.0;
        }
        if (p_.kind == ScenarioKind::MacroFemto) {
            // femto BSs outside the DI disc of radius k r
            const double gamma =
                th * p_.p_s * std::pow(r, p_.alpha_m) / (std::pow(p_.k, p_.alpha_s) * p_.p_m * std::pow(r, p_.alpha_s));
            return std::exp(-pi * p_.load_s * p_.k * p_.k * p_.lambda_s * r * r * specfun::rho(gamma, p_.alpha_s));
        }
        // macro BSs outside radius r / k2
        const double gamma =
            th * std::pow(p_.k2, p_.alpha_m) * p_.p_m * std::pow(r, p_.alpha_s) / (p_.p_s * std::pow(r, p_.alpha_m));
        return std::exp(-pi * p_.load_m * p_.lambda_m / (p_.k2 * p_.k2) * r * r * specfun::rho(gamma, p_.alpha_m));
    }

    double single_di(double r) const
    {
        const double th = p_.theta0 * scale_;
        if (th == 0.0) {
            return 1.0;
        }
        if (p_.kind == ScenarioKind::MacroFemto) {
            const double a = p_.alpha_s;
            const double z =
                -std::pow(p_.k, a) * p_.p_m * std::pow(r, a) / (th * p_.p_s * std::pow(r, p_.alpha_m));
            if (std::isinf(z)) {
                return 1.0;
            }
            return std::clamp(1.0 - specfun::gauss_2f1(1.0, 2.0 / a, (2.0 + a) / a, z), 0.0, 1.0);
        }
        const double a = p_.alpha_m;
        const double base = th * p_.p_m * std::pow(r, p_.alpha_s) / (p_.p_s * std::pow(r, a));
        const double k1s = p_.k1 * p_.k1;
        const double k2s = p_.k2 * p_.k2;
        const double f2 = specfun::gauss_2f1(1.0, -2.0 / a, (a - 2.0) / a, -base * std::pow(p_.k2, a));
        const double f1 = specfun::gauss_2f1(1.0, -2.0 / a, (a - 2.0) / a, -base * std::pow(p_.k1, a));
        return std::clamp((k1s * f2 - k2s * f1) / (k1s - k2s), 0.0, 1.0);
    }

    double di(double r, DiAveraging mode) const
    {
        const double e1 = single_di(r);
        const double load = p_.cross_load();
        const double x = di_poisson_mean(p_, r);
        if (mode == DiAveraging::Auto) {
            mode = load == 1.0 ? DiAveraging::Pgf : DiAveraging::MeanCount;
        }
        if (mode == DiAveraging::MeanCount) {
            return std::pow(e1, load * mean_di_count(p_, r));
        }
        if (x < 1e-300) {
            return e1;
        }
        // (e^{e1 x} - 1) / (e^{x} - 1) written to avoid overflow at large x
        return std::exp((e1 - 1.0) * x) * std::expm1(-e1 * x) / std::expm1(-x);
    }

private:
    const ScenarioParams& p_;
    double scale_;
    double own_exponent_ = 0.0;
};

void require_positive_distance(double r)
{
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw DomainError("serving distance must be positive and finite");
    }
}

} // namespace

double laplace_own_tier(const ScenarioParams& params, double r)
{
    require_positive_distance(r);
    return LaplaceModel(params, SubframeKind::NSF).own(r);
}

double laplace_cross_tier(const ScenarioParams& params, double r, SubframeKind kind)
{
    require_positive_distance(r);
    return LaplaceModel(params, kind).cross(r);
}

double laplace_single_di(const ScenarioParams& params, double r, SubframeKind kind)
{
    require_positive_distance(r);
    return LaplaceModel(params, kind).single_di(r);
}

double laplace_di(const ScenarioParams& params, double r, SubframeKind kind, DiAveraging mode)
{
    require_positive_distance(r);
    return LaplaceModel(params, kind).di(r, mode);
}

InterferenceTerms interference_terms(const ScenarioParams& params, double r, SubframeKind kind)
{
    require_positive_distance(r);
    const LaplaceModel m(params, kind);
    return {r, m.own(r), m.cross(r), m.di(r, DiAveraging::Auto)};
}

double truncation_radius(const ScenarioParams& params, DiMode mode, double tail)
{
    const double lm = params.lambda_m;
    double hi = 1.0 / std::sqrt(lm);
    while (victim_distance_tail(params, hi, mode) > tail) {
        hi *= 2.0;
    }
    double lo = 0.0;
    while (hi - lo > 1e-3 * hi) {
        const double mid = 0.5 * (lo + hi);
        (victim_distance_tail(params, mid, mode) > tail ? lo : hi) = mid;
    }
    return hi;
}

double success_probability(const ScenarioParams& params, SubframeKind kind, const specfun::QuadratureSpec& spec)
{
    params.validate();
    if (params.theta0 == 0.0) {
        return 1.0;
    }
    const LaplaceModel m(params, kind);
    const double r_max = truncation_radius(params);
    const auto integrand = [&](double r) {
        if (r <= 0.0) {
            return 0.0;
        }
        const double pdf = victim_distance_pdf(params, r);
        if (pdf == 0.0) {
            return 0.0;
        }
        return m.own(r) * m.cross(r) * m.di(r, DiAveraging::Auto) * pdf;
    };
    return std::clamp(specfun::integrate(integrand, 0.0, r_max, spec), 0.0, 1.0);
}

double success_mf_single_di_closed(const ScenarioParams& params, SubframeKind kind)
{
    if (params.kind != ScenarioKind::MacroFemto) {
        throw UsageError("closed-form single-DI success exists for the macro/femto scenario only");
    }
    if (params.alpha_m != params.alpha_s) {
        throw UsageError("closed-form single-DI success requires alpha_m == alpha_s; use success_probability");
    }
    if (params.load_m != 1.0 || params.load_s != 1.0) {
        throw UsageError("closed-form single-DI success assumes full load on both tiers");
    }
    params.validate();
    const double a = params.alpha_m;
    const double th = params.theta0;
    const double sc = params.interference_scale(kind);
    const double kf = params.k * params.k * params.lambda_s;
    const double lm = params.lambda_m;
    const double mu = kf + lm;
    const double ka = std::pow(params.k, a);
    double di = 1.0;
    double cross_rho = 0.0;
    if (th * sc > 0.0) {
        di = 1.0 - specfun::gauss_2f1(1.0, 2.0 / a, (2.0 + a) / a, -ka * params.p_m / (th * sc * params.p_s));
        cross_rho = specfun::rho(th * sc * params.p_s / (ka * params.p_m), a);
    }
    const double denom = lm * (1.0 + specfun::rho(th, a)) + kf * (1.0 + cross_rho);
    return mu * mu * di / (denom * denom);
}

double success_mf_single_di_numeric(const ScenarioParams& params, SubframeKind kind, const specfun::QuadratureSpec& spec)
{
    if (params.kind != ScenarioKind::MacroFemto) {
        throw UsageError("single-DI success exists for the macro/femto scenario only");
    }
    params.validate();
    const LaplaceModel m(params, kind);
    const double r_max = truncation_radius(params, DiMode::SingleDI);
    const double load = params.load_s;
    const auto integrand = [&](double r) {
        if (r <= 0.0) {
            return 0.0;
        }
        const double di = 1.0 - load + load * m.single_di(r);
        return m.own(r) * m.cross(r) * di * victim_distance_pdf(params, r, DiMode::SingleDI);
    };
    return specfun::integrate(integrand, 0.0, r_max, spec);
}

} // namespace absf::success
