#include "absf/rrfrac.hpp"

#include "absf/error.hpp"

#include <cmath>
#include <numbers>

namespace absf::rrfrac {

using std::numbers::pi;

std::string_view to_string(AreaLabel label)
{
    switch (label) {
    case AreaLabel::RawVoronoi:
        return "raw_voronoi";
    case AreaLabel::MF_NSF:
        return "mf_nsf";
    case AreaLabel::MF_ABSF:
        return "mf_absf";
    case AreaLabel::MP_NSF:
        return "mp_nsf";
    case AreaLabel::MP_ABSF:
        return "mp_absf";
    }
    return "unknown";
}

namespace {

// lambda * (343/15) * sqrt(7 / (2 pi)) written as a single constant on the lambda*x scale
const double kVoronoiConstant = 343.0 / 15.0 * std::sqrt(7.0 / (2.0 * pi));

// Laplace transform of the Gamma(7/2, 7 lambda / 2) area law at s.
double voronoi_laplace(double lambda, double s)
{
    return std::pow(7.0 * lambda / (7.0 * lambda + 2.0 * s), 3.5);
}

AreaDistribution rescaled(AreaDistribution base, double coefficient, AreaLabel label)
{
    // area Y = X / coefficient, f_Y(y) = coefficient * f_X(coefficient * y)
    AreaDistribution out;
    out.label = label;
    out.scale = base.scale / coefficient;
    out.pdf = [f = std::move(base.pdf), coefficient](double y) { return coefficient * f(coefficient * y); };
    return out;
}

} // namespace

double voronoi_area_pdf(double lambda, double x)
{
    if (!(lambda > 0.0)) {
        throw DomainError("voronoi_area_pdf: intensity must be positive");
    }
    if (!(x >= 0.0)) {
        throw DomainError("voronoi_area_pdf: area must be non-negative");
    }
    const double t = lambda * x;
    return lambda * kVoronoiConstant * std::pow(t, 2.5) * std::exp(-3.5 * t);
}

AreaDistribution raw_voronoi(double lambda)
{
    if (!(lambda > 0.0)) {
        throw DomainError("raw_voronoi: intensity must be positive");
    }
    return {[lambda](double x) { return x < 0.0 ? 0.0 : voronoi_area_pdf(lambda, x); }, AreaLabel::RawVoronoi,
            1.0 / lambda};
}

AreaDistribution victim_conditioned_voronoi(double lambda_m, double lambda_u, double victim_prob)
{
    if (!(victim_prob > 0.0)) {
        throw DomainError("conditioned area distribution is degenerate: victim probability is zero");
    }
    const double s1 = victim_prob * lambda_u;
    const double z = 1.0 - voronoi_laplace(lambda_m, s1);
    return {[lambda_m, s1, z](double x) {
                if (x <= 0.0) {
                    return 0.0;
                }
                return -std::expm1(-s1 * x) * voronoi_area_pdf(lambda_m, x) / z;
            },
            AreaLabel::MF_NSF, 1.0 / lambda_m};
}

AreaDistribution conditioned_area_pdf(const ScenarioParams& params, AreaLabel which)
{
    const double pv = victim_probability(params);
    switch (which) {
    case AreaLabel::RawVoronoi:
        return raw_voronoi(params.lambda_m);
    case AreaLabel::MF_NSF:
    case AreaLabel::MF_ABSF: {
        if (params.kind != ScenarioKind::MacroFemto) {
            throw UsageError("macro/femto area distribution requested for a macro/pico scenario");
        }
        auto base = victim_conditioned_voronoi(params.lambda_m, params.lambda_u, pv);
        if (which == AreaLabel::MF_NSF) {
            return base;
        }
        return rescaled(std::move(base), 1.0 / pv, AreaLabel::MF_ABSF);
    }
    case AreaLabel::MP_NSF:
    case AreaLabel::MP_ABSF: {
        if (params.kind != ScenarioKind::MacroPico) {
            throw UsageError("macro/pico area distribution requested for a macro/femto scenario");
        }
        if (!(params.lambda_s > 0.0)) {
            throw DomainError("macro/pico area distribution needs a positive pico intensity");
        }
        auto base = victim_conditioned_voronoi(params.lambda_m, params.lambda_u, pv);
        // PUE area per PBS: macro area times the PUE (or victim PUE) fraction, shared among lambda_p/lambda_m PBSs
        const double per_pico = params.lambda_s / params.lambda_m;
        const double fraction = which == AreaLabel::MP_NSF ? pico_association_probability(params) : pv;
        return rescaled(std::move(base), per_pico / fraction, which);
    }
    }
    throw UsageError("unknown area label");
}

AreaLabel label_for(ScenarioKind scenario, SubframeKind kind)
{
    if (scenario == ScenarioKind::MacroFemto) {
        return kind == SubframeKind::NSF ? AreaLabel::MF_NSF : AreaLabel::MF_ABSF;
    }
    return kind == SubframeKind::NSF ? AreaLabel::MP_NSF : AreaLabel::MP_ABSF;
}

double omega_bar(const AreaDistribution& area, double lambda_ue, const specfun::QuadratureSpec& spec)
{
    if (!(lambda_ue > 0.0)) {
        throw DomainError("omega_bar: UE intensity must be positive");
    }
    // integrate on t = x / scale so both integrals are O(1) regardless of the intensities
    const double scale = area.scale;
    const double mu = lambda_ue * scale;
    const auto numerator = [&](double t) { return -std::expm1(-mu * t) * area.pdf(t * scale) * scale; };
    const auto denominator = [&](double t) { return mu * t * area.pdf(t * scale) * scale; };
    const double num = specfun::integrate(numerator, 0.0, specfun::kInfinity, spec);
    const double den = specfun::integrate(denominator, 0.0, specfun::kInfinity, spec);
    return num / den;
}

double omega_mf_closed(const ScenarioParams& params, SubframeKind kind)
{
    if (params.kind != ScenarioKind::MacroFemto) {
        throw UsageError("omega_mf_closed: no closed form for the macro/pico scenario; use omega_bar");
    }
    const double lm = params.lambda_m;
    const double lu = params.lambda_u;
    const double kf = params.k * params.k * params.lambda_s;
    if (!(kf > 0.0)) {
        throw DomainError("omega_mf_closed: victim probability is zero");
    }
    const double sqrt7 = std::sqrt(7.0);
    if (kind == SubframeKind::NSF) {
        const double s0 = 7.0 * lm + 2.0 * lu;
        const double s1 = kf * lu / (kf + lm);
        const double s2 = 7.0 * lm * lm + kf * s0;
        const double num = std::pow(lm, 4.5) *
                           (sqrt7 / std::pow(lm, 3.5) - 2401.0 / std::pow(s0, 3.5) -
                            2401.0 * std::pow((kf + lm) / s2, 3.5) +
                            2401.0 * std::pow((kf + lm) / (lm * s0 + kf * (7.0 * lm + 4.0 * lu)), 3.5));
        const double den = sqrt7 * lu - 16807.0 * lu * std::pow(lm / (7.0 * lm + 2.0 * s1), 4.5);
        return num / den;
    }
    // ABSF queue: victims only. Prefactor is 1/lambda_u (the unit-consistent value, see README).
    const double s4 = lm * (1.0 + lm / kf);
    const double root2pi = std::sqrt(2.0 * pi);
    const double a = 15.0 * std::sqrt(2.0 * pi / 7.0) / 343.0;
    const double num = a / std::pow(s4, 3.5) - 30.0 * root2pi / std::pow(7.0 * s4 + 2.0 * lu, 3.5) +
                       15.0 * root2pi / std::pow(7.0 * s4 + 4.0 * lu, 3.5);
    const double den = a / std::pow(s4, 4.5) - 105.0 * root2pi / std::pow(7.0 * s4 + 2.0 * lu, 4.5);
    return num / (lu * den);
}

double omega_for(const ScenarioParams& params, SubframeKind kind)
{
    if (params.kind == ScenarioKind::MacroFemto) {
        return omega_mf_closed(params, kind);
    }
    specfun::QuadratureSpec spec;
    spec.absolute_tolerance = 1e-12;
    spec.relative_tolerance = 1e-10;
    return omega_bar(conditioned_area_pdf(params, label_for(params.kind, kind)), params.lambda_u, spec);
}

} // namespace absf::rrfrac
