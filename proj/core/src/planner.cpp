#include "absf/planner.hpp"

#include "absf/error.hpp"
#include "absf/parallel.hpp"
#include "absf/rrfrac.hpp"
#include "absf/success.hpp"

#include <array>
#include <cmath>
#include <utility>

namespace absf::planner {

double spectral_efficiency(double theta0)
{
    if (!(theta0 >= 0.0)) {
        throw DomainError("spectral_efficiency: threshold must be non-negative");
    }
    return std::log2(1.0 + theta0);
}

double outage_throughput(const ScenarioParams& params, SubframeKind kind)
{
    params.validate();
    const double rate = params.n_rb * params.rb_bandwidth * spectral_efficiency(params.theta0);
    if (rate == 0.0) {
        return 0.0;
    }
    return rate * success::success_probability(params, kind) * rrfrac::omega_for(params, kind);
}

double mixed_outage_throughput(double c_nsf, double c_absf, int n_absf, int n_sf)
{
    if (n_sf < 1 || n_absf < 0 || n_absf > n_sf) {
        throw DomainError("mixed_outage_throughput: n_absf must lie in [0, n_sf]");
    }
    const double a = static_cast<double>(n_absf) / n_sf;
    return a * c_absf + (1.0 - a) * c_nsf;
}

double mixed_outage_throughput(const ScenarioParams& params, int n_absf)
{
    if (n_absf < 0 || n_absf > params.n_sf) {
        throw DomainError("mixed_outage_throughput: n_absf must lie in [0, n_sf]");
    }
    return mixed_outage_throughput(outage_throughput(params, SubframeKind::NSF),
                                   outage_throughput(params, SubframeKind::ABSF), n_absf, params.n_sf);
}

AbsfCount required_absf(double c_nsf, double c_absf, double c_v_min, int n_sf)
{
    if (n_sf < 1) {
        throw DomainError("required_absf: n_sf must be at least 1");
    }
    if (c_nsf >= c_v_min) {
        return {0, false};
    }
    if (!(c_absf > c_nsf)) {
        return {n_sf, true};
    }
    double ratio = n_sf * (c_v_min - c_nsf) / (c_absf - c_nsf);
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) < 1e-9) {
        ratio = nearest;
    }
    if (ratio > n_sf) {
        return {n_sf, true};
    }
    return {static_cast<int>(std::ceil(ratio)), false};
}

int required_absf(const ScenarioParams& params)
{
    return plan(params).n_absf;
}

PlanResult plan(const ScenarioParams& params)
{
    params.validate();
    PlanResult r;
    if (!(victim_probability(params) > 0.0)) {
        r.no_victims = true;
        return r;
    }
    const double rate = params.n_rb * params.rb_bandwidth * spectral_efficiency(params.theta0);
    r.p_success_nsf = success::success_probability(params, SubframeKind::NSF);
    r.p_success_absf = success::success_probability(params, SubframeKind::ABSF);
    r.omega_nsf = rrfrac::omega_for(params, SubframeKind::NSF);
    r.omega_absf = rrfrac::omega_for(params, SubframeKind::ABSF);
    r.c_nsf = rate * r.p_success_nsf * r.omega_nsf;
    r.c_absf = rate * r.p_success_absf * r.omega_absf;
    const auto count = required_absf(r.c_nsf, r.c_absf, params.c_v_min, params.n_sf);
    r.n_absf = count.n_absf;
    r.infeasible = count.infeasible;
    r.c_v = mixed_outage_throughput(r.c_nsf, r.c_absf, r.n_absf, params.n_sf);
    return r;
}

namespace {

constexpr std::array<std::pair<SweepParameter, std::string_view>, 6> kNames{{
    {SweepParameter::LambdaS, "lambda_s"},
    {SweepParameter::LambdaU, "lambda_u"},
    {SweepParameter::RhoA, "rho_a"},
    {SweepParameter::Margin, "margin"},
    {SweepParameter::Bias, "bias"},
    {SweepParameter::CVMin, "c_v_min"},
}};

} // namespace

std::string_view to_string(SweepParameter p)
{
    for (const auto& [value, name] : kNames) {
        if (value == p) {
            return name;
        }
    }
    return "unknown";
}

std::string sweep_parameter_names()
{
    std::string out;
    for (const auto& [value, name] : kNames) {
        if (!out.empty()) {
            out += ", ";
        }
        out += name;
    }
    return out;
}

SweepParameter parse_sweep_parameter(std::string_view name)
{
    for (const auto& [value, n] : kNames) {
        if (n == name) {
            return value;
        }
    }
    throw UsageError("unknown sweep parameter '" + std::string(name) + "'; valid names: " + sweep_parameter_names());
}

ScenarioParams apply_sweep_value(ScenarioParams params, SweepParameter parameter, double value)
{
    switch (parameter) {
    case SweepParameter::LambdaS:
        params.lambda_s = value;
        break;
    case SweepParameter::LambdaU:
        params.lambda_u = value;
        break;
    case SweepParameter::RhoA:
        params.rho_a = value;
        break;
    case SweepParameter::CVMin:
        params.c_v_min = value;
        break;
    case SweepParameter::Margin: {
        if (!(value > 0.0)) {
            throw DomainError("margin must be positive");
        }
        const double k = di_coefficient(params.p_s, value * params.p_m, params.alpha_m, params.alpha_s);
        (params.kind == ScenarioKind::MacroFemto ? params.k : params.k2) = k;
        break;
    }
    case SweepParameter::Bias:
        if (params.kind != ScenarioKind::MacroPico) {
            throw UsageError("the bias sweep applies to the macro/pico scenario only");
        }
        params.bias = value;
        params.k1 = di_coefficient(params.p_s, params.p_m, params.alpha_m, params.alpha_s, value);
        break;
    }
    return params;
}

SweepCurve sweep(const ScenarioParams& params, SweepParameter parameter, const std::vector<double>& grid, int threads)
{
    if (grid.empty()) {
        throw UsageError("sweep grid is empty");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw UsageError("sweep grid must be strictly increasing");
        }
    }
    // validate every point up front so a bad grid fails before any work starts
    std::vector<ScenarioParams> points;
    points.reserve(grid.size());
    for (double v : grid) {
        points.push_back(apply_sweep_value(params, parameter, v));
        points.back().validate();
    }
    SweepCurve curve{parameter, grid, std::vector<PlanResult>(grid.size())};
    parallel_for(grid.size(), [&](std::size_t i) { curve.points[i] = plan(points[i]); }, threads);
    return curve;
}

} // namespace absf::planner
