#pragma once

#include "absf/scenario.hpp"
#include "absf/specfun.hpp"

#include <functional>
#include <string_view>

namespace absf::rrfrac {

enum class AreaLabel { RawVoronoi, MF_NSF, MF_ABSF, MP_NSF, MP_ABSF };

std::string_view to_string(AreaLabel label);

/// Distribution of the area over which the contenders of one scheduler queue are spread.
/// `scale` is a characteristic area (m^2) used to non-dimensionalise quadrature.
struct AreaDistribution {
    std::function<double(double)> pdf;
    AreaLabel label = AreaLabel::RawVoronoi;
    double scale = 1.0;
};

/// Gamma(7/2) approximation of the Poisson-Voronoi cell area for intensity lambda.
double voronoi_area_pdf(double lambda, double x);

/// Voronoi area of a macro cell conditioned on holding at least one victim,
/// (1 - e^{-p lambda_u x}) f_S(x) / Z, with Z in closed form.
AreaDistribution victim_conditioned_voronoi(double lambda_m, double lambda_u, double victim_prob);

AreaDistribution raw_voronoi(double lambda);

/// Area distribution for the given queue label at the given parameters. Throws DomainError when the
/// victim probability is zero (the conditioning event is empty).
AreaDistribution conditioned_area_pdf(const ScenarioParams& params, AreaLabel which);

/// Label of the queue a victim competes in during the given subframe kind.
AreaLabel label_for(ScenarioKind scenario, SubframeKind kind);

/// Expected round-robin share of a victim: int (1 - e^{-lambda_ue x}) f_A(x) dx / int lambda_ue x f_A(x) dx.
double omega_bar(const AreaDistribution& area, double lambda_ue, const specfun::QuadratureSpec& spec = {});

/// Closed forms of omega_bar for the two macro/femto queues.
double omega_mf_closed(const ScenarioParams& params, SubframeKind kind);

/// omega_bar for the victim queue of the scenario in the given subframe (closed form for macro/femto).
double omega_for(const ScenarioParams& params, SubframeKind kind);

} // namespace absf::rrfrac
