#pragma once

#include "absf/scenario.hpp"
#include "absf/specfun.hpp"

namespace absf::success {

/// Laplace-transform factors of the three interference fields seen by a victim at serving
/// distance r. Their product is P{SIR > theta0 | r}.
struct InterferenceTerms {
    double r = 0.0;
    double own_tier_term = 1.0;   // other BSs of the serving tier
    double cross_tier_term = 1.0; // non-dominant BSs of the blanked tier
    double di_term = 1.0;         // dominant interferers

    double product() const { return own_tier_term * cross_tier_term * di_term; }
};

/// How the dominant-interferer field is averaged over the DI count.
enum class DiAveraging {
    Auto,      // exact PGF at full load, mean-count power otherwise
    MeanCount, // E1^{load * mean count}
    Pgf,       // PGF of the zero-truncated Poisson count evaluated at E1 (exact for full load)
};

/// exp(-pi * load * lambda * r^2 * rho(theta0, alpha)) of the serving tier.
double laplace_own_tier(const ScenarioParams& params, double r);

/// Non-dominant part of the blanked tier; rho_a is applied for ABSF only.
double laplace_cross_tier(const ScenarioParams& params, double r, SubframeKind kind);

/// Laplace factor of a single dominant interferer placed uniformly in its region
/// (disc of radius k r for macro/femto, annulus r/k1..r/k2 for macro/pico).
double laplace_single_di(const ScenarioParams& params, double r, SubframeKind kind);

/// Laplace factor of all dominant interferers, at least one present.
double laplace_di(const ScenarioParams& params, double r, SubframeKind kind, DiAveraging mode = DiAveraging::Auto);

InterferenceTerms interference_terms(const ScenarioParams& params, double r, SubframeKind kind);

/// Serving distance beyond which the victim distance distribution has mass below `tail`.
double truncation_radius(const ScenarioParams& params, DiMode mode = DiMode::OnePlusDI, double tail = 1e-9);

/// P{SIR > theta0} of a victim UE, averaged over the victim serving-distance distribution.
double success_probability(const ScenarioParams& params, SubframeKind kind, const specfun::QuadratureSpec& spec = {});

/// Closed form for macro/femto conditioned on exactly one DI with alpha_m == alpha_s and full load.
double success_mf_single_di_closed(const ScenarioParams& params, SubframeKind kind);

/// Quadrature of the same single-DI quantity for arbitrary exponents; used to cross-check the closed form.
double success_mf_single_di_numeric(const ScenarioParams& params, SubframeKind kind,
                                    const specfun::QuadratureSpec& spec = {});

} // namespace absf::success
