#pragma once

#include <string>
#include <string_view>

namespace absf {

enum class ScenarioKind { MacroFemto, MacroPico };

/// Normal subframe or almost blank subframe. In an ABSF the interfering tier is scaled by rho_a.
enum class SubframeKind { NSF, ABSF };

std::string_view to_string(ScenarioKind kind);
std::string_view to_string(SubframeKind kind);

/// Physical and statistical description of one two-tier deployment. All quantities are linear
/// SI values (W, 1/m^2, Hz, bit/s). The "small" tier is the femto tier for MacroFemto and the
/// pico tier for MacroPico.
struct ScenarioParams {
    ScenarioKind kind = ScenarioKind::MacroFemto;

    double lambda_m = 1e-5;   // macro BS intensity
    double lambda_u = 2e-4;   // UE intensity
    double lambda_s = 1.2e-4; // small-cell intensity
    double p_m = 19.952623149688797;
    double p_s = 0.1;
    double alpha_m = 2.5;
    double alpha_s = 3.5;
    double load_m = 1.0;
    double load_s = 0.5;

    double k = 0.136;  // macro/femto DI coefficient
    double k1 = 0.471; // macro/pico association coefficient
    double k2 = 0.262; // macro/pico DI coefficient
    double bias = 5.011872336272722; // association bias tau, linear (7 dB)

    double rho_a = 0.01;                 // residue ABSF interference
    double theta0 = 0.31622776601683794; // outage SIR threshold (-5 dB)
    int n_sf = 10;
    int n_rb = 25;
    double rb_bandwidth = 180e3;
    double c_v_min = 40e3;

    /// Throws DomainError naming the first violated field.
    void validate() const;

    /// Interference scale applied to the blanked tier: 1 for NSF, rho_a for ABSF.
    double interference_scale(SubframeKind sf) const { return sf == SubframeKind::ABSF ? rho_a : 1.0; }

    /// Load of the tier that competes with the victim's serving tier (femto for MacroFemto, macro for MacroPico).
    double cross_load() const { return kind == ScenarioKind::MacroFemto ? load_s : load_m; }
};

/// Reference deployment for the given scenario, with the literal coefficients
/// k = 0.136, k1 = 0.471, k2 = 0.262 (not the di_coefficient values).
ScenarioParams reference_params(ScenarioKind kind);

/// (bias * p_num / p_den)^{2 / (alpha_a + alpha_b)}
double di_coefficient(double p_num, double p_den, double alpha_a, double alpha_b, double bias = 1.0);

/// Recomputes k (macro/femto) or k1, k2 (macro/pico) from powers, exponents and bias.
ScenarioParams with_formula_coefficients(ScenarioParams params);

/// Probability that a UE is a victim: >= 1 femto DI (macro/femto) or k2 r_M < r_P < k1 r_M (macro/pico).
double victim_probability(const ScenarioParams& params);

/// Macro/femto only: probability of exactly one femto DI.
double single_di_probability(const ScenarioParams& params);

/// Macro/pico: probability that a UE associates to a pico BS, P{r_P < k1 r_M}.
double pico_association_probability(const ScenarioParams& params);

enum class DiMode { SingleDI, OnePlusDI };

/// Density of the serving-link distance of a victim UE at r metres.
/// SingleDI conditions on exactly one femto DI and is only defined for MacroFemto.
double victim_distance_pdf(const ScenarioParams& params, double r, DiMode mode = DiMode::OnePlusDI);

/// P{serving distance of a victim > r}, closed form of the tail of victim_distance_pdf.
double victim_distance_tail(const ScenarioParams& params, double r, DiMode mode = DiMode::OnePlusDI);

/// Mean number of dominant interferers seen by a victim at serving distance r, x / (1 - e^{-x}).
double mean_di_count(const ScenarioParams& params, double r);

/// Poisson mean of the DI count at serving distance r (pi k^2 lambda_F r^2, or the annulus mass for macro/pico).
double di_poisson_mean(const ScenarioParams& params, double r);

} // namespace absf
