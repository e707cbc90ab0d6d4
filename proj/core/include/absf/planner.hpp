#pragma once

#include "absf/scenario.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace absf::planner {

struct PlanResult {
    double p_success_nsf = 0.0;
    double p_success_absf = 0.0;
    double omega_nsf = 0.0;
    double omega_absf = 0.0;
    double c_nsf = 0.0;  // victim outage throughput in NSFs, bit/s
    double c_absf = 0.0; // victim outage throughput in ABSFs, bit/s
    double c_v = 0.0;    // mixed throughput at n_absf
    int n_absf = 0;
    bool infeasible = false; // C_V,min cannot be met even with every subframe blanked
    bool no_victims = false; // victim probability is zero; nothing to protect
};

/// log2(1 + theta0), bit/s/Hz earned by a successful transmission at the outage threshold.
double spectral_efficiency(double theta0);

/// N_RB * B * log2(1 + theta0) * P{SIR > theta0} * omega, for the victim queue of the given subframe kind.
double outage_throughput(const ScenarioParams& params, SubframeKind kind);

/// (n/N_SF) c_absf + (1 - n/N_SF) c_nsf. Throws DomainError unless 0 <= n_absf <= n_sf.
double mixed_outage_throughput(double c_nsf, double c_absf, int n_absf, int n_sf);
double mixed_outage_throughput(const ScenarioParams& params, int n_absf);

struct AbsfCount {
    int n_absf = 0;
    bool infeasible = false;
};

/// Smallest n in [0, n_sf] whose mixed throughput reaches c_v_min. Ratios within 1e-9 of an
/// integer are snapped before the ceiling.
AbsfCount required_absf(double c_nsf, double c_absf, double c_v_min, int n_sf);
int required_absf(const ScenarioParams& params);

PlanResult plan(const ScenarioParams& params);

enum class SweepParameter { LambdaS, LambdaU, RhoA, Margin, Bias, CVMin };

std::string_view to_string(SweepParameter p);

/// Accepts the names printed by to_string; throws UsageError listing them otherwise.
SweepParameter parse_sweep_parameter(std::string_view name);

/// Names accepted by parse_sweep_parameter, comma separated.
std::string sweep_parameter_names();

/// Copy of params with the swept quantity set to value (linear units). The margin m rewrites the
/// DI coefficient, k (macro/femto) or k2 (macro/pico), as [p_s / (m p_m)]^{2/(alpha_m + alpha_s)};
/// the bias rewrites tau and k1 and is rejected for macro/femto.
ScenarioParams apply_sweep_value(ScenarioParams params, SweepParameter parameter, double value);

struct SweepCurve {
    SweepParameter parameter = SweepParameter::LambdaS;
    std::vector<double> grid;
    std::vector<PlanResult> points;
};

/// Plans every grid point (strictly increasing, non-empty). Points run in parallel; results are
/// stored in grid order.
SweepCurve sweep(const ScenarioParams& params, SweepParameter parameter, const std::vector<double>& grid,
                 int threads = 0);

} // namespace absf::planner
