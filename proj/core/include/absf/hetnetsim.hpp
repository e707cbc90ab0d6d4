#pragma once

#include "absf/scenario.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace absf::sim {

enum class Scheduler { RoundRobin, ProportionalFair };

std::string_view to_string(Scheduler s);

/// Snapshot simulation settings. Regions are square sides in metres, both centred on the origin.
struct SimConfig {
    ScenarioParams scenario;
    double sim_region = 6000.0;
    double sample_region = 2000.0;
    int snapshots = 200;
    int frames_per_snapshot = 20;
    Scheduler scheduler = Scheduler::RoundRobin;
    int absf_count = 0;
    std::uint64_t seed = 1;
    int near_interferers = 16; // per tier, faded individually; the rest enter through their mean power
    long long mc_samples = 100000; // victim SIR samples for estimate_success_probability

    /// Throws DomainError naming the first violated field (scenario fields included).
    void validate() const;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

enum class Tier { Macro, Small };

struct UeRecord {
    Point position;
    Tier serving_tier = Tier::Macro;
    int serving_bs = -1; // index into the point list of serving_tier, -1 when excluded
    double serving_distance = 0.0;
    bool is_victim = false;
    bool in_sample_region = false;
    double shannon_bits = 0.0; // sum of B log2(1+SIR) over received RBs, bit per subframe
    double outage_bits = 0.0;  // same with log2(1+theta0) on RBs where SIR > theta0
    int rb_nsf = 0;
    int rb_absf = 0;
};

struct Snapshot {
    int index = 0;
    std::vector<Point> macro_points;
    std::vector<Point> smallcell_points;
    std::vector<UeRecord> ue_records;
    int excluded_ues = 0; // UEs left without a serving macro BS
};

/// Poisson drops of every tier and of the UEs over the simulation region. Deterministic in
/// (config.seed, index). UEs are unclassified (serving_bs = -1).
Snapshot generate_snapshot(const SimConfig& config, int index);

/// Association and victim flags by exact distances. UEs with no macro BS in the region are
/// excluded (serving_bs stays -1) and counted in excluded_ues.
void associate_and_classify(Snapshot& snapshot, const SimConfig& config);

/// Plays frames_per_snapshot frames (first absf_count subframes of each frame are ABSFs) and
/// accumulates bits and RB counts into UEs that belong to cells serving the sample region.
void run_frames(Snapshot& snapshot, const SimConfig& config);

/// Success fraction with a Wilson 95% interval.
struct ProbabilityEstimate {
    double value = 0.0;
    double lower = 0.0;
    double upper = 1.0;
    long long trials = 0;
    long long successes = 0;
};

ProbabilityEstimate wilson_interval(long long successes, long long trials);

/// P{SIR > theta0} of a victim UE by Monte Carlo over the typical-UE (Palm) distribution:
/// the near_interferers closest BSs of each tier are drawn exactly with fresh fading and load
/// thinning, the PPP beyond the last drawn point enters through its exact Laplace functional.
/// Draws config.mc_samples victim samples. Throws InsufficientDataError below 100 victims.
ProbabilityEstimate estimate_success_probability(const SimConfig& config, SubframeKind kind);

/// Same samples evaluated at several thresholds (linear SIR), one estimate per threshold.
std::vector<ProbabilityEstimate> estimate_success_ccdf(const SimConfig& config, SubframeKind kind,
                                                       const std::vector<double>& thresholds);

/// Victim share among UEs in the sample region, with a standard error computed across snapshots.
struct FractionEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long long ues = 0;
    long long victims = 0;
};

FractionEstimate estimate_victim_fraction(const SimConfig& config);

/// Mean asymptotic round-robin share of victims in the sample region: 1 / (size of the queue
/// the victim competes in during the given subframe kind).
struct ShareEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long long victims = 0;
};

ShareEstimate estimate_rr_share(const SimConfig& config, SubframeKind kind);

struct UeSample {
    int snapshot = 0;
    int ue_id = 0;
    Tier tier = Tier::Macro;
    bool is_victim = false;
    double serving_distance = 0.0;
    double throughput_bps = 0.0;
    double outage_throughput_bps = 0.0;
    double share_nsf = 0.0; // fraction of the cell's NSF RBs received
    double share_absf = 0.0;
};

struct ClassSummary {
    std::string name;
    long long count = 0;
    double mean_throughput_bps = 0.0;
    double mean_outage_bps = 0.0;
    double p5_bps = 0.0;
    double p50_bps = 0.0;
    double p95_bps = 0.0;
    double fraction_meeting_target = 0.0; // outage throughput >= c_v_min
    std::vector<double> sorted_throughput;
    std::vector<double> sorted_outage;

    /// Empirical CDF of throughput (outage throughput when `outage`) at x.
    double cdf(double x, bool outage = false) const;
};

struct ThroughputStudy {
    std::vector<UeSample> samples; // snapshot order, then UE order
    ClassSummary victims;
    ClassSummary non_victims;
    ClassSummary all;
    ClassSummary macro_ues;
    ClassSummary small_ues;
    long long excluded_ues = 0;
};

ThroughputStudy simulate(const SimConfig& config, int threads = 0);

/// Linear-interpolated quantile of sorted values, q in [0, 1].
double quantile(const std::vector<double>& sorted, double q);

/// Columns: snapshot,ue_id,tier,is_victim,serving_distance_m,throughput_bps,outage_throughput_bps
void write_ue_csv(std::ostream& out, const ThroughputStudy& study, ScenarioKind kind);

} // namespace absf::sim
