#include "absf/hetnetsim.hpp"

#include "absf/error.hpp"
#include "absf/parallel.hpp"
#include "absf/specfun.hpp"

#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <queue>
#include <sstream>

namespace absf::sim {

using std::numbers::pi;

std::string_view to_string(Scheduler s)
{
    return s == Scheduler::RoundRobin ? "rr" : "pf";
}

void SimConfig::validate() const
{
    scenario.validate();
    const auto fail = [](const char* field, const char* bound, double value) {
        std::ostringstream os;
        os << "invalid simulation parameter '" << field << "' = " << value << ": must be " << bound;
        throw DomainError(os.str());
    };
    if (!(sim_region > 0.0) || !std::isfinite(sim_region)) {
        fail("sim_region", "> 0", sim_region);
    }
    if (!(sample_region > 0.0) || !(sample_region <= sim_region)) {
        fail("sample_region", "in (0, sim_region]", sample_region);
    }
    if (snapshots < 1) {
        fail("snapshots", ">= 1", snapshots);
    }
    if (frames_per_snapshot < 1) {
        fail("frames_per_snapshot", ">= 1", frames_per_snapshot);
    }
    if (absf_count < 0 || absf_count > scenario.n_sf) {
        fail("absf_count", "in [0, n_sf]", absf_count);
    }
    if (near_interferers < 1) {
        fail("near_interferers", ">= 1", near_interferers);
    }
    if (mc_samples < 1) {
        fail("mc_samples", ">= 1", static_cast<double>(mc_samples));
    }
}

namespace {

constexpr double kSirCap = 1e4; // +40 dB
constexpr double kSubframeSeconds = 1e-3;
constexpr int kPfWarmupDraws = 200;
constexpr double kMinDistance = 1e-3; // keeps r^-alpha finite for coincident points

enum Stream : std::uint64_t { kDropStream = 1, kFrameStream = 2, kPalmStream = 3 };

using detail::Rng;

double dist(Point a, Point b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

double path_gain(double r, double alpha)
{
    return std::pow(std::max(r, kMinDistance), -alpha);
}

// Uniform bucket grid over the square [-half, half]^2.
class PointIndex {
public:
    PointIndex(const std::vector<Point>& pts, double half, double target_cell) : pts_(pts), half_(half)
    {
        n_ = std::clamp(static_cast<int>(std::ceil(2.0 * half / target_cell)), 1, 4096);
        cell_ = 2.0 * half / n_;
        std::vector<int> counts(static_cast<std::size_t>(n_) * n_ + 1, 0);
        for (const auto& p : pts) {
            ++counts[cell_index(p) + 1];
        }
        for (std::size_t i = 1; i < counts.size(); ++i) {
            counts[i] += counts[i - 1];
        }
        start_ = counts;
        members_.resize(pts.size());
        for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
            members_[counts[cell_index(pts[i])]++] = i;
        }
    }

    int side() const { return n_; }
    double cell() const { return cell_; }

    int coord(double v) const { return std::clamp(static_cast<int>(std::floor((v + half_) / cell_)), 0, n_ - 1); }
    std::size_t cell_index(Point p) const { return static_cast<std::size_t>(coord(p.y)) * n_ + coord(p.x); }

    template <class F>
    void for_cell(int cx, int cy, F&& f) const
    {
        const std::size_t c = static_cast<std::size_t>(cy) * n_ + cx;
        for (int i = start_[c]; i < start_[c + 1]; ++i) {
            f(members_[i]);
        }
    }

    template <class F>
    void for_ring(int cx, int cy, int r, F&& f) const
    {
        for (int y = cy - r; y <= cy + r; ++y) {
            if (y < 0 || y >= n_) {
                continue;
            }
            const bool edge_row = y == cy - r || y == cy + r;
            for (int x = cx - r; x <= cx + r; x += edge_row ? 1 : 2 * r) {
                if (x >= 0 && x < n_) {
                    for_cell(x, y, f);
                }
                if (r == 0) {
                    break;
                }
            }
        }
    }

    // k nearest points (ascending distance), skipping index `exclude`.
    std::vector<std::pair<double, int>> k_nearest(Point q, int k, int exclude) const
    {
        std::vector<std::pair<double, int>> out;
        if (k <= 0 || pts_.empty()) {
            return out;
        }
        std::priority_queue<std::pair<double, int>> heap;
        const int cx = coord(q.x);
        const int cy = coord(q.y);
        for (int r = 0; r <= n_; ++r) {
            for_ring(cx, cy, r, [&](int i) {
                if (i == exclude) {
                    return;
                }
                const double d = dist(q, pts_[i]);
                if (static_cast<int>(heap.size()) < k) {
                    heap.emplace(d, i);
                } else if (d < heap.top().first) {
                    heap.pop();
                    heap.emplace(d, i);
                }
            });
            // points beyond ring r are at least r cells away
            if (static_cast<int>(heap.size()) == k && heap.top().first <= r * cell_) {
                break;
            }
        }
        out.reserve(heap.size());
        while (!heap.empty()) {
            out.push_back(heap.top());
            heap.pop();
        }
        std::reverse(out.begin(), out.end());
        return out;
    }

    std::pair<double, int> nearest(Point q) const
    {
        const auto v = k_nearest(q, 1, -1);
        return v.empty() ? std::pair{std::numeric_limits<double>::infinity(), -1} : v.front();
    }

private:
    const std::vector<Point>& pts_;
    double half_;
    int n_ = 1;
    double cell_ = 1.0;
    std::vector<int> start_;
    std::vector<int> members_;
};

// Sum of r^-alpha over a point set: exact in the 5x5 block of coarse cells around the query,
// cell-centroid aggregated beyond.
class PowerField {
public:
    PowerField(const std::vector<Point>& pts, double half, double alpha)
        : pts_(pts), index_(pts, half, 500.0), alpha_(alpha)
    {
        const int n = index_.side();
        centroid_.assign(static_cast<std::size_t>(n) * n, Point{});
        count_.assign(centroid_.size(), 0);
        for (const auto& p : pts) {
            const auto c = index_.cell_index(p);
            centroid_[c].x += p.x;
            centroid_[c].y += p.y;
            ++count_[c];
        }
        for (std::size_t c = 0; c < centroid_.size(); ++c) {
            if (count_[c] > 0) {
                centroid_[c].x /= count_[c];
                centroid_[c].y /= count_[c];
            }
        }
    }

    double sum(Point q) const
    {
        const int n = index_.side();
        const int cx = index_.coord(q.x);
        const int cy = index_.coord(q.y);
        double s = 0.0;
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x) {
                const std::size_t c = static_cast<std::size_t>(y) * n + x;
                if (count_[c] == 0) {
                    continue;
                }
                if (std::abs(x - cx) <= 2 && std::abs(y - cy) <= 2) {
                    index_.for_cell(x, y, [&](int i) { s += path_gain(dist(q, pts_[i]), alpha_); });
                } else {
                    s += count_[c] * path_gain(dist(q, centroid_[c]), alpha_);
                }
            }
        }
        return s;
    }

private:
    const std::vector<Point>& pts_;
    PointIndex index_;
    double alpha_;
    std::vector<Point> centroid_;
    std::vector<int> count_;
};

struct TierModel {
    double power[2];
    double alpha[2];
    double load[2];
    int blanked; // tier whose transmissions are reduced to rho_a in ABSFs
};

TierModel tier_model(const ScenarioParams& p)
{
    return {{p.p_m, p.p_s},
            {p.alpha_m, p.alpha_s},
            {p.load_m, p.load_s},
            p.kind == ScenarioKind::MacroFemto ? static_cast<int>(Tier::Small) : static_cast<int>(Tier::Macro)};
}

void draw_points(Rng& rng, double lambda, double side, std::vector<Point>& out)
{
    const long long n = rng.poisson(lambda * side * side);
    out.resize(static_cast<std::size_t>(n));
    for (auto& p : out) {
        p.x = (rng.uniform() - 0.5) * side;
        p.y = (rng.uniform() - 0.5) * side;
    }
}

bool in_square(Point p, double side)
{
    const double h = 0.5 * side;
    return std::abs(p.x) <= h && std::abs(p.y) <= h;
}

// Interference geometry of one UE.
struct UeLink {
    double signal = 0.0;       // mean received serving power
    double rest[2] = {0, 0};   // load-weighted mean power of the non-near BSs per tier
    int begin = 0;             // range into the near-interferer arrays
    int end = 0;
    double mean_sir[2] = {0, 0}; // PF normalisers for NSF / ABSF
};

struct LinkTable {
    std::vector<UeLink> ue;
    std::vector<double> power;
    std::vector<int> bs;
    std::vector<std::uint8_t> tier;
};

class CellScheduler {
public:
    CellScheduler(Snapshot& snap, const SimConfig& cfg)
        : snap_(snap), cfg_(cfg), p_(cfg.scenario), tm_(tier_model(cfg.scenario)),
          rng_(cfg.seed, kFrameStream, static_cast<std::uint64_t>(snap.index))
    {
        select_cells();
        build_links();
        if (cfg_.scheduler == Scheduler::ProportionalFair) {
            warm_up();
        }
    }

    void run()
    {
        const double b = p_.rb_bandwidth * kSubframeSeconds;
        const double outage_rate = std::log2(1.0 + p_.theta0);
        std::vector<std::uint8_t> active[2];
        const std::size_t counts[2] = {snap_.macro_points.size(), snap_.smallcell_points.size()};
        std::vector<std::size_t> rr_next(cells_.size() * 2, 0);
        std::vector<double> scratch;
        for (int f = 0; f < cfg_.frames_per_snapshot; ++f) {
            for (int s = 0; s < p_.n_sf; ++s) {
                const int kind = s < cfg_.absf_count ? 1 : 0;
                for (int t = 0; t < 2; ++t) {
                    active[t].resize(counts[t]);
                    for (auto& a : active[t]) {
                        a = rng_.bernoulli(tm_.load[t]);
                    }
                }
                for (std::size_t c = 0; c < cells_.size(); ++c) {
                    const auto& queue = kind == 0 ? cells_[c].all : cells_[c].victims;
                    if (queue.empty()) {
                        continue;
                    }
                    for (int rb = 0; rb < p_.n_rb; ++rb) {
                        int chosen = -1;
                        double sir = 0.0;
                        if (cfg_.scheduler == Scheduler::RoundRobin) {
                            chosen = queue[rr_next[2 * c + kind]++ % queue.size()];
                            if (!snap_.ue_records[chosen].in_sample_region) {
                                continue; // bits of unsampled UEs are never reported
                            }
                            sir = draw_sir(chosen, kind, active);
                        } else {
                            double best = -1.0;
                            for (int u : queue) {
                                const double v = draw_sir(u, kind, active);
                                const double metric = v / links_.ue[slot_[u]].mean_sir[kind];
                                if (metric > best) {
                                    best = metric;
                                    chosen = u;
                                    sir = v;
                                }
                            }
                        }
                        auto& rec = snap_.ue_records[chosen];
                        rec.shannon_bits += b * std::log2(1.0 + sir);
                        if (sir > p_.theta0) {
                            rec.outage_bits += b * outage_rate;
                        }
                        ++(kind == 0 ? rec.rb_nsf : rec.rb_absf);
                    }
                }
            }
        }
    }

private:
    struct Cell {
        std::vector<int> all;
        std::vector<int> victims; // ABSF queue
    };

    // Cells that serve at least one UE of the sample region.
    void select_cells()
    {
        std::vector<int> cell_of_bs[2] = {std::vector<int>(snap_.macro_points.size(), -1),
                                          std::vector<int>(snap_.smallcell_points.size(), -1)};
        const auto& recs = snap_.ue_records;
        for (const auto& r : recs) {
            if (r.serving_bs >= 0 && r.in_sample_region) {
                auto& id = cell_of_bs[static_cast<int>(r.serving_tier)][r.serving_bs];
                if (id < 0) {
                    id = static_cast<int>(cells_.size());
                    cells_.emplace_back();
                }
            }
        }
        for (int u = 0; u < static_cast<int>(recs.size()); ++u) {
            const auto& r = recs[u];
            if (r.serving_bs < 0) {
                continue;
            }
            const int id = cell_of_bs[static_cast<int>(r.serving_tier)][r.serving_bs];
            if (id < 0) {
                continue;
            }
            cells_[id].all.push_back(u);
            if (absf_eligible(r)) {
                cells_[id].victims.push_back(u);
            }
        }
    }

    bool absf_eligible(const UeRecord& r) const
    {
        // in an ABSF the blanked tier serves nobody; the other tier serves its victims only
        return r.is_victim && static_cast<int>(r.serving_tier) != tm_.blanked;
    }

    void build_links()
    {
        const double half = 0.5 * cfg_.sim_region;
        const std::vector<Point>* pts[2] = {&snap_.macro_points, &snap_.smallcell_points};
        const double lambdas[2] = {p_.lambda_m, p_.lambda_s};
        std::vector<PointIndex> index;
        std::vector<PowerField> field;
        for (int t = 0; t < 2; ++t) {
            const double cell = lambdas[t] > 0.0 ? std::sqrt(4.0 / lambdas[t]) : cfg_.sim_region;
            index.emplace_back(*pts[t], half, cell);
            field.emplace_back(*pts[t], half, tm_.alpha[t]);
        }
        slot_.assign(snap_.ue_records.size(), -1);
        for (const auto& cell : cells_) {
            for (int u : cell.all) {
                const auto& rec = snap_.ue_records[u];
                const int st = static_cast<int>(rec.serving_tier);
                UeLink link;
                link.signal = tm_.power[st] * path_gain(rec.serving_distance, tm_.alpha[st]);
                link.begin = static_cast<int>(links_.power.size());
                for (int t = 0; t < 2; ++t) {
                    const int exclude = t == st ? rec.serving_bs : -1;
                    double near_gain = 0.0;
                    for (const auto& [d, i] : index[t].k_nearest(rec.position, cfg_.near_interferers, exclude)) {
                        const double g = path_gain(d, tm_.alpha[t]);
                        near_gain += g;
                        links_.power.push_back(tm_.power[t] * g);
                        links_.bs.push_back(i);
                        links_.tier.push_back(static_cast<std::uint8_t>(t));
                    }
                    double rest = field[t].sum(rec.position) - near_gain;
                    if (t == st) {
                        rest -= path_gain(rec.serving_distance, tm_.alpha[t]);
                    }
                    link.rest[t] = tm_.load[t] * tm_.power[t] * std::max(rest, 0.0);
                }
                link.end = static_cast<int>(links_.power.size());
                slot_[u] = static_cast<int>(links_.ue.size());
                links_.ue.push_back(link);
            }
        }
    }

    double scale(int tier, int kind) const { return kind == 1 && tier == tm_.blanked ? p_.rho_a : 1.0; }

    double finish(double s, double i) const { return i > 0.0 ? std::min(s / i, kSirCap) : kSirCap; }

    double draw_sir(int ue, int kind, const std::vector<std::uint8_t>* active)
    {
        const auto& l = links_.ue[slot_[ue]];
        const double sc[2] = {scale(0, kind), scale(1, kind)};
        double interference = l.rest[0] * sc[0] + l.rest[1] * sc[1];
        for (int j = l.begin; j < l.end; ++j) {
            const int t = links_.tier[j];
            if (active[t][links_.bs[j]]) {
                interference += rng_.exponential() * links_.power[j] * sc[t];
            }
        }
        return finish(rng_.exponential() * l.signal, interference);
    }

    // Mean SIR over fading and load for the PF metric.
    void warm_up()
    {
        for (auto& l : links_.ue) {
            for (int kind = 0; kind < 2; ++kind) {
                const double sc[2] = {scale(0, kind), scale(1, kind)};
                double acc = 0.0;
                for (int d = 0; d < kPfWarmupDraws; ++d) {
                    double interference = l.rest[0] * sc[0] + l.rest[1] * sc[1];
                    for (int j = l.begin; j < l.end; ++j) {
                        const int t = links_.tier[j];
                        if (rng_.bernoulli(tm_.load[t])) {
                            interference += rng_.exponential() * links_.power[j] * sc[t];
                        }
                    }
                    acc += finish(rng_.exponential() * l.signal, interference);
                }
                l.mean_sir[kind] = acc / kPfWarmupDraws;
            }
        }
    }

    Snapshot& snap_;
    const SimConfig& cfg_;
    const ScenarioParams& p_;
    TierModel tm_;
    Rng rng_;
    std::vector<Cell> cells_;
    LinkTable links_;
    std::vector<int> slot_; // UE index -> links_.ue index
};

} // namespace

Snapshot generate_snapshot(const SimConfig& config, int index)
{
    config.validate();
    Rng rng(config.seed, kDropStream, static_cast<std::uint64_t>(index));
    Snapshot s;
    s.index = index;
    const auto& p = config.scenario;
    draw_points(rng, p.lambda_m, config.sim_region, s.macro_points);
    draw_points(rng, p.lambda_s, config.sim_region, s.smallcell_points);
    std::vector<Point> ues;
    draw_points(rng, p.lambda_u, config.sim_region, ues);
    s.ue_records.resize(ues.size());
    for (std::size_t i = 0; i < ues.size(); ++i) {
        s.ue_records[i].position = ues[i];
        s.ue_records[i].in_sample_region = in_square(ues[i], config.sample_region);
    }
    return s;
}

void associate_and_classify(Snapshot& snapshot, const SimConfig& config)
{
    const auto& p = config.scenario;
    const double half = 0.5 * config.sim_region;
    const double cell_m = std::sqrt(4.0 / p.lambda_m);
    const double cell_s = p.lambda_s > 0.0 ? std::sqrt(4.0 / p.lambda_s) : config.sim_region;
    const PointIndex macro(snapshot.macro_points, half, cell_m);
    const PointIndex small(snapshot.smallcell_points, half, cell_s);
    snapshot.excluded_ues = 0;
    for (auto& ue : snapshot.ue_records) {
        ue.serving_bs = -1;
        ue.is_victim = false;
        const auto [rm, im] = macro.nearest(ue.position);
        if (im < 0) {
            ++snapshot.excluded_ues;
            continue;
        }
        const auto [rs, is] = small.nearest(ue.position);
        ue.serving_tier = Tier::Macro;
        ue.serving_bs = im;
        ue.serving_distance = rm;
        if (p.kind == ScenarioKind::MacroFemto) {
            ue.is_victim = is >= 0 && rs < p.k * rm;
        } else if (is >= 0 && rs < p.k1 * rm) {
            ue.serving_tier = Tier::Small;
            ue.serving_bs = is;
            ue.serving_distance = rs;
            ue.is_victim = rs > p.k2 * rm;
        }
    }
}

void run_frames(Snapshot& snapshot, const SimConfig& config)
{
    CellScheduler(snapshot, config).run();
}

ProbabilityEstimate wilson_interval(long long successes, long long trials)
{
    ProbabilityEstimate e;
    e.trials = trials;
    e.successes = successes;
    if (trials <= 0) {
        return e;
    }
    const double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double ph = successes / n;
    const double denom = 1.0 + z * z / n;
    const double centre = (ph + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(ph * (1.0 - ph) / n + z * z / (4.0 * n * n)) / denom;
    e.value = ph;
    e.lower = successes == 0 ? 0.0 : std::max(0.0, centre - half);
    e.upper = successes == trials ? 1.0 : std::min(1.0, centre + half);
    return e;
}

namespace {

// rho via its hypergeometric series for small gamma, quadrature otherwise.
double fast_rho(double gamma, double alpha)
{
    if (gamma <= 0.5) {
        return 2.0 * gamma / (alpha - 2.0) * specfun::gauss_2f1(1.0, 1.0 - 2.0 / alpha, 2.0 - 2.0 / alpha, -gamma);
    }
    return specfun::rho(gamma, alpha);
}

// Radial PPP draws around the typical UE: successive distances of a tier in increasing order.
class RadialTier {
public:
    RadialTier(double lambda) : lambda_(lambda) {}
    double next(Rng& rng)
    {
        mass_ += rng.exponential();
        last_ = std::sqrt(mass_ / (pi * lambda_));
        return last_;
    }
    double last() const { return last_; }

private:
    double lambda_;
    double mass_ = 0.0;
    double last_ = 0.0;
};

struct PalmCounts {
    std::vector<long long> successes;
    long long victims = 0;
};

constexpr long long kPalmBlock = 4096;

PalmCounts palm_block(const SimConfig& cfg, SubframeKind kind, const std::vector<double>& thresholds,
                      std::uint64_t block)
{
    const auto& p = cfg.scenario;
    const auto tm = tier_model(p);
    const double sc_blanked = kind == SubframeKind::ABSF ? p.rho_a : 1.0;
    const double scale[2] = {tm.blanked == 0 ? sc_blanked : 1.0, tm.blanked == 1 ? sc_blanked : 1.0};
    const double lambdas[2] = {p.lambda_m, p.lambda_s};
    const int k_near = cfg.near_interferers;
    const bool mf = p.kind == ScenarioKind::MacroFemto;
    const int serving_tier = mf ? 0 : 1;

    Rng rng(cfg.seed, kPalmStream, block);
    PalmCounts out;
    out.successes.assign(thresholds.size(), 0);
    if (!(p.lambda_s > 0.0)) {
        return out;
    }
    const long long max_attempts = 1000 * kPalmBlock;
    std::vector<double> far_mass(2);
    for (long long attempt = 0; attempt < max_attempts && out.victims < kPalmBlock; ++attempt) {
        RadialTier tiers[2] = {RadialTier(p.lambda_m), RadialTier(p.lambda_s)};
        const double rm = tiers[0].next(rng);
        const double rs = tiers[1].next(rng);
        bool victim = false;
        if (mf) {
            victim = rs < p.k * rm;
        } else {
            victim = rs < p.k1 * rm && rs > p.k2 * rm;
        }
        if (!victim) {
            continue;
        }
        ++out.victims;
        const double r_serv = serving_tier == 0 ? rm : rs;
        const double signal = tm.power[serving_tier] * std::pow(r_serv, -tm.alpha[serving_tier]);
        double near = 0.0;
        for (int t = 0; t < 2; ++t) {
            // the first point of each tier is already drawn; the serving BS is not an interferer
            int drawn = 1;
            double r = t == 0 ? rm : rs;
            if (t != serving_tier && rng.bernoulli(tm.load[t])) {
                near += rng.exponential() * scale[t] * tm.power[t] * std::pow(r, -tm.alpha[t]);
            }
            for (; drawn < k_near + (t == serving_tier ? 1 : 0); ++drawn) {
                r = tiers[t].next(rng);
                if (rng.bernoulli(tm.load[t])) {
                    near += rng.exponential() * scale[t] * tm.power[t] * std::pow(r, -tm.alpha[t]);
                }
            }
        }
        const double h = rng.exponential();
        for (std::size_t j = 0; j < thresholds.size(); ++j) {
            const double th = thresholds[j];
            if (th == 0.0) {
                ++out.successes[j];
                continue;
            }
            // exact Laplace functional of each tier beyond its last drawn point
            double far = 0.0;
            for (int t = 0; t < 2; ++t) {
                const double big_r = tiers[t].last();
                const double gamma = th / signal * scale[t] * tm.power[t] * std::pow(big_r, -tm.alpha[t]);
                far += pi * tm.load[t] * lambdas[t] * big_r * big_r * fast_rho(gamma, tm.alpha[t]);
            }
            if (h > th * near / signal + far) {
                ++out.successes[j];
            }
        }
    }
    return out;
}

} // namespace

std::vector<ProbabilityEstimate> estimate_success_ccdf(const SimConfig& config, SubframeKind kind,
                                                       const std::vector<double>& thresholds)
{
    config.validate();
    for (double t : thresholds) {
        if (!(t >= 0.0) || !std::isfinite(t)) {
            throw DomainError("estimate_success_ccdf: thresholds must be finite and non-negative");
        }
    }
    const auto blocks = static_cast<std::size_t>((config.mc_samples + kPalmBlock - 1) / kPalmBlock);
    std::vector<PalmCounts> parts(blocks);
    parallel_for(blocks, [&](std::size_t b) { parts[b] = palm_block(config, kind, thresholds, b); });
    long long victims = 0;
    std::vector<long long> successes(thresholds.size(), 0);
    for (const auto& part : parts) {
        victims += part.victims;
        for (std::size_t j = 0; j < thresholds.size(); ++j) {
            successes[j] += part.successes[j];
        }
    }
    if (victims < 100) {
        throw InsufficientDataError("success probability estimate needs at least 100 victim samples, got " +
                                        std::to_string(victims),
                                    victims);
    }
    std::vector<ProbabilityEstimate> out;
    out.reserve(thresholds.size());
    for (long long s : successes) {
        out.push_back(wilson_interval(s, victims));
    }
    return out;
}

ProbabilityEstimate estimate_success_probability(const SimConfig& config, SubframeKind kind)
{
    return estimate_success_ccdf(config, kind, {config.scenario.theta0}).front();
}

namespace {

struct SnapshotCounts {
    long long ues = 0;
    long long victims = 0;
    double share_sum = 0.0;
    double share_sq = 0.0;
};

// Sizes of the NSF and ABSF queues of every BS.
void queue_sizes(const Snapshot& s, const TierModel& tm, std::vector<int> (&all)[2], std::vector<int> (&vic)[2])
{
    all[0].assign(s.macro_points.size(), 0);
    all[1].assign(s.smallcell_points.size(), 0);
    vic[0] = all[0];
    vic[1] = all[1];
    for (const auto& r : s.ue_records) {
        if (r.serving_bs < 0) {
            continue;
        }
        const int t = static_cast<int>(r.serving_tier);
        ++all[t][r.serving_bs];
        if (r.is_victim && t != tm.blanked) {
            ++vic[t][r.serving_bs];
        }
    }
}

std::vector<SnapshotCounts> classify_all(const SimConfig& config, SubframeKind kind)
{
    config.validate();
    const auto tm = tier_model(config.scenario);
    std::vector<SnapshotCounts> parts(static_cast<std::size_t>(config.snapshots));
    parallel_for(parts.size(), [&](std::size_t i) {
        auto snap = generate_snapshot(config, static_cast<int>(i));
        associate_and_classify(snap, config);
        std::vector<int> all[2], vic[2];
        queue_sizes(snap, tm, all, vic);
        auto& c = parts[i];
        for (const auto& r : snap.ue_records) {
            if (!r.in_sample_region || r.serving_bs < 0) {
                continue;
            }
            ++c.ues;
            if (!r.is_victim) {
                continue;
            }
            ++c.victims;
            const int t = static_cast<int>(r.serving_tier);
            const int n = kind == SubframeKind::NSF ? all[t][r.serving_bs] : vic[t][r.serving_bs];
            if (n > 0) {
                const double share = 1.0 / n;
                c.share_sum += share;
                c.share_sq += share * share;
            }
        }
    });
    return parts;
}

// Standard error of a ratio of per-snapshot sums, sum(num) / sum(den).
double ratio_std_error(const std::vector<double>& num, const std::vector<double>& den, double ratio)
{
    const auto s = num.size();
    if (s < 2) {
        return 0.0;
    }
    double total = 0.0;
    double var = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
        total += den[i];
        const double d = num[i] - ratio * den[i];
        var += d * d;
    }
    const double mean_den = total / s;
    return std::sqrt(var * s / (s - 1.0)) / (mean_den * s);
}

} // namespace

FractionEstimate estimate_victim_fraction(const SimConfig& config)
{
    const auto parts = classify_all(config, SubframeKind::NSF);
    FractionEstimate e;
    std::vector<double> num, den;
    for (const auto& c : parts) {
        e.ues += c.ues;
        e.victims += c.victims;
        num.push_back(static_cast<double>(c.victims));
        den.push_back(static_cast<double>(c.ues));
    }
    if (e.ues == 0) {
        throw InsufficientDataError("no UEs in the sample region", 0);
    }
    e.value = static_cast<double>(e.victims) / e.ues;
    e.std_error = ratio_std_error(num, den, e.value);
    return e;
}

ShareEstimate estimate_rr_share(const SimConfig& config, SubframeKind kind)
{
    const auto parts = classify_all(config, kind);
    ShareEstimate e;
    std::vector<double> num, den;
    double sum = 0.0;
    for (const auto& c : parts) {
        e.victims += c.victims;
        sum += c.share_sum;
        num.push_back(c.share_sum);
        den.push_back(static_cast<double>(c.victims));
    }
    if (e.victims == 0) {
        throw InsufficientDataError("no victims in the sample region", 0);
    }
    e.mean = sum / e.victims;
    e.std_error = ratio_std_error(num, den, e.mean);
    return e;
}

double quantile(const std::vector<double>& sorted, double q)
{
    if (sorted.empty()) {
        return 0.0;
    }
    const double pos = std::clamp(q, 0.0, 1.0) * (sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - lo) * (sorted[hi] - sorted[lo]);
}

double ClassSummary::cdf(double x, bool outage) const
{
    const auto& v = outage ? sorted_outage : sorted_throughput;
    if (v.empty()) {
        return 0.0;
    }
    return static_cast<double>(std::upper_bound(v.begin(), v.end(), x) - v.begin()) / v.size();
}

namespace {

template <class Pred>
ClassSummary summarize(std::string name, const std::vector<UeSample>& samples, double target, Pred pred)
{
    ClassSummary s;
    s.name = std::move(name);
    double sum = 0.0;
    double sum_outage = 0.0;
    long long meeting = 0;
    for (const auto& u : samples) {
        if (!pred(u)) {
            continue;
        }
        s.sorted_throughput.push_back(u.throughput_bps);
        s.sorted_outage.push_back(u.outage_throughput_bps);
        sum += u.throughput_bps;
        sum_outage += u.outage_throughput_bps;
        meeting += u.outage_throughput_bps >= target;
    }
    s.count = static_cast<long long>(s.sorted_throughput.size());
    std::sort(s.sorted_throughput.begin(), s.sorted_throughput.end());
    std::sort(s.sorted_outage.begin(), s.sorted_outage.end());
    if (s.count > 0) {
        s.mean_throughput_bps = sum / s.count;
        s.mean_outage_bps = sum_outage / s.count;
        s.fraction_meeting_target = static_cast<double>(meeting) / s.count;
    }
    s.p5_bps = quantile(s.sorted_throughput, 0.05);
    s.p50_bps = quantile(s.sorted_throughput, 0.50);
    s.p95_bps = quantile(s.sorted_throughput, 0.95);
    return s;
}

} // namespace

ThroughputStudy simulate(const SimConfig& config, int threads)
{
    config.validate();
    const auto& p = config.scenario;
    const double seconds = config.frames_per_snapshot * p.n_sf * kSubframeSeconds;
    const int absf_sf = config.frames_per_snapshot * config.absf_count;
    const int nsf_sf = config.frames_per_snapshot * (p.n_sf - config.absf_count);
    std::vector<std::vector<UeSample>> parts(static_cast<std::size_t>(config.snapshots));
    std::vector<int> excluded(parts.size(), 0);
    parallel_for(
        parts.size(),
        [&](std::size_t i) {
            auto snap = generate_snapshot(config, static_cast<int>(i));
            associate_and_classify(snap, config);
            run_frames(snap, config);
            excluded[i] = snap.excluded_ues;
            auto& out = parts[i];
            for (int u = 0; u < static_cast<int>(snap.ue_records.size()); ++u) {
                const auto& r = snap.ue_records[u];
                if (!r.in_sample_region || r.serving_bs < 0) {
                    continue;
                }
                UeSample s;
                s.snapshot = static_cast<int>(i);
                s.ue_id = u;
                s.tier = r.serving_tier;
                s.is_victim = r.is_victim;
                s.serving_distance = r.serving_distance;
                s.throughput_bps = r.shannon_bits / seconds;
                s.outage_throughput_bps = r.outage_bits / seconds;
                s.share_nsf = nsf_sf > 0 ? static_cast<double>(r.rb_nsf) / (nsf_sf * p.n_rb) : 0.0;
                s.share_absf = absf_sf > 0 ? static_cast<double>(r.rb_absf) / (absf_sf * p.n_rb) : 0.0;
                out.push_back(s);
            }
        },
        threads);
    ThroughputStudy study;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        study.samples.insert(study.samples.end(), parts[i].begin(), parts[i].end());
        study.excluded_ues += excluded[i];
    }
    const double target = p.c_v_min;
    study.victims = summarize("victim", study.samples, target, [](const UeSample& u) { return u.is_victim; });
    study.non_victims = summarize("non_victim", study.samples, target, [](const UeSample& u) { return !u.is_victim; });
    study.all = summarize("all", study.samples, target, [](const UeSample&) { return true; });
    study.macro_ues =
        summarize("macro_ue", study.samples, target, [](const UeSample& u) { return u.tier == Tier::Macro; });
    study.small_ues =
        summarize("small_ue", study.samples, target, [](const UeSample& u) { return u.tier == Tier::Small; });
    return study;
}

void write_ue_csv(std::ostream& out, const ThroughputStudy& study, ScenarioKind kind)
{
    const char* small = kind == ScenarioKind::MacroFemto ? "femto" : "pico";
    out << "snapshot,ue_id,tier,is_victim,serving_distance_m,throughput_bps,outage_throughput_bps\n";
    std::ostringstream line;
    line.imbue(std::locale::classic());
    line.precision(17);
    for (const auto& s : study.samples) {
        line.str("");
        line << s.snapshot << ',' << s.ue_id << ',' << (s.tier == Tier::Macro ? "macro" : small) << ','
             << (s.is_victim ? 1 : 0) << ',' << s.serving_distance << ',' << s.throughput_bps << ','
             << s.outage_throughput_bps << '\n';
        out << line.str();
    }
}

} // namespace absf::sim
