#include "absf/hetnetsim.hpp"
#include "absf/planner.hpp"
#include "absf/rrfrac.hpp"
#include "absf/specfun.hpp"
#include "absf/success.hpp"

#include <benchmark/benchmark.h>

using namespace absf;

static void BM_Rho(benchmark::State& state)
{
    double g = 0.3162;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::rho(g, 2.5));
        g = g < 100.0 ? g * 1.01 : 0.3162;
    }
}
BENCHMARK(BM_Rho);

static void BM_Gauss2F1(benchmark::State& state)
{
    double z = -0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::gauss_2f1(1.0, 2.0 / 3.5, 5.5 / 3.5, z));
        z = z > -1e3 ? z * 1.1 : -0.5;
    }
}
BENCHMARK(BM_Gauss2F1);

static void BM_SuccessProbability(benchmark::State& state)
{
    const auto p = reference_params(state.range(0) == 0 ? ScenarioKind::MacroFemto : ScenarioKind::MacroPico);
    for (auto _ : state) {
        benchmark::DoNotOptimize(success::success_probability(p, SubframeKind::ABSF));
    }
}
BENCHMARK(BM_SuccessProbability)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_OmegaMacroPico(benchmark::State& state)
{
    const auto p = reference_params(ScenarioKind::MacroPico);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rrfrac::omega_for(p, SubframeKind::NSF));
    }
}
BENCHMARK(BM_OmegaMacroPico)->Unit(benchmark::kMillisecond);

static void BM_Plan(benchmark::State& state)
{
    const auto p = reference_params(state.range(0) == 0 ? ScenarioKind::MacroFemto : ScenarioKind::MacroPico);
    for (auto _ : state) {
        benchmark::DoNotOptimize(planner::plan(p));
    }
}
BENCHMARK(BM_Plan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_Snapshot(benchmark::State& state)
{
    sim::SimConfig c;
    c.scenario = reference_params(ScenarioKind::MacroPico);
    c.sim_region = 4000.0;
    c.sample_region = 2000.0;
    c.frames_per_snapshot = 2;
    c.absf_count = 2;
    c.scheduler = state.range(0) == 0 ? sim::Scheduler::RoundRobin : sim::Scheduler::ProportionalFair;
    int index = 0;
    for (auto _ : state) {
        auto s = sim::generate_snapshot(c, index++);
        sim::associate_and_classify(s, c);
        sim::run_frames(s, c);
        benchmark::DoNotOptimize(s.ue_records.data());
    }
}
BENCHMARK(BM_Snapshot)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_PalmSamples(benchmark::State& state)
{
    sim::SimConfig c;
    c.scenario = reference_params(ScenarioKind::MacroFemto);
    c.mc_samples = 20000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sim::estimate_success_probability(c, SubframeKind::NSF));
    }
}
BENCHMARK(BM_PalmSamples)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
