#include <benchmark/benchmark.h>

#include "tracon/admission.hpp"
#include "tracon/flow.hpp"
#include "tracon/geometry.hpp"
#include "tracon/rng.hpp"
#include "tracon/sim.hpp"
#include "tracon/synthetic.hpp"
#include "tracon/travel_time.hpp"

namespace {

using namespace tracon;

Scenario saturated_day() {
    Rng rng(1);
    return gen_scenario("saturated_one_runway", rng);
}

void BM_simulate_day(benchmark::State& state) {
    const auto sc = saturated_day();
    for (auto _ : state) {
        benchmark::DoNotOptimize(run(sc.config, sc.demand, sc.schedule, sc.dist));
    }
}
BENCHMARK(BM_simulate_day)->Unit(benchmark::kMillisecond);

void BM_simulate_saturated(benchmark::State& state) {
    SimConfig config;
    config.horizon_slots = kSlotsPerDay;
    config.seed = 7;
    DemandSequence demand;
    for (long t = 0; t < config.horizon_slots; ++t) demand.entries[t] = 2;
    RunwaySchedule schedule;
    schedule.open.resize(2);
    schedule.open[0] = {{0, config.horizon_slots}};
    const auto dist = default_travel_time_distribution();
    for (auto _ : state) {
        benchmark::DoNotOptimize(run(config, demand, schedule, dist));
    }
}
BENCHMARK(BM_simulate_saturated)->Unit(benchmark::kMillisecond);

void BM_cap_sweep(benchmark::State& state) {
    const auto sc = saturated_day();
    std::vector<CapConfig> caps;
    for (long c = 6; c <= 12; ++c) caps.push_back({c});
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep_caps(sc.config, caps, sc.demand, sc.schedule, sc.dist));
    }
}
BENCHMARK(BM_cap_sweep)->Unit(benchmark::kMillisecond);

void BM_classify_track(benchmark::State& state) {
    Rng rng(3);
    const auto corpus = gen_track_corpus(64, 0.2, rng);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify_track(corpus[i % corpus.size()].track));
        ++i;
    }
}
BENCHMARK(BM_classify_track);

void BM_aircraft_metrics(benchmark::State& state) {
    const auto sc = saturated_day();
    const auto out = run(sc.config, sc.demand, sc.schedule, sc.dist);
    const auto bridged = to_flight_records(out);
    AnalysisParams params;
    params.window_T_s = 960.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(aircraft_based_metrics(bridged.records, params));
    }
}
BENCHMARK(BM_aircraft_metrics)->Unit(benchmark::kMicrosecond);

void BM_travel_time_sample(benchmark::State& state) {
    const auto dist = default_travel_time_distribution();
    Rng rng(5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dist.sample(rng));
    }
}
BENCHMARK(BM_travel_time_sample);

} // namespace

BENCHMARK_MAIN();
