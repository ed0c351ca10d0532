#include <benchmark/benchmark.h>

#include <vector>

#include "conflab/engine.hpp"
#include "conflab/presets.hpp"
#include "conflab/rng.hpp"
#include "conflab/sdt.hpp"

using namespace conflab;

namespace {

std::vector<LabeledSample> make_samples(std::size_t n) {
    Rng rng(17);
    std::vector<LabeledSample> samples;
    samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        samples.push_back({rng.uniform(), rng.bernoulli(0.5)});
    }
    samples.front().suitable = true;
    samples.back().suitable = false;
    return samples;
}

void BM_RunScenarioLocalized(benchmark::State& state) {
    ScenarioConfig config = presets::mediated_centre();
    config.ticks = static_cast<std::uint32_t>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        config.seed = seed++;
        benchmark::DoNotOptimize(run_scenario(config));
    }
}
BENCHMARK(BM_RunScenarioLocalized)->Arg(10)->Arg(30)->Arg(100);

void BM_RunScenarioUniversal(benchmark::State& state) {
    ScenarioConfig config = presets::stable_homogeneous();
    config.ticks = static_cast<std::uint32_t>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        config.seed = seed++;
        benchmark::DoNotOptimize(run_scenario(config));
    }
}
BENCHMARK(BM_RunScenarioUniversal)->Arg(10)->Arg(40);

void BM_RocCurve(benchmark::State& state) {
    const auto samples = make_samples(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(roc_curve(samples));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RocCurve)->Range(64, 4096)->Complexity();

void BM_AucPairCount(benchmark::State& state) {
    const auto samples = make_samples(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(auc_pair_count(samples));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AucPairCount)->Range(64, 1024)->Complexity();

void BM_TimeToDivergence(benchmark::State& state) {
    ScenarioConfig config;
    config.concept_count = 10;
    config.agent_count = 1;
    config.drift.p_impl_drift = 0.05;
    config.shared_fraction = 1.0;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        config.seed = seed++;
        benchmark::DoNotOptimize(time_to_divergence(config, 2000));
    }
}
BENCHMARK(BM_TimeToDivergence);

}  // namespace
