// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "nfsec/baselines.hpp"
#include "nfsec/convex_subproblem.hpp"
#include "nfsec/hybrid_ao.hpp"
#include "nfsec/surrogates.hpp"

using namespace nfsec;

namespace {

SystemConfig desk(int N) {
    SystemConfig c;
    c.num_antennas = N;
    c.num_rf_chains = 4;
    c.num_users = 3;
    c.r_min = 2.0;
    c.r_max = 4.0;
    return c;
}

void BM_GenerateScenario(benchmark::State& state) {
    const SystemConfig c = desk(static_cast<int>(state.range(0)));
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(generate_scenario(++seed, c));
}
BENCHMARK(BM_GenerateScenario)->Arg(32)->Arg(128);

void BM_EvaluateRates(benchmark::State& state) {
    const SystemConfig c = desk(static_cast<int>(state.range(0)));
    const ChannelSet ch = generate_scenario(1, c);
    const cmat P = initial_precoder(ch, c);
    const Noise noise = noise_of(c);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(P, ch, noise, SecrecyModel::Secure));
}
BENCHMARK(BM_EvaluateRates)->Arg(32)->Arg(128);

void BM_BuildSurrogates(benchmark::State& state) {
    const SystemConfig c = desk(32);
    const ChannelSet ch = generate_scenario(2, c);
    const cmat P = initial_precoder(ch, c);
    const Noise noise = noise_of(c);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_legit_surrogate(P, ch, noise));
        benchmark::DoNotOptimize(optimal_eaves_aux(P, ch, noise.eve));
    }
}
BENCHMARK(BM_BuildSurrogates);

void BM_SolveSubproblem(benchmark::State& state) {
    SystemConfig c = desk(32);
    c.subspace_reduction = state.range(0) != 0;
    const ChannelSet ch = generate_scenario(3, c);
    const cmat P = initial_precoder(ch, c);
    const Noise noise = noise_of(c);
    AssembleOptions o;
    o.power_budget = c.power_budget;
    o.reduce_to_signal_subspace = c.subspace_reduction;
    const ConvexProblem pr = assemble(build_legit_surrogate(P, ch, noise), optimal_eaves_aux(P, ch, noise.eve), ch,
                                      noise, P, c.penalty_init, o);
    for (auto _ : state) benchmark::DoNotOptimize(solve(pr));
}
BENCHMARK(BM_SolveSubproblem)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_AnalogUpdateFc(benchmark::State& state) {
    const SystemConfig c = desk(128);
    const ChannelSet ch = generate_scenario(4, c);
    const cmat P = initial_precoder(ch, c);
    const cmat F = random_analog(5, c);
    const cmat W = update_digital(F, P).W;
    for (auto _ : state) benchmark::DoNotOptimize(update_analog_fc(F, W, P));
}
BENCHMARK(BM_AnalogUpdateFc);

void BM_RunScheme(benchmark::State& state) {
    const SystemConfig c = desk(32);
    const ChannelSet ch = generate_scenario(6, c);
    const Scheme s = state.range(0) == 0 ? Scheme::RSMA_FC : Scheme::RSMA_SC;
    for (auto _ : state) benchmark::DoNotOptimize(run_scheme(s, c, ch, {7}));
}
BENCHMARK(BM_RunScheme)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(3);

} // namespace

BENCHMARK_MAIN();
