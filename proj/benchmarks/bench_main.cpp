#include <benchmark/benchmark.h>

#include <numbers>

#include "cdw/classical.hpp"
#include "cdw/model.hpp"
#include "cdw/quantum.hpp"
#include "cdw/sine_gordon.hpp"
#include "cdw/variational.hpp"

using namespace cdw;

static void BM_GenerateImpurities(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto lat = generate_impurities(n, 1.0, static_cast<double>(n), seed++, 0.01);
        benchmark::DoNotOptimize(lat.sites.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GenerateImpurities)->Range(64, 4096)->Complexity();

static void BM_Rk2TransportStep(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto lat = generate_impurities(n, 1.0, static_cast<double>(n), 42, 0.01);
    DriveField drive;
    drive.e_dc = 0.3;
    PhaseState s;
    s.phases.assign(n, 0.0);
    for (auto _ : state) {
        s = step_rk2(s, lat, drive, 1.0, 0.005);
        benchmark::DoNotOptimize(s.phases.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Rk2TransportStep)->Range(64, 4096)->Complexity();

static void BM_CrankNicolsonStep(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    SchwingerParams p;
    p.omega_p_sq = 1.0;
    WaveFunction wf = gaussian_packet(-16.0, 32.0 / static_cast<double>(n - 1), n, 0.0, 1.0);
    for (auto _ : state) {
        wf = step_crank_nicolson(wf, p, 0.002);
        benchmark::DoNotOptimize(wf.amplitudes.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CrankNicolsonStep)->Range(128, 4096)->Complexity();

static void BM_DufortFrankelStep(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    SchwingerParams p;
    p.omega_p_sq = 1.0;
    WaveFunction prev = gaussian_packet(-16.0, 32.0 / static_cast<double>(n - 1), n, 0.0, 1.0);
    WaveFunction cur = step_crank_nicolson(prev, p, 0.002);
    for (auto _ : state) {
        WaveFunction next = step_dufort_frankel(cur, prev, p, 0.002);
        prev = std::move(cur);
        cur = std::move(next);
        benchmark::DoNotOptimize(cur.amplitudes.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DufortFrankelStep)->Range(128, 4096)->Complexity();

static void BM_PendulumChainStep(benchmark::State& state) {
    PendulumChainParams params;
    params.omega0_sq = 400.0;
    params.omega1_sq = 1.0;
    params.d = 0.05;
    params.n = static_cast<std::size_t>(state.range(0));
    params.ends = ChainEnds::clamped;
    params.right_value = 2.0 * std::numbers::pi;
    SolitonSpec spec;
    spec.beta = -0.5;
    ChainState s = chain_from_soliton(params, spec,
                                      0.5 * params.d * static_cast<double>(params.n - 1));
    for (auto _ : state) {
        pendulum_chain_step(s, params, 0.001);
        benchmark::DoNotOptimize(s.phases.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PendulumChainStep)->Range(128, 8192)->Complexity();

static void BM_EnergyExpectation(benchmark::State& state) {
    ChainHamiltonianParams p;
    p.d1 = 174.091;
    p.e1 = 1e-5;
    p.e2 = 1e-6;
    p.delta_p = 0.005;
    p.n_chains = 2;
    QuadratureGrid grid;
    grid.points_per_axis = static_cast<std::size_t>(state.range(0));
    const auto s = VariationalState::uniform(2, 2, 0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(energy_expectation(p, s, grid, false));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EnergyExpectation)->RangeMultiplier(2)->Range(64, 512)->Complexity();

static void BM_EnergyExpectationDense(benchmark::State& state) {
    ChainHamiltonianParams p;
    p.d1 = 174.091;
    p.delta_p = 0.005;
    p.n_chains = 2;
    QuadratureGrid grid;
    grid.points_per_axis = static_cast<std::size_t>(state.range(0));
    const auto s = VariationalState::uniform(2, 2, 0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(energy_expectation_dense(p, s, grid));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EnergyExpectationDense)->RangeMultiplier(2)->Range(64, 256)->Complexity();

static void BM_MinimizeEnergyTwoChain(benchmark::State& state) {
    ChainHamiltonianParams p;
    p.d1 = 174.091;
    p.e1 = 1e-5;
    p.e2 = 1e-6;
    p.delta_p = 0.005;
    p.theta = 1.0;
    p.n_chains = 2;
    QuadratureGrid grid;
    grid.points_per_axis = 128;
    MinimizeOptions opts;
    opts.max_evals = 2000;
    const auto init = VariationalState::uniform(2, 2, 0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(minimize_energy(p, grid, init, opts).e_min);
    }
}
BENCHMARK(BM_MinimizeEnergyTwoChain)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
