#include <random>

#include <benchmark/benchmark.h>

#include "pseudomode/memory.hpp"

using namespace pseudomode;

namespace {

PoleResidueSet damped(std::size_t count)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> xi(-1.0, 1.0), lambda(0.05, 0.5), mag(0.005, 0.1);
    PoleResidueSet prs;
    for (std::size_t l = 0; l < count; ++l) prs.terms.push_back({Complex{xi(rng), -lambda(rng)}, Complex{mag(rng), 0.0}});
    return prs;
}

} // namespace

static void BM_SolveVolterra(benchmark::State& state)
{
    const auto prs = damped(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_volterra(0.0, prs, 1.0, 20.0, 1e-3));
    state.SetItemsProcessed(state.iterations() * 20000);
}
BENCHMARK(BM_SolveVolterra)->DenseRange(1, 5);

static void BM_SolvePseudomode(benchmark::State& state)
{
    const auto sys = factorize(0.0, damped(static_cast<std::size_t>(state.range(0)))).system;
    for (auto _ : state) benchmark::DoNotOptimize(solve_pseudomode(sys, 1.0, 20.0, 1e-3));
    state.SetItemsProcessed(state.iterations() * 20000);
}
BENCHMARK(BM_SolvePseudomode)->DenseRange(1, 5);

static void BM_ConvergeEquivalence(benchmark::State& state)
{
    const auto prs = damped(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(converge_equivalence(0.0, prs, 1.0, 20.0, 1e-6));
}
BENCHMARK(BM_ConvergeEquivalence)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);
