#include <benchmark/benchmark.h>

#include "pseudomode/model.hpp"
#include "pseudomode/reduction.hpp"
#include "pseudomode/resolvent.hpp"

using namespace pseudomode;

namespace {

ModeNetwork three_wave()
{
    Eigen::MatrixXd chi = Eigen::MatrixXd::Zero(3, 3);
    chi(0, 1) = chi(1, 0) = -0.002;
    chi(0, 2) = chi(2, 0) = -0.003;
    chi(1, 2) = chi(2, 1) = -0.001;
    return ModeNetwork({{4.0, -0.01}, {5.0, -0.02}, {9.0, -0.015}}, chi, {CouplingKind::ThreeWave, 0.01});
}

} // namespace

static void BM_EnumerateSector(benchmark::State& state)
{
    const auto net = three_wave();
    const auto n = state.range(0);
    const auto q = charges_of(net, {n, n, 0});
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_sector(net, q));
    state.SetComplexityN(n + 1);
}
BENCHMARK(BM_EnumerateSector)->RangeMultiplier(4)->Range(4, 4096)->Complexity(benchmark::oN);

static void BM_ContinuedFraction(benchmark::State& state)
{
    const auto net = three_wave();
    const auto n = state.range(0);
    const auto sector = enumerate_sector(net, charges_of(net, {n, n, 0}));
    const ChainResolvent chain(sector, sector.dimension() / 2);
    const ComplexFrequency z(Complex{9.1, 0.01});
    for (auto _ : state) benchmark::DoNotOptimize(projected_green(chain, z));
    state.SetComplexityN(n + 1);
}
BENCHMARK(BM_ContinuedFraction)->RangeMultiplier(4)->Range(4, 4096)->Complexity(benchmark::oN);

static void BM_ChainPoles(benchmark::State& state)
{
    const auto net = three_wave();
    const auto n = state.range(0);
    const auto sector = enumerate_sector(net, charges_of(net, {n, n, 0}));
    const ChainResolvent chain(sector, 0);
    for (auto _ : state) benchmark::DoNotOptimize(dressed_poles_chain(chain));
}
BENCHMARK(BM_ChainPoles)->RangeMultiplier(4)->Range(4, 256);

static void BM_ReduceFourWave(benchmark::State& state)
{
    Eigen::MatrixXd chi = Eigen::MatrixXd::Zero(4, 4);
    chi(0, 3) = chi(3, 0) = -0.001;
    const ModeNetwork net({{4.0, -0.01}, {5.0, -0.02}, {9.0, -0.015}, {0.02, 0.0}}, chi,
                          {CouplingKind::FourWave, 0.001}, 3);
    const FockState s{2, 3, 1, 100};
    for (auto _ : state) benchmark::DoNotOptimize(reduce(net, s));
}
BENCHMARK(BM_ReduceFourWave);
