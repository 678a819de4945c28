#include <benchmark/benchmark.h>

#include "pseudomode/fit.hpp"

using namespace pseudomode;

static void BM_FitRational(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    PoleResidueSet truth;
    for (std::size_t l = 0; l < n; ++l) {
        const double xi = -1.5 + 3.0 * (static_cast<double>(l) + 0.5) / static_cast<double>(n);
        truth.terms.push_back({Complex{xi, -0.1 - 0.05 * static_cast<double>(l)}, Complex{0.05, 0.01}});
    }
    std::vector<FrequencySample> samples;
    for (int k = 0; k <= 400; ++k) {
        const double w = -2.0 + 4.0 * k / 400.0;
        samples.push_back({w, self_energy_eval(truth, w)});
    }
    for (auto _ : state) benchmark::DoNotOptimize(fit_rational(samples, n, {-2.0, 2.0}));
}
BENCHMARK(BM_FitRational)->DenseRange(1, 6)->Unit(benchmark::kMicrosecond);
