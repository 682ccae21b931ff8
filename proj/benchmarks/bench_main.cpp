#include "curvelaw/classification.hpp"
#include "curvelaw/curve_geometry.hpp"
#include "curvelaw/positivity.hpp"
#include "curvelaw/supplement.hpp"
#include "curvelaw/winding.hpp"

#include <benchmark/benchmark.h>

using namespace curvelaw;

static void BM_OmegaQuadrature(benchmark::State& state) {
    const auto m = CurvatureModel::monomial(1.0, static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(omega_quadrature(m, 0.37).value);
}
BENCHMARK(BM_OmegaQuadrature)->Arg(1)->Arg(4)->Arg(24);

static void BM_OmegaOde(benchmark::State& state) {
    const auto m = CurvatureModel::monomial(1.0, static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(omega_ode(m, 0.37));
}
BENCHMARK(BM_OmegaOde)->Arg(1)->Arg(4)->Arg(24);

static void BM_ClassifyMonomial(benchmark::State& state) {
    const double delta = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(classify_monomial(1.0, delta).noncircular.size());
}
BENCHMARK(BM_ClassifyMonomial)->Arg(9)->Arg(35)->Unit(benchmark::kMillisecond);

static void BM_Reconstruct(benchmark::State& state) {
    const auto m = CurvatureModel::monomial(1.0, 4.0);
    for (auto _ : state) benchmark::DoNotOptimize(reconstruct(m, 0.4819713, 0.0, 2, static_cast<int>(state.range(0))).closure_gap);
}
BENCHMARK(BM_Reconstruct)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_PositivityCoefficients(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(certify_positive_coeffs('q', 0, 43).passed);
}
BENCHMARK(BM_PositivityCoefficients)->Unit(benchmark::kMillisecond);

static void BM_PositivityGrid(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(check_p_grid().passed);
}
BENCHMARK(BM_PositivityGrid)->Unit(benchmark::kMillisecond);

static void BM_Nu(benchmark::State& state) {
    const NormalModel m(static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(nu(m, 0.37).value);
}
BENCHMARK(BM_Nu)->Arg(2)->Arg(9);
BENCHMARK_MAIN();
