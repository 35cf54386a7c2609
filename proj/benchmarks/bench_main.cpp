#include "tlift/cycles.hpp"
#include "tlift/inputs.hpp"
#include "tlift/lifts.hpp"
#include "tlift/maass.hpp"
#include "tlift/qforms.hpp"
#include "tlift/special.hpp"
#include "tlift/traces.hpp"

#include <benchmark/benchmark.h>

using namespace tlift;

static void BM_EnumerateClasses(benchmark::State& state) {
    const std::int64_t D = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_classes(D).size());
}
BENCHMARK(BM_EnumerateClasses)->Arg(-4000)->Arg(-40003)->Arg(4001);

static void BM_Kloosterman(benchmark::State& state) {
    PrecisionGuard g(40);
    const std::int64_t c = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(kloosterman(1, 3, c));
}
BENCHMARK(BM_Kloosterman)->Arg(97)->Arg(1009);

static void BM_SeriesProduct(benchmark::State& state) {
    const int terms = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(parse_form_expression("E4^2E6/Delta^2", terms).coeffs.size());
}
BENCHMARK(BM_SeriesProduct)->Arg(100)->Arg(400);

static void BM_IncompleteGamma(benchmark::State& state) {
    PrecisionGuard g(static_cast<int>(state.range(0)));
    const Real x("3.7");
    for (auto _ : state) benchmark::DoNotOptimize(inc_gamma_upper(11, x));
}
BENCHMARK(BM_IncompleteGamma)->Arg(40)->Arg(100);

static void BM_TraceCM(benchmark::State& state) {
    PrecisionGuard g(static_cast<int>(state.range(0)));
    ModularFunction J = as_function(standard_series(StandardForm::J, 300), EvalPolicy{static_cast<int>(state.range(0)) - 2, true});
    for (auto _ : state) benchmark::DoNotOptimize(trace_cm(J, 1, 71).combined.re);
}
BENCHMARK(BM_TraceCM)->Arg(40)->Arg(60);

static void BM_CycleIntegralDelta(benchmark::State& state) {
    PrecisionGuard g(static_cast<int>(state.range(0)));
    ModularFunction G = as_function(standard_series(StandardForm::Delta, 200), EvalPolicy{static_cast<int>(state.range(0)) - 5, true});
    CycleOptions opt;
    opt.rel_tol = boost::multiprecision::pow(Real(10), -static_cast<int>(state.range(0)) + 10);
    for (auto _ : state) benchmark::DoNotOptimize(cycle_integral_closed(G, QuadForm{1, 1, -1}, opt).value.re);
}
BENCHMARK(BM_CycleIntegralDelta)->Arg(30)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_MillsonLiftJ(benchmark::State& state) {
    PrecisionGuard g(40);
    HarmonicInput J = HarmonicInput::from_series(standard_series(StandardForm::J, 300));
    LiftOptions opt;
    opt.policy = EvalPolicy{35, true};
    for (auto _ : state) benchmark::DoNotOptimize(millson_expansion(J, -3, state.range(0), opt).holo.size());
}
BENCHMARK(BM_MillsonLiftJ)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
