#include <benchmark/benchmark.h>

#include "modflow/conformal.hpp"
#include "modflow/freefield.hpp"
#include "modflow/modular_flow.hpp"
#include "modflow/nonlocal.hpp"
#include "modflow/psdo.hpp"
#include "modflow/util.hpp"

#include <cmath>

using namespace modflow;

static void BM_FlowPoint(benchmark::State& st)
{
    const auto kind = static_cast<FlowKind>(st.range(0));
    FourVector x = kind == FlowKind::DoubleConeUnit ? FourVector{0.1, 0.2, -0.1, 0.3}
                   : kind == FlowKind::ForwardCone  ? FourVector{2, 0.3, 0.1, 0}
                                                    : FourVector{0.2, 1.5, 0, 0};
    double s = 0.3;
    for (auto _ : st) {
        benchmark::DoNotOptimize(flow_point(kind, s, x));
        s += 1e-9;
    }
}
BENCHMARK(BM_FlowPoint)->Arg(0)->Arg(1)->Arg(2);

static void BM_BracketTable(benchmark::State& st)
{
    Rng rng(1);
    std::vector<FourVector> p;
    for (int i = 0; i < 24; ++i)
        p.push_back(rng.four_vector(-1.5, 1.5));
    for (auto _ : st)
        benchmark::DoNotOptimize(bracket_table(p));
}
BENCHMARK(BM_BracketTable)->Unit(benchmark::kMillisecond);

static void BM_ApplyEnergy(benchmark::State& st)
{
    auto f = GridFunction::line(static_cast<int>(st.range(0)), 64);
    f.fill([](const Coord& x) { return cplx(std::exp(-x[0] * x[0] / 2), 0); });
    auto p = energy_symbol(1.0);
    for (auto _ : st)
        benchmark::DoNotOptimize(apply_psdo(p, f));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_ApplyEnergy)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity(benchmark::oNLogN);

static void BM_BorchersYngvasonGenerator(benchmark::State& st)
{
    auto f = by_probe(5.0);
    for (auto _ : st)
        benchmark::DoNotOptimize(by_generator_formula(static_cast<int>(st.range(0)), 5.0, f));
}
BENCHMARK(BM_BorchersYngvasonGenerator)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_TwoPointQuadrature(benchmark::State& st)
{
    for (auto _ : st)
        benchmark::DoNotOptimize(two_point_quadrature(1.0, {0.3, 1.0, 0.2, 0.1}, {}, 0.05));
}
BENCHMARK(BM_TwoPointQuadrature)->Unit(benchmark::kMicrosecond);

static void BM_PauliJordan(benchmark::State& st)
{
    for (auto _ : st)
        benchmark::DoNotOptimize(pauli_jordan(1.0, 1.0, 0.5));
}
BENCHMARK(BM_PauliJordan)->Unit(benchmark::kMicrosecond);

static void BM_KmsFit(benchmark::State& st)
{
    KmsOptions o;
    o.samples = static_cast<int>(st.range(0));
    for (auto _ : st)
        benchmark::DoNotOptimize(kms_boost_fit({0, 1, 0, 0}, {0, 1.5, 0.2, 0}, o));
}
BENCHMARK(BM_KmsFit)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

static void BM_FRestKernel(benchmark::State& st)
{
    auto f = RadialFunction::sample([](double r) { return std::exp(-r * r); }, static_cast<std::size_t>(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(f_rest_kernel(f, 1.0));
}
BENCHMARK(BM_FRestKernel)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
