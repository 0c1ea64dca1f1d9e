#include <benchmark/benchmark.h>

#include "dimlab/bundle.hpp"
#include "dimlab/families.hpp"

using namespace dimlab;

static void BM_PlaneRule(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_plane_rule(PlaneDomainSpec::gaussian_plane(1.0, 12.0), n, n / 2 + 16));
    }
}
BENCHMARK(BM_PlaneRule)->Arg(64)->Arg(160);

static void BM_FockGram(benchmark::State& state) {
    const auto rule = build_plane_rule(PlaneDomainSpec::gaussian_plane(1.0, 12.0), 160, 96, 16);
    const auto phi = make_fock_scaled();
    const auto basis = Basis::plane(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(gram(basis, *phi, base_point(0.3), rule));
}
BENCHMARK(BM_FockGram)->Arg(4)->Arg(16);

static void BM_P1Curvature(benchmark::State& state) {
    const int l = static_cast<int>(state.range(0));
    const L2GramField field(Basis::p1(l), std::make_shared<FsFamily>(l, 1, std::vector<FsTerm>{}),
                            build_p1_rule(40, 48));
    for (auto _ : state) benchmark::DoNotOptimize(nakano_min_eig(chern_curvature(field, base_point(0.2))));
}
BENCHMARK(BM_P1Curvature)->Arg(4)->Arg(8);

static void BM_FockCurvatureFd(benchmark::State& state) {
    const auto rule = build_plane_rule(PlaneDomainSpec::gaussian_plane(1.0, 12.0), 160, 96, 16);
    const L2GramField field(Basis::plane(16), make_fock_scaled(), rule, GramDerivativeMode::finite_difference);
    for (auto _ : state) benchmark::DoNotOptimize(chern_curvature(field, base_point(0.3)));
}
BENCHMARK(BM_FockCurvatureFd);

BENCHMARK_MAIN();
