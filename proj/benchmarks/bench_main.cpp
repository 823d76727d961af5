#include <benchmark/benchmark.h>

#include <numbers>

#include "bsh/classify/census.hpp"
#include "bsh/hyp/pants.hpp"
#include "bsh/hyp/pentachoron.hpp"
#include "bsh/hyp/solver.hpp"
#include "bsh/hyp/volume.hpp"
#include "bsh/shadow/star.hpp"

using namespace bsh;

namespace {

const hyp::IdealTriangulation& cover() {
    static const auto t = [] {
        const auto q = hyp::build_pentachoron_complex();
        return hyp::build_double_cover(q, hyp::gf2_face_signs(q).x);
    }();
    return t;
}

void BM_Census(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(classify::run_census());
}
BENCHMARK(BM_Census)->Unit(benchmark::kMillisecond);

void BM_StarShadow(benchmark::State& state) {
    std::vector<int> word;
    for (int i = 0; i < state.range(0); ++i) word.push_back(i % 2 ? -1 - (i % 3 == 0) : 1 + (i % 3 == 0));
    word.push_back(2);
    const auto d = shadow::parse_pd(shadow::braid_closure_pd(3, word));
    for (auto _ : state) benchmark::DoNotOptimize(shadow::build_star_shadow(d));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StarShadow)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_SolveCover(benchmark::State& state) {
    const auto sys = hyp::gluing_equations(cover());
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(hyp::solve_shapes(sys, hyp::perturbed_regular_start(10, seed++)));
}
BENCHMARK(BM_SolveCover)->Unit(benchmark::kMicrosecond);

void BM_Lobachevsky(benchmark::State& state) {
    const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
    double theta = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hyp::lobachevsky(theta, tol));
        theta = theta > 3 ? 0.1 : theta + 0.01;
    }
}
BENCHMARK(BM_Lobachevsky)->Arg(6)->Arg(10)->Arg(15);

void BM_CanonicalCode(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(hyp::canonical_code(cover()));
}
BENCHMARK(BM_CanonicalCode)->Unit(benchmark::kMicrosecond);

void BM_VariantSearch(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(hyp::search_variants(cover()));
}
BENCHMARK(BM_VariantSearch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
