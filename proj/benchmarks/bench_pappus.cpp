#include <benchmark/benchmark.h>

#include <sstream>

#include "pappus/fareypattern.hpp"
#include "pappus/jacobi.hpp"
#include "pappus/markedbox.hpp"
#include "pappus/prisms.hpp"
#include "pappus/symmspace.hpp"
#include "pappus_tools/export.hpp"

using namespace pappus;

namespace {

void BM_OrbitExact(benchmark::State& state) {
    const auto m = box_from_invariant(Rational(3, 10), Rational(2, 5));
    const int depth = int(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(orbit_enumerate(m, depth));
    state.SetItemsProcessed(state.iterations() * 2 * ((int64_t(1) << (depth + 1)) - 1));
}
BENCHMARK(BM_OrbitExact)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_OrbitFloat(benchmark::State& state) {
    const auto m = box_from_invariant(0.3, 0.4);
    const int depth = int(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(orbit_enumerate(m, depth));
    state.SetItemsProcessed(state.iterations() * 2 * ((int64_t(1) << (depth + 1)) - 1));
}
BENCHMARK(BM_OrbitFloat)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_OrbitWorkers(benchmark::State& state) {
    const auto m = box_from_invariant(Rational(3, 10), Rational(2, 5));
    for (auto _ : state) benchmark::DoNotOptimize(orbit_enumerate(m, 10, unsigned(state.range(0))));
}
BENCHMARK(BM_OrbitWorkers)->Arg(1)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_LimitSetSvg(benchmark::State& state) {
    for (auto _ : state) {
        auto flags = limit_set_flags(Rational(3, 10), Rational(2, 5), int(state.range(0)));
        std::vector<tools::ChartFlag> chart;
        for (const auto& f : flags) chart.push_back({to_double(f.flag.point.v), to_double(f.flag.line.v)});
        std::ostringstream out;
        tools::write_svg(chart, 4.0, out);
        benchmark::DoNotOptimize(out.str().size());
    }
}
BENCHMARK(BM_LimitSetSvg)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_BuildPattern(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_pattern(Rational(3, 10), Rational(2, 5), int(state.range(0))));
}
BENCHMARK(BM_BuildPattern)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_PrismOfTriangle(benchmark::State& state) {
    const auto m = box_from_invariant(Rational(3, 10), Rational(2, 5));
    for (auto _ : state) benchmark::DoNotOptimize(prism_of_triangle(m));
}
BENCHMARK(BM_PrismOfTriangle)->Unit(benchmark::kMicrosecond);

void BM_MetricDistance(benchmark::State& state) {
    XPoint a(Mat3d{{{2, 0.3, 0.1}, {0.3, 1, -0.2}, {0.1, -0.2, 0.8}}});
    XPoint b(Mat3d{{{0.5, 0.1, 0}, {0.1, 3, 0.4}, {0, 0.4, 1}}});
    for (auto _ : state) benchmark::DoNotOptimize(metric_d(a, b));
}
BENCHMARK(BM_MetricDistance);

void BM_JacobiEigen(benchmark::State& state) {
    const Mat3d m{{{4, 1, -2}, {1, 3, 0.5}, {-2, 0.5, 1}}};
    for (auto _ : state) benchmark::DoNotOptimize(jacobi_eigen(m));
}
BENCHMARK(BM_JacobiEigen);

void BM_MinDistanceFlats(benchmark::State& state) {
    auto p = build_pattern(Rational(3, 10), Rational(2, 5), 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(min_distance_flats(p.geodesics[1].flat, p.geodesics[6].flat, 3.0, int(state.range(0))));
}
BENCHMARK(BM_MinDistanceFlats)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
