#include <benchmark/benchmark.h>

#include "projforce/enumerate.hpp"
#include "projforce/oracle.hpp"

using namespace projforce;

namespace {

void BM_BuildIncidence(benchmark::State& state) {
    const int q = static_cast<int>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    Field f(q);
    for (auto _ : state) {
        IncidenceSystem sys(f, k);
        benchmark::DoNotOptimize(sys.row_weight());
    }
}
BENCHMARK(BM_BuildIncidence)->Args({2, 3})->Args({2, 5})->Args({3, 3})->Args({5, 3});

void BM_ApplyInverse(benchmark::State& state) {
    Field f(2);
    IncidenceSystem sys(f, static_cast<int>(state.range(0)));
    std::vector<long long> v(static_cast<std::size_t>(sys.n_points()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<long long>(i % 7);
    for (auto _ : state) {
        auto r = sys.apply_inverse(v);
        benchmark::DoNotOptimize(r.first.data());
    }
}
BENCHMARK(BM_ApplyInverse)->Arg(3)->Arg(5)->Arg(7);

void BM_DecideForcingSearch(benchmark::State& state) {
    Field f(2);
    IncidenceSystem sys(f, 3);
    const WeightChangeMultiset s = {2, 2, 2, 3, 5, 5, 5};
    for (auto _ : state) {
        auto v = decide(sys, s);
        benchmark::DoNotOptimize(v.stats.nodes);
    }
}
BENCHMARK(BM_DecideForcingSearch);

void BM_DecideWitnessHunt(benchmark::State& state) {
    Field f(2);
    IncidenceSystem sys(f, 3);
    const WeightChangeMultiset s = {2, 2, 2, 2, 4, 4, 4};
    for (auto _ : state) {
        auto v = decide(sys, s);
        benchmark::DoNotOptimize(v.witness.has_value());
    }
}
BENCHMARK(BM_DecideWitnessHunt);

void BM_Bruteforce(benchmark::State& state) {
    Field f(2);
    for (auto _ : state) {
        auto v = decide_bruteforce(f, 3, {2, 2, 2, 3, 5, 5, 5});
        benchmark::DoNotOptimize(v.stats.arrangements);
    }
}
BENCHMARK(BM_Bruteforce);

void BM_SmallSurvey(benchmark::State& state) {
    SurveySpec spec;
    spec.q = 2;
    spec.k = 3;
    spec.min_entry = 1;
    spec.max_entry = 4;
    for (auto _ : state) {
        auto r = survey(spec);
        benchmark::DoNotOptimize(r.counts.total);
    }
}
BENCHMARK(BM_SmallSurvey);

} // namespace

BENCHMARK_MAIN();
