#include <benchmark/benchmark.h>

#include "fqflats/flats.hpp"
#include "fqflats/gf.hpp"
#include "fqflats/incidence.hpp"
#include "fqflats/richness.hpp"
#include "fqflats/sampling.hpp"
#include "fqflats/spectral.hpp"

namespace {

using namespace fqflats;

void bm_enumerate_flats(benchmark::State& state) {
    const Field f(static_cast<int>(state.range(0)));
    const int d = static_cast<int>(state.range(1));
    const int k = static_cast<int>(state.range(2));
    for (auto _ : state) {
        long long n = 0;
        for_each_flat(f, d, k, [&](Flat&& fl) {
            benchmark::DoNotOptimize(fl);
            ++n;
        });
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(bm_enumerate_flats)->Args({3, 4, 1})->Args({5, 3, 1})->Args({9, 3, 1});

void bm_build_graph(benchmark::State& state) {
    const Field f(static_cast<int>(state.range(0)));
    const int d = static_cast<int>(state.range(1));
    const int k = static_cast<int>(state.range(2));
    const int h = static_cast<int>(state.range(3));
    for (auto _ : state) {
        auto g = build_graph(f, d, k, h);
        benchmark::DoNotOptimize(g.edge_count());
    }
}
BENCHMARK(bm_build_graph)->Args({3, 3, 0, 2})->Args({3, 4, 1, 3})->Args({5, 3, 0, 1});

void bm_pair_rank(benchmark::State& state) {
    const Field f(3);
    const auto flats = enumerate_flats(f, 4, 1);
    SampleStream rng(7);
    for (auto _ : state) {
        const auto i = rng.below(flats.size());
        auto j = rng.below(flats.size());
        if (j == i) j = (j + 1) % flats.size();
        benchmark::DoNotOptimize(pair_rank(flats[i], flats[j]));
    }
}
BENCHMARK(bm_pair_rank);

void bm_gram(benchmark::State& state) {
    const Field f(3);
    const auto g = build_graph(f, 3, 0, 1);
    for (auto _ : state) {
        auto m = gram_of_side(g, Side::A);
        benchmark::DoNotOptimize(m.data.data());
    }
}
BENCHMARK(bm_gram);

void bm_spectrum(benchmark::State& state) {
    const Field f(3);
    const auto g = build_graph(f, 4, 1, 3);
    for (auto _ : state) {
        auto sp = graph_spectrum(g);
        benchmark::DoNotOptimize(sp.lambda3);
    }
}
BENCHMARK(bm_spectrum);

void bm_mixing_audit(benchmark::State& state) {
    const Field f(3);
    const auto g = build_graph(f, 4, 1, 3);
    const auto sp = graph_spectrum(g);
    SampleStream rng(11);
    const auto x = rng.subset(g.size_a(), g.size_a() / 2);
    const auto y = rng.subset(g.size_b(), g.size_b() / 2);
    for (auto _ : state) {
        auto m = mixing_audit(g, x, y, sp);
        benchmark::DoNotOptimize(m.deviation);
    }
}
BENCHMARK(bm_mixing_audit);

void bm_rich_objects(benchmark::State& state) {
    const Field f(3);
    const auto g = build_graph(f, 4, 1, 3);
    SampleStream rng(13);
    const auto s = rng.subset(g.size_b(), g.size_b() / 2);
    for (auto _ : state) {
        auto r = rich_objects(g, Side::B, s, 2);
        benchmark::DoNotOptimize(r.size());
    }
}
BENCHMARK(bm_rich_objects);

} // namespace

BENCHMARK_MAIN();
