#include <benchmark/benchmark.h>

#include <random>

#include "normgeom/reduction.hpp"

using namespace normgeom;

namespace {

std::mt19937_64 rng(12345);

Mat<Rat> random_gram(int d) {
    Mat<Rat> b(d, d, Rat(0));
    for (auto& x : b.a) x = Rat(static_cast<long>(rng() % 11) - 5);
    Mat<Rat> g = mat_mul(mat_transpose(b), b);
    for (int i = 0; i < d; ++i) g.at(i, i) += 1;
    return g;
}

Mat<double> random_real(int d) {
    Mat<double> m(d, d, 0.0);
    std::normal_distribution<double> nd(0, 2);
    do {
        for (auto& x : m.a) x = nd(rng);
    } while (std::fabs(mat_det(m)) < 0.1);
    return m;
}

NormRep<PadicCtx> random_padic_norm(const PadicCtx& ctx, int d) {
    NormRep<PadicCtx> mu;
    mu.ctx = ctx;
    Mat<Rat> b(d, d, Rat(0));
    do {
        for (auto& x : b.a) x = make_rat(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 3));
    } while (FieldOps<Rat>::is_zero(mat_det(b)));
    mu.basis = std::move(b);
    for (int i = 0; i < d; ++i)
        mu.weights.push_back(PosReal::from_rat(make_rat(1 + static_cast<long>(rng() % 9), 1 + static_cast<long>(rng() % 4))));
    return mu;
}

void bm_iwasawa_real(benchmark::State& state) {
    RealCtx ctx;
    auto g = random_real(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(iwasawa(ctx, g));
}
BENCHMARK(bm_iwasawa_real)->Arg(3)->Arg(4);

void bm_iwasawa_padic(benchmark::State& state) {
    PadicCtx ctx{3};
    auto mu = random_padic_norm(ctx, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(iwasawa(ctx, mu.basis));
}
BENCHMARK(bm_iwasawa_padic)->Arg(3)->Arg(4);

void bm_chart_section_padic(benchmark::State& state) {
    PadicCtx ctx{3};
    auto mu = random_padic_norm(ctx, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(chart_section(mu));
}
BENCHMARK(bm_chart_section_padic)->Arg(2)->Arg(3)->Arg(4);

void bm_class_eq_padic(benchmark::State& state) {
    PadicCtx ctx{5};
    auto mu = random_padic_norm(ctx, 3);
    auto nu = mu;
    for (auto& w : nu.weights) w = w.mul(PosReal::from_int(7));
    for (auto _ : state) benchmark::DoNotOptimize(class_eq(mu, nu));
}
BENCHMARK(bm_class_eq_padic);

void bm_induce_subquotient(benchmark::State& state) {
    PadicCtx ctx{2};
    auto mu = random_padic_norm(ctx, 3);
    auto hp = Subspace<Rat>::full(3, Rat(0));
    auto hpp = Subspace<Rat>::leading(3, 1, Rat(0));
    for (auto _ : state) benchmark::DoNotOptimize(induce_subquotient(mu, hp, hpp));
}
BENCHMARK(bm_induce_subquotient);

void bm_reduce_point(benchmark::State& state) {
    auto gram = random_gram(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(reduce_point(gram));
}
BENCHMARK(bm_reduce_point)->Arg(2)->Arg(3)->Arg(4);

void bm_apartment_cover_vertex(benchmark::State& state) {
    std::vector<Rat> u(static_cast<std::size_t>(state.range(0)), Rat(0));
    for (auto _ : state) benchmark::DoNotOptimize(apartment_cover(u));
}
BENCHMARK(bm_apartment_cover_vertex)->Arg(2)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
