#include <benchmark/benchmark.h>

#include "qfac/defect.hpp"
#include "qfac/quartic.hpp"
#include "qfac/rng.hpp"
#include "qfac/scan.hpp"
#include "qfac/surfgeo.hpp"

using namespace qfac;

namespace {

MultiPoly random_form(const Field& f, std::size_t nvars, std::size_t d, Rng& rng) {
    auto mons = monomial_basis(nvars, d);
    MultiPoly g(f, nvars, (long)d);
    for (const auto& e : mons) g.add_term(e, FieldScalar(f, (long long)rng.uniform(f.p())));
    return g;
}

PointConfig random_config(const Field& f, std::size_t count, Rng& rng) {
    std::vector<ProjPoint> pts;
    while (pts.size() < count) {
        std::vector<FieldScalar> v;
        for (std::size_t i = 0; i < 5; ++i) v.emplace_back(f, (long long)rng.uniform(f.p()));
        bool zero = true;
        for (const auto& c : v) zero = zero && c.is_zero();
        if (zero) continue;
        ProjPoint p(std::move(v));
        bool dup = false;
        for (const auto& q : pts) dup = dup || q == p;
        if (!dup) pts.push_back(std::move(p));
    }
    return PointConfig(f, 4, std::move(pts));
}

void BM_rank_gf101(benchmark::State& state) {
    Field f = Field::gf(101);
    Rng rng(1);
    ExactMatrix m(f, 12, 35);
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = 0; j < 35; ++j)
            m.set(i, j, FieldScalar(f, (long long)rng.uniform(101)));
    for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_rank_gf101);

void BM_rank_rational(benchmark::State& state) {
    Field f = Field::rationals();
    Rng rng(2);
    ExactMatrix m(f, 10, 20);
    for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t j = 0; j < 20; ++j)
            m.set(i, j, FieldScalar(f, (long long)rng.uniform(19) - 9));
    for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_rank_rational);

void BM_quartic_eval(benchmark::State& state) {
    Field f = Field::gf(101);
    Rng rng(3);
    MultiPoly g = random_form(f, 5, 4, rng);
    std::vector<FieldScalar> x;
    for (int i = 0; i < 5; ++i) x.emplace_back(f, (long long)rng.uniform(101));
    for (auto _ : state) benchmark::DoNotOptimize(g.eval(x));
}
BENCHMARK(BM_quartic_eval);

void BM_defect_12_nodes(benchmark::State& state) {
    Field f = Field::gf(101);
    Rng rng(4);
    PointConfig cfg = random_config(f, 12, rng);
    for (auto _ : state) benchmark::DoNotOptimize(defect_of_points(cfg, 3));
}
BENCHMARK(BM_defect_12_nodes);

void BM_singular_scan_gf11(benchmark::State& state) {
    Field f = Field::gf(11);
    Rng rng(5);
    MultiPoly g = random_form(f, 5, 4, rng);
    for (auto _ : state) benchmark::DoNotOptimize(singular_points_enumerate(g));
}
BENCHMARK(BM_singular_scan_gf11)->Unit(benchmark::kMillisecond);

void BM_p3_quadric_scan_gf121(benchmark::State& state) {
    Field ext = Field::gf(11, 2);
    Field base = Field::gf(11);
    Rng rng(6);
    FieldEmbedding emb(base, ext);
    MultiPoly a = random_form(base, 4, 2, rng);
    MultiPoly b = random_form(base, 4, 2, rng);
    scan::FPoly fa = scan::FPoly::embedded(a, emb);
    scan::FPoly fb = scan::FPoly::embedded(b, emb);
    for (auto _ : state)
        benchmark::DoNotOptimize(scan::p3_quadric_scan(ext.ctx(), fa, {fb}, 1u << 30));
}
BENCHMARK(BM_p3_quadric_scan_gf121)->Unit(benchmark::kMillisecond);

void BM_bese_bound_tables(benchmark::State& state) {
    for (auto _ : state) {
        long long acc = 0;
        for (long long x = 0; x <= 5; ++x)
            for (long long y = 0; y <= 5; ++y)
                if (x || y) acc += condition_iii_bound(2, {2, 3, 6}, {2, x, y});
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_bese_bound_tables);

void BM_generate_example_p11(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(generate_example(1, 11));
}
BENCHMARK(BM_generate_example_p11)->Unit(benchmark::kSecond)->Iterations(1);

} // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    benchmark::RunSpecifiedBenchmarks();
    return 0;
}
