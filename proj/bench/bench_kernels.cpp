// Serial vs parallel timings of the OpenMP kernels. Arg 0 is the serial
// reference, 1 the parallel path.

#include "turan/construct.hpp"
#include "turan/density.hpp"
#include "turan/hypergraph.hpp"
#include "turan/palette.hpp"
#include "turan/quasirandom.hpp"
#include "turan/reduced.hpp"

#include <benchmark/benchmark.h>

using namespace turan;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::parallel : Exec::serial; }

void BM_BuildH(benchmark::State& s)
{
    const auto p = builtin("roedl").palette;
    const auto phi = random_pair_coloring(400, p.base(), 1);
    for (auto _ : s)
        benchmark::DoNotOptimize(build_H(phi, p, exec_of(s)));
}
BENCHMARK(BM_BuildH)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FindEmbedding(benchmark::State& s)
{
    // K4 is absent, so the whole search tree is walked
    const auto h = roedl_hypergraph(60, 2);
    const auto f = clique(4);
    for (auto _ : s)
        benchmark::DoNotOptimize(find_embedding(f, h, exec_of(s)));
}
BENCHMARK(BM_FindEmbedding)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Representable(benchmark::State& s)
{
    const auto p = builtin("ee6").palette;
    const auto f = clique(6);
    SearchOptions o;
    o.exec = exec_of(s);
    for (auto _ : s)
        benchmark::DoNotOptimize(representable(f, p, std::nullopt, o));
}
BENCHMARK(BM_Representable)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_UniformAuditExact(benchmark::State& s)
{
    const auto h = tournament_hypergraph(18, 0);
    AuditOptions o;
    o.exec = exec_of(s);
    for (auto _ : s)
        benchmark::DoNotOptimize(audit_uniform_dense(h, Rational(1, 4), Rational(1, 10), o));
}
BENCHMARK(BM_UniformAuditExact)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CheckDenseEe(benchmark::State& s)
{
    const auto a = random_reduced(12, 8, Rational(1, 2), 3);
    for (auto _ : s)
        benchmark::DoNotOptimize(check_dense(a, Notion::ee, Rational(1, 4), exec_of(s)));
}
BENCHMARK(BM_CheckDenseEe)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_QuasirandomExact(benchmark::State& s)
{
    const auto g = random_bipartite(14, 40, Rational(1, 2), 4);
    QuasirandomOptions o;
    o.exec = exec_of(s);
    for (auto _ : s)
        benchmark::DoNotOptimize(audit_quasirandom(g, Rational(1, 5), Rational(1, 2), o));
}
BENCHMARK(BM_QuasirandomExact)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
