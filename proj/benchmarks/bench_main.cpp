#include <benchmark/benchmark.h>

#include "valbis/expr.hpp"
#include "valbis/extremum.hpp"
#include "valbis/interval.hpp"
#include "valbis/oracle.hpp"
#include "valbis/rootfind.hpp"

namespace {

const char kStepText[] = "piecewise(x<=-1: x+5; x<0: 4; else: 3)";

void BM_Parse(benchmark::State& state) {
    for (auto _ : state) {
        valbis::Expr e = valbis::parse(kStepText);
        benchmark::DoNotOptimize(e);
    }
}
BENCHMARK(BM_Parse);

void BM_Eval(benchmark::State& state) {
    valbis::Expr f = valbis::parse("-(x-0.5)^2+1");
    for (auto _ : state) {
        double v = valbis::eval(f, 0.3);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_Eval);

void BM_EvalInterval(benchmark::State& state) {
    valbis::Expr f = valbis::parse(kStepText);
    valbis::Interval box{-4.0, 1.0};
    for (auto _ : state) {
        valbis::RangeEnclosure enc = valbis::eval_interval(f, box);
        benchmark::DoNotOptimize(enc);
    }
}
BENCHMARK(BM_EvalInterval);

void BM_OracleCertified(benchmark::State& state) {
    valbis::Expr f = valbis::parse("-(x-0.5)^2+1");
    valbis::OracleConfig cfg;
    cfg.kind = valbis::OracleKind::Certified;
    for (auto _ : state) {
        valbis::OracleVerdict v =
            valbis::decide_reachable_certified(f, {0.0, 1.0}, 0.9, cfg);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_OracleCertified);

void BM_Maximize(benchmark::State& state) {
    valbis::Expr f = valbis::parse("-(x-0.5)^2+1");
    valbis::SolverConfig cfg;
    for (auto _ : state) {
        valbis::ExtremumReport rep =
            valbis::maximize(f, {0.0, 1.0}, valbis::ValueBracket{0.75, 2.0}, cfg);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_Maximize);

void BM_BisectRoot(benchmark::State& state) {
    valbis::Expr f = valbis::parse("exp(x)-4*x");
    for (auto _ : state) {
        valbis::RootResult r = valbis::bisect_root(f, 0.0, 1.0, 1e-12);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_BisectRoot);

}  // namespace

BENCHMARK_MAIN();
