#include <benchmark/benchmark.h>

#include "lucasgcd/constants.hpp"
#include "lucasgcd/moments.hpp"
#include "lucasgcd/rho.hpp"

using namespace lucasgcd;

namespace {

const LucasParams& fib() {
  static LucasParams P = make_params(1, 1);
  return P;
}

const PrimeSieve& big_sieve() {
  static PrimeSieve s(10000000);
  return s;
}

}  // namespace

static void BM_sieve_build(benchmark::State& state) {
  for (auto _ : state) {
    PrimeSieve s(state.range(0));
    benchmark::DoNotOptimize(s.limit());
  }
}
BENCHMARK(BM_sieve_build)->Arg(100000)->Arg(1000000)->Arg(10000000)->Unit(benchmark::kMillisecond);

static void BM_moment_direct(benchmark::State& state) {
  const auto& s = big_sieve();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        moment_direct(fib(), s, 1, state.range(0), Domain::shifted_primes));
  state.SetItemsProcessed(state.iterations() * pi(s, state.range(0)));
}
BENCHMARK(BM_moment_direct)->Arg(10000)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_moment_identity(benchmark::State& state) {
  const auto& s = big_sieve();
  for (auto _ : state) {
    RankTable cache;  // cold cache: measures the full identity evaluation
    benchmark::DoNotOptimize(
        moment_via_identity(fib(), s, cache, (int)state.range(1), state.range(0)));
  }
}
BENCHMARK(BM_moment_identity)
    ->Args({10000, 1})
    ->Args({100000, 1})
    ->Args({100000, 3})
    ->Unit(benchmark::kMillisecond);

static void BM_rho_dp(benchmark::State& state) {
  const auto& s = big_sieve();
  RhoContext ctx((int)state.range(0));
  for (auto _ : state) {
    double acc = 0;
    for (i64 n = 2; n <= 100000; n++) acc += rho(ctx, s.factorize(n));
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_rho_dp)->Arg(1)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_constant_series(benchmark::State& state) {
  const auto& s = big_sieve();
  for (auto _ : state) {
    RankTable cache;
    benchmark::DoNotOptimize(
        constant_series(fib(), s, cache, 1, state.range(0), ConstantKind::P));
  }
}
BENCHMARK(BM_constant_series)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
