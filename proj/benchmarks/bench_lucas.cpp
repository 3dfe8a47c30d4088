#include <benchmark/benchmark.h>

#include <numeric>
#include <random>
#include <vector>

#include "lucasgcd/lucas.hpp"

using namespace lucasgcd;

namespace {

const LucasParams& fib() {
  static LucasParams P = make_params(1, 1);
  return P;
}

const PrimeSieve& big_sieve() {
  static PrimeSieve s(1000000);
  return s;
}

std::vector<std::pair<u64, u64>> random_inputs(size_t count, u64 n_max, u64 m_max) {
  std::mt19937_64 rng(42);
  std::vector<std::pair<u64, u64>> v(count);
  for (auto& [n, m] : v) {
    n = rng() % n_max + 1;
    m = rng() % (m_max - 2) + 2;
  }
  return v;
}

}  // namespace

static void BM_doubling_ladder(benchmark::State& state) {
  auto inputs = random_inputs(256, (u64)state.range(0), 1000000007);
  size_t i = 0;
  for (auto _ : state) {
    auto [n, m] = inputs[i++ & 255];
    benchmark::DoNotOptimize(lucas_pair_mod(fib(), n, m));
  }
}
BENCHMARK(BM_doubling_ladder)->Arg(1 << 10)->Arg(1 << 20)->Arg(1 << 30)->Arg(i64(1) << 50);

static void BM_g_single(benchmark::State& state) {
  i64 n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(g(fib(), n));
    n++;  // walk to defeat value-specific luck
  }
}
BENCHMARK(BM_g_single)->Arg(10000)->Arg(1000000)->Arg(1000000000);

static void BM_rank_table_build(benchmark::State& state) {
  const i64 limit = state.range(0);
  const auto& s = big_sieve();
  for (auto _ : state) {
    RankTable cache;
    i64 acc = 0;
    for (i64 m = 1; m <= limit; m++)
      if (std::gcd(m, fib().a2) == 1) acc += rank(fib(), m, cache, &s);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * limit);
}
BENCHMARK(BM_rank_table_build)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_ell_cached(benchmark::State& state) {
  const auto& s = big_sieve();
  RankTable cache;
  for (i64 m = 1; m <= 100000; m++) (void)ell(fib(), m, cache, &s);
  std::mt19937_64 rng(7);
  for (auto _ : state) {
    i64 m = (i64)(rng() % 100000) + 1;
    benchmark::DoNotOptimize(ell(fib(), m, cache, &s));
  }
}
BENCHMARK(BM_ell_cached);

BENCHMARK_MAIN();
