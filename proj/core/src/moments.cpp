#include "lucasgcd/moments.hpp"

#include <cmath>
#include <numeric>

namespace lucasgcd {

namespace {

double log_pow(double v, int lambda) {
  double lg = std::log(v);
  double r = 1.0;
  for (int k = 0; k < lambda; ++k) r *= lg;
  return r;
}

void check_lambda_x(int lambda, i64 x, const PrimeSieve& s) {
  if (lambda < 1 || lambda > RhoContext::max_lambda)
    fail(lambda > RhoContext::max_lambda ? errc::lambda_too_large : errc::invalid_input,
         "lambda must be in [1, 20]");
  if (x < 1) fail(errc::invalid_input, "x must be >= 1");
  if (x > s.limit()) fail(errc::out_of_range, "x beyond sieve limit");
}

// Shared shape of both identity sums: rho_lambda(d) * count(ell(d)).
template <class CountFn>
double identity_sum(const LucasParams& P, const PrimeSieve& s, RankTable& cache, int lambda, i64 x,
                    int threads, i64 ell_cap, CountFn count) {
  RhoContext ctx(lambda);
  return chunked_sum(2, x + 1, default_chunk, threads, [&](i64 lo, i64 hi) {
    kahan_sum part;
    FactoredInt f;
    for (i64 d = lo; d < hi; ++d) {
      s.factorize_into(d, f);
      if (f.omega() > lambda) continue;
      if (std::gcd(d, P.a2) != 1) continue;
      i64 L = ell_factored(P, f, cache, &s);
      if (L > ell_cap) continue;
      part.add(rho(ctx, f) * (double)count(L));
    }
    return part.sum;
  });
}

}  // namespace

double moment_direct(const LucasParams& P, const PrimeSieve& s, int lambda, i64 x, Domain dom,
                     int threads) {
  check_lambda_x(lambda, x, s);
  if (dom == Domain::all_integers) {
    return chunked_sum(1, x + 1, default_chunk, threads, [&](i64 lo, i64 hi) {
      kahan_sum part;
      for (i64 n = lo; n < hi; ++n) part.add(log_pow((double)g(P, n), lambda));
      return part.sum;
    });
  }
  return chunked_sum(2, x + 1, default_chunk, threads, [&](i64 lo, i64 hi) {
    kahan_sum part;
    for (i64 p = lo; p < hi; ++p)
      if (s.prime_bit(p)) part.add(log_pow((double)g(P, p - 1), lambda));
    return part.sum;
  });
}

double moment_via_identity(const LucasParams& P, const PrimeSieve& s, RankTable& cache, int lambda,
                           i64 x, int threads) {
  check_lambda_x(lambda, x, s);
  return identity_sum(P, s, cache, lambda, x, threads, x - 1,
                      [&](i64 L) { return pi_progression(s, x, L, 1); });
}

double moment_via_identity_integers(const LucasParams& P, const PrimeSieve& s, RankTable& cache,
                                    int lambda, i64 x, int threads) {
  check_lambda_x(lambda, x, s);
  return identity_sum(P, s, cache, lambda, x, threads, x, [&](i64 L) { return x / L; });
}

double pointwise_identity(const LucasParams& P, RankTable& cache, int lambda, i64 n) {
  if (lambda < 1 || lambda > RhoContext::max_lambda)
    fail(lambda > RhoContext::max_lambda ? errc::lambda_too_large : errc::invalid_input,
         "lambda must be in [1, 20]");
  if (n < 1) fail(errc::invalid_input, "n must be >= 1");
  RhoContext ctx(lambda);
  FactoredInt f = factorize_trial(n);

  kahan_sum sum;
  FactoredInt d;
  auto dfs = [&](auto&& self, size_t idx) -> void {
    if (idx == f.factors.size()) {
      if (d.n < 2 || std::gcd(d.n, P.a2) != 1) return;
      if (n % ell_factored(P, d, cache, nullptr) == 0) sum.add(rho(ctx, d));
      return;
    }
    auto [q, h] = f.factors[idx];
    self(self, idx + 1);
    i64 saved = d.n;
    d.factors.emplace_back(q, 0);
    i64 pw = 1;
    for (int e = 1; e <= h; ++e) {
      pw *= q;
      d.factors.back().second = e;
      d.n = saved * pw;
      self(self, idx + 1);
    }
    d.factors.pop_back();
    d.n = saved;
  };
  dfs(dfs, 0);
  return sum.sum;
}

std::vector<MomentReport> moment_table(const LucasParams& P, const PrimeSieve& s, RankTable& cache,
                                       int lambda, std::span<const i64> grid, Domain dom,
                                       int threads) {
  std::vector<MomentReport> rows;
  rows.reserve(grid.size());
  for (i64 x : grid) {
    MomentReport r;
    r.x = x;
    r.lambda = lambda;
    r.direct_sum = moment_direct(P, s, lambda, x, dom, threads);
    r.identity_sum = dom == Domain::shifted_primes
                         ? moment_via_identity(P, s, cache, lambda, x, threads)
                         : moment_via_identity_integers(P, s, cache, lambda, x, threads);
    r.normalizer = dom == Domain::shifted_primes ? (double)pi(s, x) : (double)x;
    r.ratio = r.normalizer > 0 ? r.direct_sum / r.normalizer : 0.0;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace lucasgcd
