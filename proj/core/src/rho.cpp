#include "lucasgcd/rho.hpp"

#include <cmath>
#include <numeric>

namespace lucasgcd {

RhoContext::RhoContext(int lambda) : lambda_(lambda) {
  if (lambda < 1) fail(errc::invalid_input, "lambda must be >= 1");
  if (lambda > max_lambda) fail(errc::lambda_too_large, "lambda capped at 20");
  u64 f = 1;
  fact_[0] = 1.0;
  for (int k = 1; k <= max_lambda; ++k) {
    f *= (u64)k;
    fact_[(size_t)k] = (double)f;
  }
}

double rho(const RhoContext& ctx, const FactoredInt& f) {
  int lambda = ctx.lambda();
  int s = f.omega();
  if (f.n == 1 || s > lambda) return 0.0;

  // dp[w] = sum over assignments of positive exponents totalling w to the
  // factors seen so far of the product of their per-factor terms.
  double dp[RhoContext::max_lambda + 1] = {0};
  double nxt[RhoContext::max_lambda + 1];
  dp[0] = 1.0;
  for (auto [q, h] : f.factors) {
    double lq = std::log((double)q);
    double term[RhoContext::max_lambda + 1];
    double hk = 1.0, hk1 = 1.0, lqk = 1.0;  // h^k, (h-1)^k, (log q)^k
    for (int k = 1; k <= lambda; ++k) {
      hk *= (double)h;
      hk1 *= (double)(h - 1);
      lqk *= lq;
      term[k] = (hk - hk1) * lqk / ctx.factorial(k);
    }
    for (int w = 0; w <= lambda; ++w) {
      double acc = 0.0;
      for (int k = 1; k <= w; ++k) acc += dp[w - k] * term[k];
      nxt[w] = acc;
    }
    for (int w = 0; w <= lambda; ++w) dp[w] = nxt[w];
  }
  return ctx.factorial(lambda) * dp[lambda];
}

double rho_oracle(int lambda, i64 n, const PrimeSieve& sieve) {
  if (lambda < 1 || lambda > 4) fail(errc::oracle_too_large, "oracle handles lambda in [1, 4]");
  if (n < 1 || n > 10'000) fail(errc::oracle_too_large, "oracle handles n <= 10^4");
  if (n == 1) return 0.0;

  FactoredInt f = sieve.factorize(n);
  struct Cand {
    i64 value;
    double log_q;
  };
  std::vector<Cand> cands;
  for (auto [q, h] : f.factors) {
    i64 pw = 1;
    for (int e = 1; e <= h; ++e) {
      pw *= q;
      cands.push_back({pw, std::log((double)q)});
    }
  }

  // Ordered tuples; the lcm is tracked numerically, independent of the
  // composition bookkeeping the DP uses.
  double total = 0.0;
  auto walk = [&](auto&& self, int slot, i64 lcm_so_far, double log_prod) -> void {
    if (slot == lambda) {
      if (lcm_so_far == n) total += log_prod;
      return;
    }
    for (const Cand& c : cands) self(self, slot + 1, std::lcm(lcm_so_far, c.value), log_prod * c.log_q);
  };
  walk(walk, 0, 1, 1.0);
  return total;
}

}  // namespace lucasgcd
