#include "lucasgcd/lucas.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace lucasgcd {

namespace {

constexpr i64 coeff_cap = 1'000'000;

u64 reduce_coeff(i64 v, u64 m) {
  i64 r = v % (i64)m;
  if (r < 0) r += (i64)m;
  return (u64)r;
}

i64 u_mod(const LucasParams& P, u64 n, u64 m) { return (i64)lucas_pair_mod(P, n, m).first; }

}  // namespace

LucasParams make_params(i64 a1, i64 a2) {
  if (std::abs(a1) > coeff_cap || std::abs(a2) > coeff_cap)
    fail(errc::invalid_input, "|a1|, |a2| capped at 10^6");
  if (a2 == 0) fail(errc::degenerate, "a2 = 0");
  if (std::gcd(a1, a2) != 1) fail(errc::not_coprime, "gcd(a1, a2) != 1");
  i64 delta = a1 * a1 + 4 * a2;
  if (delta == 0) fail(errc::degenerate, "discriminant is zero");
  i128 um = 0, u = 1;  // u_0, u_1
  for (int k = 1; k <= 6; ++k) {
    if (u == 0) fail(errc::degenerate, "u_k = 0 for some k <= 6");
    i128 next = (i128)a1 * u + (i128)a2 * um;
    um = u;
    u = next;
  }
  return LucasParams{a1, a2, delta};
}

std::pair<u64, u64> lucas_pair_mod(const LucasParams& P, u64 n, u64 m) {
  if (m < 1 || m > max_modulus) fail(errc::out_of_range, "modulus must be in [1, 2^62]");
  u64 a1 = reduce_coeff(P.a1, m), a2 = reduce_coeff(P.a2, m);
  u64 a = 0, b = 1 % m;  // (u_k, u_{k+1}), k = 0
  if (n == 0) return {a, b};
  int top = 63 - std::countl_zero(n);
  for (int i = top; i >= 0; --i) {
    u64 t = submod(addmod(b, b, m), mulmod(a1, a, m), m);
    u64 even = mulmod(a, t, m);                                        // u_{2k}
    u64 odd = addmod(mulmod(b, b, m), mulmod(a2, mulmod(a, a, m), m), m);  // u_{2k+1}
    if ((n >> i) & 1) {
      a = odd;
      b = addmod(mulmod(a1, odd, m), mulmod(a2, even, m), m);
    } else {
      a = even;
      b = odd;
    }
  }
  return {a, b};
}

i64 g(const LucasParams& P, i64 n) {
  if (n < 1) fail(errc::invalid_input, "g needs n >= 1");
  u64 un = lucas_pair_mod(P, (u64)n, (u64)n).first;
  return std::gcd((i64)un, n);  // gcd(0, n) = n covers n | u_n
}

i64 rank_prime(const LucasParams& P, i64 p, const PrimeSieve* sieve) {
  if (p < 2) fail(errc::invalid_input, "rank_prime needs p >= 2");
  if (std::abs(P.a2) % p == 0) fail(errc::not_coprime_to_a2, "p divides a2");

  if (p == 2 || P.delta % p == 0) {
    // Linear scan; z(p) <= 2p holds unconditionally, so running past it means the
    // input was not a prime of this sequence.
    u64 m = (u64)p;
    u64 a1 = reduce_coeff(P.a1, m), a2 = reduce_coeff(P.a2, m);
    u64 prev = 0, cur = 1 % m;  // u_0, u_1
    for (i64 k = 1; k <= 2 * p; ++k) {
      if (cur == 0) return k;
      u64 next = addmod(mulmod(a1, cur, m), mulmod(a2, prev, m), m);
      prev = cur;
      cur = next;
    }
    fail(errc::invalid_prime, "rank scan exceeded 2p; p is not prime");
  }

  i64 M = p - legendre(P.delta, p);
  if (u_mod(P, (u64)M, (u64)p) != 0)
    fail(errc::invalid_prime, "u_{p-(delta|p)} not divisible; p is not prime");

  FactoredInt f;
  if (sieve && M <= sieve->limit())
    sieve->factorize_into(M, f);
  else
    f = factorize_trial(M);

  // Zeros of u mod p are exactly the multiples of z(p), so peeling prime
  // factors off M while divisibility survives lands on the least divisor.
  i64 z = M;
  for (auto [r, e] : f.factors) {
    for (int t = 0; t < e; ++t) {
      if (z % r != 0) break;
      i64 cand = z / r;
      if (u_mod(P, (u64)cand, (u64)p) != 0) break;
      z = cand;
    }
  }
  return z;
}

void RankTable::bind(const LucasParams& P) {
  {
    std::shared_lock lk(mu_);
    if (bound_) {
      if (P.a1 != a1_ || P.a2 != a2_)
        fail(errc::invalid_input, "rank table already bound to a different sequence");
      return;
    }
  }
  std::unique_lock lk(mu_);
  if (!bound_) {
    a1_ = P.a1;
    a2_ = P.a2;
    bound_ = true;
  } else if (P.a1 != a1_ || P.a2 != a2_) {
    fail(errc::invalid_input, "rank table already bound to a different sequence");
  }
}

i64 rank_prime_power(const LucasParams& P, i64 p, int j, RankTable& cache,
                     const PrimeSieve* sieve) {
  if (j < 1) fail(errc::invalid_input, "rank_prime_power needs j >= 1");
  cache.bind(P);
  if (auto hit = cache.lookup(p, j)) return *hit;

  i64 z;
  if (auto hit = cache.lookup(p, 1)) {
    z = *hit;
  } else {
    z = rank_prime(P, p, sieve);
    cache.store(p, 1, z);
  }

  u64 pk = (u64)p;
  for (int i = 2; i <= j; ++i) {
    if (pk > max_modulus / (u64)p) fail(errc::out_of_range, "p^j exceeds the modulus cap");
    pk *= (u64)p;
    if (auto hit = cache.lookup(p, i)) {
      z = *hit;
      continue;
    }
    if (u_mod(P, (u64)z, pk) != 0) {
      // Law of repetition, verified rather than assumed: the lift must land.
      if ((u128)z * (u128)p > (u128)max_modulus)
        fail(errc::out_of_range, "rank lift exceeds 2^62");
      z *= p;
      if (u_mod(P, (u64)z, pk) != 0) fail(errc::internal, "rank lift failed divisibility");
    }
    cache.store(p, i, z);
  }
  return z;
}

i64 rank_factored(const LucasParams& P, const FactoredInt& f, RankTable& cache,
                  const PrimeSieve* sieve) {
  i64 acc = 1;
  for (auto [q, h] : f.factors) {
    if (std::abs(P.a2) % q == 0) fail(errc::not_coprime_to_a2, "gcd(m, a2) != 1");
    acc = lcm_checked(acc, rank_prime_power(P, q, h, cache, sieve));
  }
  return acc;
}

i64 rank(const LucasParams& P, i64 m, RankTable& cache, const PrimeSieve* sieve) {
  if (m < 1) fail(errc::invalid_input, "rank needs m >= 1");
  if (m == 1) return 1;
  FactoredInt f;
  if (sieve && m <= sieve->limit())
    sieve->factorize_into(m, f);
  else
    f = factorize_trial(m);
  return rank_factored(P, f, cache, sieve);
}

i64 ell(const LucasParams& P, i64 m, RankTable& cache, const PrimeSieve* sieve) {
  return m == 1 ? 1 : lcm_checked(m, rank(P, m, cache, sieve));
}

i64 ell_factored(const LucasParams& P, const FactoredInt& f, RankTable& cache,
                 const PrimeSieve* sieve) {
  return f.n == 1 ? 1 : lcm_checked(f.n, rank_factored(P, f, cache, sieve));
}

i64 gamma_count(const LucasParams& P, i64 r, RankTable& cache, const PrimeSieve* sieve) {
  if (r < 1) fail(errc::invalid_input, "gamma_count needs r >= 1");
  FactoredInt f;
  if (sieve && r <= sieve->limit())
    sieve->factorize_into(r, f);
  else
    f = factorize_trial(r);

  i64 count = 0;
  FactoredInt d;
  // Walk all divisors of r as exponent vectors; d carries its factorization.
  auto dfs = [&](auto&& self, size_t idx) -> void {
    if (idx == f.factors.size()) {
      if (std::gcd(d.n, P.a2) == 1 && ell_factored(P, d, cache, sieve) == r) ++count;
      return;
    }
    auto [q, h] = f.factors[idx];
    self(self, idx + 1);  // exponent 0
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
  return count;
}

}  // namespace lucasgcd
