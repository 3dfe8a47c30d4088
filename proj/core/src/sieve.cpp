#include "lucasgcd/sieve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace lucasgcd {

PrimeSieve::PrimeSieve(i64 limit, i64 max_entries) : limit_(limit) {
  if (limit < 2) fail(errc::invalid_input, "sieve limit must be >= 2");
  if (limit + 1 > max_entries) fail(errc::resource_limit, "sieve limit exceeds entry budget");
  if (limit >= (i64(1) << 32)) fail(errc::resource_limit, "SPF entries are 32-bit");

  spf_.assign((size_t)limit + 1, 0);
  spf_[1] = 1;

  // Base primes up to sqrt(limit), then windowed SPF marking. Iterating base
  // primes in increasing order and only writing unset slots yields the
  // smallest factor; any m with spf(m) = r satisfies m >= r^2, so marking
  // starts at r^2 without loss.
  i64 root = (i64)std::sqrt((double)limit);
  while (root * root > limit) --root;
  while ((root + 1) * (root + 1) <= limit) ++root;

  std::vector<i64> base;
  {
    std::vector<char> comp((size_t)root + 1, 0);
    for (i64 p = 2; p <= root; ++p) {
      if (comp[(size_t)p]) continue;
      base.push_back(p);
      for (i64 m = p * p; m <= root; m += p) comp[(size_t)m] = 1;
    }
  }

  for (i64 lo = 2; lo <= limit; lo += segment_size) {
    i64 hi = std::min(limit + 1, lo + segment_size);
    for (i64 r : base) {
      if (r * r >= hi) break;
      i64 start = std::max(r * r, ((lo + r - 1) / r) * r);
      for (i64 m = start; m < hi; m += r)
        if (spf_[(size_t)m] == 0) spf_[(size_t)m] = (std::uint32_t)r;
    }
    for (i64 m = lo; m < hi; ++m)
      if (spf_[(size_t)m] == 0) spf_[(size_t)m] = (std::uint32_t)m;  // prime
  }

  bits_.assign((size_t)(limit >> 6) + 1, 0);
  for (i64 n = 2; n <= limit; ++n)
    if (spf_[(size_t)n] == (std::uint32_t)n) bits_[(size_t)(n >> 6)] |= u64(1) << (n & 63);
}

void PrimeSieve::factorize_into(i64 n, FactoredInt& out) const {
  if (n < 1) fail(errc::invalid_input, "factorize needs n >= 1");
  check_range(n);
  out.n = n;
  out.factors.clear();
  while (n > 1) {
    i64 p = spf_[(size_t)n];
    int e = 0;
    do {
      n /= p;
      ++e;
    } while (n % p == 0);
    out.factors.emplace_back(p, e);
  }
}

FactoredInt factorize_trial(i64 n) {
  if (n < 1) fail(errc::invalid_input, "factorize needs n >= 1");
  FactoredInt f;
  f.n = n;
  for (i64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    f.factors.emplace_back(d, e);
  }
  if (n > 1) f.factors.emplace_back(n, 1);
  return f;
}

i64 euler_phi(const FactoredInt& f) {
  i64 r = 1;
  for (auto [p, e] : f.factors) {
    r *= p - 1;
    for (int k = 1; k < e; ++k) r *= p;
  }
  return r;
}

i64 tau(const FactoredInt& f) {
  i64 r = 1;
  for (auto [p, e] : f.factors) r *= e + 1;
  return r;
}

int legendre(i64 a, i64 p) {
  if (p < 3 || p % 2 == 0) fail(errc::invalid_prime, "legendre needs an odd prime");
  i64 r = a % p;
  if (r < 0) r += p;
  if (r == 0) return 0;
  u64 e = powmod((u64)r, (u64)(p - 1) / 2, (u64)p);
  if (e == 1) return 1;
  if (e == (u64)p - 1) return -1;
  fail(errc::invalid_prime, "Euler criterion failed; p is not prime");
}

i64 PrimeSieve::prime_count(i64 x) const {
  check_range(x);
  if (x < 2) return 0;
  i64 full = (x + 1) >> 6;
  i64 count = 0;
  for (i64 w = 0; w < full; ++w) count += std::popcount(bits_[(size_t)w]);
  int rem = (int)((x + 1) & 63);
  if (rem) count += std::popcount(bits_[(size_t)full] & ((u64(1) << rem) - 1));
  return count;
}

i64 pi(const PrimeSieve& s, i64 x) { return s.prime_count(x); }

i64 pi_progression(const PrimeSieve& s, i64 x, i64 b, i64 a) {
  if (b < 1) fail(errc::invalid_input, "pi_progression needs b >= 1");
  if (x < 0 || x > s.limit()) fail(errc::out_of_range, "pi_progression: x beyond sieve limit");
  if (std::gcd(a, b) != 1) fail(errc::not_coprime, "pi_progression needs gcd(a, b) = 1");
  if (b == 1) return pi(s, x);
  i64 c = a % b;
  if (c < 0) c += b;
  while (c < 2) c += b;
  i64 count = 0;
  for (; c <= x; c += b)
    if (s.prime_bit(c)) ++count;
  return count;
}

double delta_ap(const PrimeSieve& s, i64 x, i64 b, i64 a) {
  i64 in_ap = pi_progression(s, x, b, a);
  i64 total = pi(s, x);
  i64 phi_b = b == 1 ? 1 : euler_phi(b <= s.limit() ? s.factorize(b) : factorize_trial(b));
  return (double)in_ap - (double)total / (double)phi_b;
}

i64 smooth_count(const PrimeSieve& s, i64 x, i64 y) {
  if (x < 1) fail(errc::invalid_input, "smooth_count needs x >= 1");
  if (y < 2) fail(errc::invalid_input, "smooth_count needs y >= 2");
  i64 pmax = std::min(x, y - 1);
  if (pmax > s.limit()) fail(errc::out_of_range, "smooth_count needs primes up to min(x, y-1)");
  std::vector<i64> ps;
  for (i64 p = 2; p <= pmax; ++p)
    if (s.prime_bit(p)) ps.push_back(p);

  // Every counted n <= x is a product of primes < y; enumerate the product
  // tree. The count includes n = 1 (empty product).
  i64 count = 0;
  auto dfs = [&](auto&& self, size_t idx, i64 prod) -> void {
    ++count;
    for (size_t i = idx; i < ps.size(); ++i) {
      if (prod > x / ps[i]) break;  // ps ascending: later primes overflow too
      self(self, i, prod * ps[i]);
    }
  };
  dfs(dfs, 0, 1);
  return count;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = std::countr_zero(d);
  d >>= s;
  // Deterministic witness set for the full 64-bit range.
  for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    u64 x = powmod(a % n, d, n);
    if (x <= 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::optional<u64> least_prime_in_ap(i64 a, i64 d, u64 search_limit) {
  if (d < 1) fail(errc::invalid_input, "least_prime_in_ap needs d >= 1");
  if (std::gcd(a, d) != 1) fail(errc::not_coprime, "least_prime_in_ap needs gcd(a, d) = 1");
  i64 c = a % d;
  if (c < 0) c += d;
  if (d == 1) c = 2;
  while (c < 2) c += d;
  u64 v = (u64)c;
  while (v <= search_limit) {
    if (is_prime_u64(v)) return v;
    if ((u64)d > search_limit - v) break;  // next step would pass the limit
    v += (u64)d;
  }
  return std::nullopt;
}

}  // namespace lucasgcd
