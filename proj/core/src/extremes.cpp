#include "lucasgcd/extremes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lucasgcd/parallel.hpp"

namespace lucasgcd {

namespace {

i64 least_prime_factor_of_delta(const LucasParams& P) {
  i64 d = std::abs(P.delta);
  FactoredInt f = factorize_trial(d);
  return f.factors.empty() ? 0 : f.factors.front().first;
}

}  // namespace

ExceedCount count_exceed(const LucasParams& P, const PrimeSieve& s, i64 x, double y, int threads) {
  if (x < 1 || x > s.limit()) fail(errc::out_of_range, "x must be in [1, sieve limit]");
  if (!(y > 1.0)) fail(errc::invalid_input, "y must be > 1");
  auto parts = chunked_map<i64>(2, x + 1, default_chunk, threads, [&](i64 lo, i64 hi) {
    i64 c = 0;
    for (i64 p = lo; p < hi; ++p)
      if (s.prime_bit(p) && (double)g(P, p - 1) > y) ++c;
    return c;
  });
  ExceedCount r;
  r.x = x;
  r.y = y;
  for (i64 c : parts) r.count += c;
  double ly = std::log(y), lx = std::log((double)x);
  if (x > 1) {
    r.bound_ratio_l1 = (double)r.count * ly * lx / (double)x;
    r.bound_ratio_l2 = (double)r.count * ly * ly * lx / (double)x;
  }
  return r;
}

MaxScanResult max_g(const LucasParams& P, const PrimeSieve& s, i64 x, Domain dom, int threads) {
  if (x < 1 || x > s.limit()) fail(errc::out_of_range, "x must be in [1, sieve limit]");
  struct Best {
    i64 value = 0;
    i64 arg = 0;
  };
  auto scan = [&](i64 lo, i64 hi) {
    Best b;
    for (i64 n = lo; n < hi; ++n) {
      if (dom == Domain::shifted_primes && !s.prime_bit(n)) continue;
      i64 v = g(P, dom == Domain::shifted_primes ? n - 1 : n);
      if (v > b.value) b = {v, n};
    }
    return b;
  };
  i64 begin = dom == Domain::shifted_primes ? 2 : 1;
  auto parts = chunked_map<Best>(begin, x + 1, default_chunk, threads, scan);

  MaxScanResult r;
  r.x = x;
  for (const Best& b : parts) {
    // Chunk order ascends, so strict > keeps the smallest attaining argument.
    if (b.value > r.max_value) {
      r.max_value = b.value;
      r.argmax = b.arg;
    }
  }
  if (r.max_value == 0) {  // shifted domain with x < 2 cannot happen (x>=1 -> no primes)
    r.max_value = dom == Domain::all_integers ? 1 : 0;
    r.argmax = dom == Domain::all_integers ? 1 : 0;
  }
  r.observed_exponent =
      (x > 1 && r.max_value > 0) ? std::log((double)r.max_value) / std::log((double)x) : 0.0;

  if (dom == Domain::all_integers && std::abs(P.delta) != 1) {
    // Constructive floor: p^k <= x < p^{k+1} has ell(p^k) = p^k, so
    // g(p^k) = p^k and the scan max is at least x/p.
    i64 p = least_prime_factor_of_delta(P);
    if (p > 1 && p <= x) {
      i64 pk = p;
      while (pk <= x / p) pk *= p;
      if (g(P, pk) != pk) fail(errc::internal, "delta-prime witness failed g(p^k) = p^k");
      if (r.max_value < pk) fail(errc::internal, "scan max below constructive witness");
    }
  }
  return r;
}

std::vector<TowerRow> least_prime_tower(const LucasParams& P, i64 q, int k_max, u64 search_limit) {
  if (k_max < 1) fail(errc::invalid_input, "k_max must be >= 1");
  if (q < 2 || !is_prime_u64((u64)q)) fail(errc::invalid_prime, "q must be prime");
  if (P.delta % q != 0) fail(errc::invalid_prime, "q must divide the discriminant");

  std::vector<TowerRow> rows;
  rows.reserve((size_t)k_max);
  i64 qk = 1;
  for (int k = 1; k <= k_max; ++k) {
    if (qk > (i64)(max_modulus / (u64)q)) fail(errc::out_of_range, "q^k exceeds the modulus cap");
    qk *= q;
    auto p = least_prime_in_ap(1, qk, search_limit);
    if (!p) fail(errc::not_found, "no prime ≡ 1 mod q^k within the search limit");
    TowerRow row;
    row.k = k;
    row.modulus = qk;
    row.least_prime = (i64)*p;
    row.divides = g(P, row.least_prime - 1) % qk == 0;
    row.observed_exponent =
        (double)k * std::log((double)q) / std::log((double)row.least_prime);
    rows.push_back(row);
  }
  return rows;
}

std::vector<RunWitness> find_runs(const LucasParams& P, const PrimeSieve& s, RankTable& cache,
                                  int m, i64 y, i64 x_limit) {
  if (m < 2) fail(errc::invalid_input, "run length m must be >= 2");
  if (y < 1) fail(errc::invalid_input, "threshold y must be >= 1");
  if (x_limit < 2 || x_limit > s.limit()) fail(errc::out_of_range, "x_limit beyond sieve");

  // Threshold choice: least ell(s) over s in (y, 2y] coprime to a2, against
  // the smallest delta-prime power strictly above y.
  i64 best_s = 0, best_mod = 0;
  for (i64 cand = y + 1; cand <= 2 * y; ++cand) {
    if (std::gcd(cand, P.a2) != 1) continue;
    i64 L = ell(P, cand, cache, &s);
    if (best_s == 0 || L < best_mod) {
      best_s = cand;
      best_mod = L;
    }
  }
  if (std::abs(P.delta) != 1) {
    i64 p = least_prime_factor_of_delta(P);
    i64 pw = p;
    bool ok = true;
    while (pw <= y) {
      if (pw > (i64)(max_modulus / (u64)p)) {
        ok = false;
        break;
      }
      pw *= p;
    }
    if (ok) {
      i64 L = ell(P, pw, cache, nullptr);
      if (best_s == 0 || L < best_mod) {
        best_s = pw;
        best_mod = L;
      }
    }
  }
  if (best_s == 0) return {};  // no usable threshold

  std::vector<RunWitness> out;
  std::vector<i64> window;
  for (i64 p = 2; p <= x_limit; ++p) {
    if (!s.prime_bit(p)) continue;
    if (p % best_mod == 1) {
      window.push_back(p);
    } else {
      window.clear();
      continue;
    }
    if ((int)window.size() >= m) {
      RunWitness w;
      w.m = m;
      w.modulus = best_mod;
      w.threshold = best_s;
      w.primes.assign(window.end() - m, window.end());
      w.start_prime = w.primes.front();
      w.gap = w.primes.back() - w.primes.front();
      for (i64 q : w.primes)
        if (g(P, q - 1) % best_s != 0) fail(errc::internal, "run witness failed s | g(p-1)");
      out.push_back(std::move(w));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const RunWitness& a, const RunWitness& b) {
    return a.gap != b.gap ? a.gap < b.gap : a.start_prime < b.start_prime;
  });
  return out;
}

BvReport bv_diagnostic(const LucasParams& P, const PrimeSieve& s, RankTable& cache, i64 x, i64 z) {
  if (x < 2 || x > s.limit()) fail(errc::out_of_range, "x must be in [2, sieve limit]");
  if (z < 1) fail(errc::invalid_input, "z must be >= 1");
  if ((i128)z * z > (i128)x) fail(errc::out_of_range, "z must be <= sqrt(x)");

  double pix = (double)pi(s, x);
  kahan_sum sum;
  for (i64 d = 1; d <= z; ++d) {
    i64 gam = gamma_count(P, d, cache, &s);
    if (gam == 0) continue;
    i64 in_ap = pi_progression(s, x, d, 1);
    i64 phi = d == 1 ? 1 : euler_phi(s.factorize(d));
    sum.add((double)gam * std::abs((double)in_ap - pix / (double)phi));
  }
  BvReport r;
  r.x = x;
  r.z = z;
  r.weighted_sum = sum.sum;
  double lx = std::log((double)x);
  r.ref_a1 = (double)x / lx;
  r.ref_a2 = r.ref_a1 / lx;
  r.ref_a3 = r.ref_a2 / lx;
  return r;
}

}  // namespace lucasgcd
