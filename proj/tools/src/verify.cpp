#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "lucasgcd/constants.hpp"
#include "lucasgcd/extremes.hpp"
#include "lucasgcd/moments.hpp"
#include "lucasgcd/rho.hpp"
#include "lucasgcd/sieve.hpp"

namespace lucasgcd::cli {

namespace {

struct CheckResult {
  bool ok;
  std::string detail;
};

CheckResult pass(std::string detail) { return {true, std::move(detail)}; }
CheckResult fail(std::string detail) { return {false, std::move(detail)}; }

u64 reduce_mod(i64 v, u64 m) {
  i64 r = v % (i64)m;
  if (r < 0) r += (i64)m;
  return (u64)r;
}

// u_n mod m by the defining recurrence, one step at a time. Oracle for
// the doubling ladder; also yields the linear rank scan.
u64 u_mod_iterative(const LucasParams& P, i64 n, u64 m) {
  u64 c1 = reduce_mod(P.a1, m), c2 = reduce_mod(P.a2, m);
  u64 a = 0, b = 1 % m;
  for (i64 k = 0; k < n; k++) {
    u64 next = addmod(mulmod(c1, b, m), mulmod(c2, a, m), m);
    a = b;
    b = next;
  }
  return a;
}

// Least k in [1, k_limit] with u_k ≡ 0 mod m, or -1.
i64 rank_scan(const LucasParams& P, i64 m, i64 k_limit) {
  u64 c1 = reduce_mod(P.a1, (u64)m), c2 = reduce_mod(P.a2, (u64)m);
  u64 a = 0, b = 1 % (u64)m;
  for (i64 k = 1; k <= k_limit; k++) {
    u64 next = addmod(mulmod(c1, b, (u64)m), mulmod(c2, a, (u64)m), (u64)m);
    a = b;
    b = next;
    if (a == 0) return k;
  }
  return -1;
}

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string num(double v) { return format_real(v); }

}  // namespace

Table run_verify(const LucasParams& P, int threads) {
  PrimeSieve sieve(50000);
  RankTable cache;
  bool fibonacci = P.a1 == 1 && P.a2 == 1;

  std::vector<std::pair<const char*, std::function<CheckResult()>>> checks;

  checks.emplace_back("arith_spot_values", [&]() -> CheckResult {
    struct {
      const char* what;
      i64 got, want;
    } cases[] = {
        {"pi(10)", pi(sieve, 10), 4},
        {"pi(100)", pi(sieve, 100), 25},
        {"pi(100;5,1)", pi_progression(sieve, 100, 5, 1), 5},
        {"phi(100)", euler_phi(sieve.factorize(100)), 40},
        {"tau(60)", tau(sieve.factorize(60)), 12},
        {"legendre(5,11)", legendre(5, 11), 1},
        {"legendre(5,7)", legendre(5, 7), -1},
        {"legendre(10,5)", legendre(10, 5), 0},
        {"smooth(100,2)", smooth_count(sieve, 100, 2), 1},
        {"smooth(100,3)", smooth_count(sieve, 100, 3), 7},
        {"smooth(30,4)", smooth_count(sieve, 30, 4), 12},
        {"p(1,5)", (i64)least_prime_in_ap(1, 5, 1000000).value_or(0), 11},
        {"p(1,25)", (i64)least_prime_in_ap(1, 25, 1000000).value_or(0), 101},
        {"p(2,3)", (i64)least_prime_in_ap(2, 3, 1000000).value_or(0), 2},
    };
    for (auto& c : cases)
      if (c.got != c.want)
        return fail(std::string(c.what) + " = " + std::to_string(c.got) + ", want " +
                    std::to_string(c.want));
    return pass("14 fixed values");
  });

  checks.emplace_back("primality_matches_sieve", [&]() -> CheckResult {
    for (i64 n = 0; n <= 20000; n++) {
      bool a = n >= 2 && sieve.is_prime(n);
      bool b = is_prime_u64((u64)n);
      if (a != b) return fail("disagree at n = " + std::to_string(n));
    }
    return pass("n <= 20000");
  });

  checks.emplace_back("smooth_count_matches_brute", [&]() -> CheckResult {
    for (i64 x : {50, 100, 200, 300}) {
      for (i64 y : {2, 3, 5, 7, 11, 16}) {
        i64 brute = 0;
        for (i64 n = 1; n <= x; n++) {
          i64 v = n, biggest = 1;
          for (i64 d = 2; d * d <= v; d++)
            while (v % d == 0) {
              biggest = d;
              v /= d;
            }
          if (v > 1) biggest = v;
          if (biggest < y) brute++;
        }
        i64 got = smooth_count(sieve, x, y);
        if (got != brute)
          return fail("Phi(" + std::to_string(x) + "," + std::to_string(y) + ") = " +
                      std::to_string(got) + ", brute " + std::to_string(brute));
      }
    }
    return pass("x <= 300, y <= 16");
  });

  checks.emplace_back("doubling_matches_iteration", [&]() -> CheckResult {
    std::mt19937_64 rng(12345);
    for (int t = 0; t < 300; t++) {
      i64 n = (i64)(rng() % 20000);
      u64 m = rng() % 1000000000 + 1;
      auto [un, un1] = lucas_pair_mod(P, (u64)n, m);
      u64 want_n = u_mod_iterative(P, n, m);
      u64 want_n1 = u_mod_iterative(P, n + 1, m);
      if (un != want_n || un1 != want_n1)
        return fail("n = " + std::to_string(n) + ", m = " + std::to_string(m));
    }
    return pass("300 random (n, m) pairs");
  });

  checks.emplace_back("g_matches_definition", [&]() -> CheckResult {
    for (i64 n = 1; n <= 2000; n++) {
      i64 want = std::gcd(n, (i64)u_mod_iterative(P, n, (u64)n));
      if (g(P, n) != want) return fail("n = " + std::to_string(n));
    }
    return pass("n <= 2000");
  });

  checks.emplace_back("divisibility_iff", [&]() -> CheckResult {
    std::vector<i64> gs(601);
    for (i64 n = 1; n <= 600; n++) gs[n] = g(P, n);
    for (i64 m = 2; m <= 60; m++) {
      if (std::gcd(m, P.a2) != 1) {
        for (i64 n = 1; n <= 600; n++)
          if (gs[n] % m == 0)
            return fail("m = " + std::to_string(m) + " divides g(" + std::to_string(n) +
                        ") despite gcd(m, a2) > 1");
        continue;
      }
      i64 L = ell(P, m, cache, &sieve);
      for (i64 n = 1; n <= 600; n++) {
        bool divides = gs[n] % m == 0;
        bool predicted = n % L == 0;
        if (divides != predicted)
          return fail("m = " + std::to_string(m) + ", n = " + std::to_string(n) + ": divides=" +
                      (divides ? "1" : "0") + " but ell(m) = " + std::to_string(L));
      }
    }
    return pass("m <= 60, n <= 600");
  });

  checks.emplace_back("rank_lcm", [&]() -> CheckResult {
    for (i64 m1 = 2; m1 <= 60; m1++) {
      if (std::gcd(m1, P.a2) != 1) continue;
      for (i64 m2 = m1 + 1; m2 <= 60; m2++) {
        if (std::gcd(m2, P.a2) != 1 || std::gcd(m1, m2) != 1) continue;
        i64 want = std::lcm(rank(P, m1, cache, &sieve), rank(P, m2, cache, &sieve));
        i64 got = rank(P, m1 * m2, cache, &sieve);
        if (got != want)
          return fail("z(" + std::to_string(m1) + "*" + std::to_string(m2) + ") = " +
                      std::to_string(got) + ", lcm gives " + std::to_string(want));
      }
    }
    return pass("coprime pairs m1 < m2 <= 60");
  });

  checks.emplace_back("rank_prime_power", [&]() -> CheckResult {
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
      if (P.a2 % p == 0) continue;
      i64 pj = 1;
      for (int j = 1; j <= 3; j++) {
        pj *= p;
        i64 want = rank_scan(P, pj, 2 * pj);
        i64 got = rank_prime_power(P, p, j, cache, &sieve);
        if (got != want)
          return fail("z(" + std::to_string(p) + "^" + std::to_string(j) + ") = " +
                      std::to_string(got) + ", scan gives " + std::to_string(want));
      }
    }
    return pass("p <= 47, j <= 3 against linear scan");
  });

  checks.emplace_back("ell_bounds", [&]() -> CheckResult {
    for (i64 n = 1; n <= 2000; n++) {
      if (std::gcd(n, P.a2) != 1) continue;
      i64 z = rank(P, n, cache, &sieve);
      i64 L = ell(P, n, cache, &sieve);
      if (z > 2 * n) return fail("z(" + std::to_string(n) + ") = " + std::to_string(z) + " > 2n");
      if (L > 2 * n * n)
        return fail("ell(" + std::to_string(n) + ") = " + std::to_string(L) + " > 2n^2");
    }
    return pass("z <= 2n and ell <= 2n^2 for n <= 2000");
  });

  checks.emplace_back("rho_matches_oracle", [&]() -> CheckResult {
    for (int lambda = 1; lambda <= 3; lambda++) {
      RhoContext ctx(lambda);
      for (i64 n = 1; n <= 400; n++) {
        double got = rho(ctx, sieve.factorize(n));
        double want = rho_oracle(lambda, n, sieve);
        if (!rel_close(got, want, 1e-9))
          return fail("lambda = " + std::to_string(lambda) + ", n = " + std::to_string(n) +
                      ": " + num(got) + " vs oracle " + num(want));
      }
    }
    return pass("n <= 400, lambda <= 3");
  });

  checks.emplace_back("rho_log_bound", [&]() -> CheckResult {
    for (int lambda = 1; lambda <= 5; lambda++) {
      RhoContext ctx(lambda);
      if (rho(ctx, sieve.factorize(1)) != 0.0) return fail("rho(1) != 0");
      for (i64 n = 2; n <= 5000; n++) {
        double bound = std::pow(std::log((double)n), lambda);
        double got = rho(ctx, sieve.factorize(n));
        if (got < 0 || got > bound + 1e-12 * bound)
          return fail("lambda = " + std::to_string(lambda) + ", n = " + std::to_string(n) +
                      ": rho = " + num(got) + " vs (log n)^lambda = " + num(bound));
      }
    }
    return pass("0 <= rho <= (log n)^lambda, n <= 5000, lambda <= 5");
  });

  checks.emplace_back("gamma_tau", [&]() -> CheckResult {
    for (i64 r = 1; r <= 1000; r++) {
      i64 gam = gamma_count(P, r, cache, &sieve);
      i64 t = tau(sieve.factorize(r));
      if (gam > t)
        return fail("gamma(" + std::to_string(r) + ") = " + std::to_string(gam) + " > tau = " +
                    std::to_string(t));
    }
    return pass("gamma(r) <= tau(r) for r <= 1000");
  });

  checks.emplace_back("moment_identity_shifted", [&]() -> CheckResult {
    for (int lambda : {1, 2}) {
      double direct = moment_direct(P, sieve, lambda, 2000, Domain::shifted_primes, threads);
      double via = moment_via_identity(P, sieve, cache, lambda, 2000, threads);
      if (!rel_close(direct, via, 1e-9))
        return fail("lambda = " + std::to_string(lambda) + ": direct " + num(direct) +
                    " vs identity " + num(via));
    }
    return pass("x = 2000, lambda <= 2");
  });

  checks.emplace_back("moment_identity_integers", [&]() -> CheckResult {
    for (int lambda : {1, 2}) {
      double direct = moment_direct(P, sieve, lambda, 2000, Domain::all_integers, threads);
      double via = moment_via_identity_integers(P, sieve, cache, lambda, 2000, threads);
      if (!rel_close(direct, via, 1e-9))
        return fail("lambda = " + std::to_string(lambda) + ": direct " + num(direct) +
                    " vs identity " + num(via));
    }
    return pass("x = 2000, lambda <= 2");
  });

  checks.emplace_back("pointwise_identity", [&]() -> CheckResult {
    for (int lambda : {1, 2}) {
      for (i64 n = 1; n <= 1000; n++) {
        double direct = std::pow(std::log((double)g(P, n)), lambda);
        double via = pointwise_identity(P, cache, lambda, n);
        if (!rel_close(direct, via, 1e-9))
          return fail("lambda = " + std::to_string(lambda) + ", n = " + std::to_string(n) +
                      ": " + num(direct) + " vs " + num(via));
      }
    }
    return pass("n <= 1000, lambda <= 2");
  });

  checks.emplace_back("constants_order_and_monotone", [&]() -> CheckResult {
    for (int lambda : {1, 2}) {
      double prev_m = 0, prev_p = 0;
      for (i64 N : {500, 1000, 2000}) {
        auto m = constant_series(P, sieve, cache, lambda, N, ConstantKind::M, threads);
        auto p = constant_series(P, sieve, cache, lambda, N, ConstantKind::P, threads);
        if (m.partial_sum < prev_m || p.partial_sum < prev_p)
          return fail("partial sum decreased at N = " + std::to_string(N));
        if (m.partial_sum > p.partial_sum)
          return fail("M(" + std::to_string(N) + ") = " + num(m.partial_sum) + " > P = " +
                      num(p.partial_sum));
        prev_m = m.partial_sum;
        prev_p = p.partial_sum;
      }
      double minorant = prime_minorant(P, sieve, lambda, 2000);
      auto m = constant_series(P, sieve, cache, lambda, 2000, ConstantKind::M, threads);
      if (m.partial_sum < minorant)
        return fail("M(2000) = " + num(m.partial_sum) + " below prime minorant " + num(minorant));
    }
    return pass("monotone, M <= P, prime minorant; lambda <= 2");
  });

  checks.emplace_back("tail_profile_matches_single", [&]() -> CheckResult {
    std::vector<i64> grid = {500, 1000, 2000};
    auto prof = tail_profile(P, sieve, cache, 1, ConstantKind::M, grid, threads);
    for (size_t i = 0; i < grid.size(); i++) {
      auto single = constant_series(P, sieve, cache, 1, grid[i], ConstantKind::M, threads);
      if (prof[i].second != single.partial_sum)
        return fail("profile at N = " + std::to_string(grid[i]) + " differs from single run");
    }
    return pass("profile points bit-identical to single runs");
  });

  checks.emplace_back("incomplete_gamma_match", [&]() -> CheckResult {
    for (int n = 1; n <= 6; n++) {
      for (double x : {0.0, 0.5, 1.0, 2.5, 10.0}) {
        double closed = incomplete_gamma(n, x);
        double quad = incomplete_gamma_quadrature(n, x);
        if (!rel_close(closed, quad, 1e-9))
          return fail("n = " + std::to_string(n) + ", x = " + num(x) + ": " + num(closed) +
                      " vs quadrature " + num(quad));
      }
    }
    return pass("n <= 6, five x values");
  });

  checks.emplace_back("max_scan_consistency", [&]() -> CheckResult {
    auto all = max_g(P, sieve, 10000, Domain::all_integers, threads);
    auto shifted = max_g(P, sieve, 10000, Domain::shifted_primes, threads);
    if (all.max_value < 1 || all.max_value > 10000) return fail("all-integers max out of [1, x]");
    if (shifted.max_value > all.max_value) return fail("shifted max exceeds all-integers max");
    if (g(P, all.argmax) != all.max_value) return fail("argmax does not reproduce max");
    return pass("x = 10000, max = " + std::to_string(all.max_value) + " at n = " +
                std::to_string(all.argmax));
  });

  checks.emplace_back("exceed_monotone", [&]() -> CheckResult {
    i64 prev = -1;
    for (double y : {500.0, 50.0, 5.0}) {
      auto c = count_exceed(P, sieve, 5000, y, threads);
      if (prev >= 0 && c.count < prev) return fail("count increased as y grew");
      prev = c.count;
    }
    auto small = count_exceed(P, sieve, 2000, 5.0, threads);
    auto large = count_exceed(P, sieve, 5000, 5.0, threads);
    if (small.count > large.count) return fail("count decreased as x grew");
    auto zero = count_exceed(P, sieve, 2000, 2000.0, threads);
    if (zero.count != 0) return fail("y >= x should give count 0");
    return pass("nonincreasing in y, nondecreasing in x");
  });

  checks.emplace_back("runs_witnesses_verified", [&]() -> CheckResult {
    auto runs = find_runs(P, sieve, cache, 2, 4, 50000);
    for (const auto& w : runs) {
      if ((i64)w.primes.size() != w.m) return fail("witness length != m");
      if (w.gap != w.primes.back() - w.primes.front()) return fail("gap mismatch");
      if (w.threshold <= 4) return fail("threshold not above y");
      for (i64 p : w.primes) {
        if (p % w.modulus != 1) return fail(std::to_string(p) + " not 1 mod modulus");
        if (g(P, p - 1) % w.threshold != 0)
          return fail("g(" + std::to_string(p - 1) + ") not divisible by threshold");
      }
      for (i64 v = w.primes.front() + 1; v < w.primes.back(); v++)
        if (sieve.is_prime(v) && std::find(w.primes.begin(), w.primes.end(), v) == w.primes.end())
          return fail("primes not consecutive at " + std::to_string(v));
    }
    if (fibonacci && runs.empty()) return fail("no witness found for default sequence");
    return pass(std::to_string(runs.size()) + " witnesses, all re-verified");
  });

  checks.emplace_back("bv_z1_zero", [&]() -> CheckResult {
    auto r = bv_diagnostic(P, sieve, cache, 10000, 1);
    if (r.weighted_sum != 0.0) return fail("z = 1 sum is " + num(r.weighted_sum));
    return pass("z = 1 contributes exactly 0");
  });

  Table t;
  t.columns = {"property", "status", "detail"};
  for (auto& [name, fn] : checks) {
    CheckResult r{false, ""};
    try {
      r = fn();
    } catch (const std::exception& e) {
      r = fail(std::string("exception: ") + e.what());
    }
    t.add_row({std::string(name), std::string(r.ok ? "pass" : "fail"), r.detail});
  }
  return t;
}

bool all_passed(const Table& t) {
  for (const auto& row : t.rows)
    if (std::get<std::string>(row[1]) != "pass") return false;
  return true;
}

}  // namespace lucasgcd::cli
