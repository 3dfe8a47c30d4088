#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "lucasgcd/errors.hpp"
#include "lucasgcd/extremes.hpp"
#include "oracle.hpp"

using namespace lucasgcd;

static const PrimeSieve& shared_sieve() {
  static PrimeSieve s(100000);
  return s;
}

TEST_CASE("exceedance counts match brute force") {
  const auto& s = shared_sieve();
  for (auto P : {make_params(1, 1), make_params(2, 1)}) {
    for (double y : {2.0, 5.0, 50.0}) {
      i64 brute = 0;
      for (i64 p = 2; p <= 2000; p++)
        if (oracle::is_prime_trial(p) && (double)oracle::g(P, p - 1) > y) brute++;
      auto c = count_exceed(P, s, 2000, y);
      CHECK(c.count == brute);
    }
  }
}

TEST_CASE("exceedance report carries the bound ratios") {
  const auto& s = shared_sieve();
  auto fib = make_params(1, 1);
  auto c = count_exceed(fib, s, 50000, 10.0);
  CHECK(c.count > 0);
  double lx = std::log(50000.0), ly = std::log(10.0);
  CHECK(c.bound_ratio_l1 ==
        doctest::Approx((double)c.count * ly * lx / 50000.0).epsilon(1e-12));
  CHECK(c.bound_ratio_l2 ==
        doctest::Approx((double)c.count * ly * ly * lx / 50000.0).epsilon(1e-12));
}

TEST_CASE("exceedance is monotone and vanishes for y >= x") {
  const auto& s = shared_sieve();
  auto fib = make_params(1, 1);
  i64 prev = -1;
  for (double y : {5000.0, 500.0, 50.0, 5.0}) {
    i64 c = count_exceed(fib, s, 50000, y).count;
    CHECK(c >= prev);
    prev = c;
  }
  CHECK(count_exceed(fib, s, 1000, 1000.0).count == 0);
  CHECK_THROWS_AS((void)count_exceed(fib, s, 1000, 1.0), error);
  CHECK_THROWS_AS((void)count_exceed(fib, s, i64(1) << 40, 5.0), error);
}

TEST_CASE("max scan matches brute force at desk scale") {
  const auto& s = shared_sieve();
  for (auto P : {make_params(1, 1), make_params(2, 1), make_params(1, 6)}) {
    i64 brute_max = 0, brute_arg = 0;
    for (i64 n = 1; n <= 3000; n++) {
      i64 v = oracle::g(P, n);
      if (v > brute_max) {
        brute_max = v;
        brute_arg = n;
      }
    }
    auto r = max_g(P, s, 3000, Domain::all_integers);
    CHECK(r.max_value == brute_max);
    CHECK(r.argmax == brute_arg);

    i64 brute_pmax = 0, brute_parg = 0;
    for (i64 p = 2; p <= 3000; p++) {
      if (!oracle::is_prime_trial(p)) continue;
      i64 v = oracle::g(P, p - 1);
      if (v > brute_pmax) {
        brute_pmax = v;
        brute_parg = p;
      }
    }
    auto rp = max_g(P, s, 3000, Domain::shifted_primes);
    CHECK(rp.max_value == brute_pmax);
    CHECK(rp.argmax == brute_parg);
  }
}

TEST_CASE("max scan exposes the prime power witness") {
  const auto& s = shared_sieve();
  auto fib = make_params(1, 1);  // delta = 5
  auto r = max_g(fib, s, 100000, Domain::all_integers);
  // 5^7 = 78125 <= 1e5, so the witness guarantees at least that much.
  CHECK(r.max_value >= 78125);
  CHECK(r.max_value <= 100000);
  CHECK(r.observed_exponent ==
        doctest::Approx(std::log((double)r.max_value) / std::log(100000.0)).epsilon(1e-12));
  // x = 1: only n = 1, g(1) = 1.
  auto tiny = max_g(fib, s, 1, Domain::all_integers);
  CHECK(tiny.max_value == 1);
  CHECK(tiny.argmax == 1);
}

TEST_CASE("least prime tower rows verify and freeze") {
  auto fib = make_params(1, 1);
  auto rows = least_prime_tower(fib, 5, 4, 100000000);
  REQUIRE(rows.size() == 4);
  i64 want_p[] = {11, 101, 251, 11251};
  i64 mod = 1;
  for (int k = 1; k <= 4; k++) {
    mod *= 5;
    const auto& r = rows[k - 1];
    CHECK(r.k == k);
    CHECK(r.modulus == mod);
    CHECK(r.least_prime == want_p[k - 1]);
    CHECK(r.divides);
    CHECK(oracle::is_prime_trial(r.least_prime));
    CHECK(r.least_prime % mod == 1);
    // Independent divisibility check through the oracle g.
    CHECK(oracle::g(fib, r.least_prime - 1) % mod == 0);
    CHECK(r.observed_exponent ==
          doctest::Approx(k * std::log(5.0) / std::log((double)r.least_prime)).epsilon(1e-12));
  }
}

TEST_CASE("least prime tower rejects bad bases") {
  auto fib = make_params(1, 1);
  CHECK_THROWS_AS((void)least_prime_tower(fib, 7, 2, 1000000), error);  // 7 does not divide 5
  CHECK_THROWS_AS((void)least_prime_tower(fib, 4, 2, 1000000), error);  // not prime
  auto pell = make_params(2, 1);  // delta = 8
  CHECK_NOTHROW((void)least_prime_tower(pell, 2, 3, 1000000));
  CHECK_THROWS_AS((void)least_prime_tower(pell, 5, 2, 1000000), error);
}

TEST_CASE("runs come back verified and sorted") {
  const auto& s = shared_sieve();
  RankTable cache;
  auto fib = make_params(1, 1);
  auto runs = find_runs(fib, s, cache, 2, 4, 50000);
  REQUIRE(!runs.empty());

  // Frozen head: threshold 5, modulus 5, first witness 181/191.
  CHECK(runs[0].threshold == 5);
  CHECK(runs[0].modulus == 5);
  CHECK(runs[0].start_prime == 181);
  CHECK(runs[0].gap == 10);

  for (size_t i = 1; i < runs.size(); i++) {
    bool ordered = runs[i - 1].gap < runs[i].gap ||
                   (runs[i - 1].gap == runs[i].gap &&
                    runs[i - 1].start_prime <= runs[i].start_prime);
    CHECK(ordered);
  }
  for (const auto& w : runs) {
    REQUIRE(w.primes.size() == 2);
    CHECK(w.start_prime == w.primes.front());
    CHECK(w.gap == w.primes.back() - w.primes.front());
    for (i64 p : w.primes) {
      CHECK(oracle::is_prime_trial(p));
      CHECK(p % w.modulus == 1);
      CHECK(oracle::g(fib, p - 1) % w.threshold == 0);
      CHECK((double)oracle::g(fib, p - 1) > 4.0);
    }
    for (i64 v = w.primes.front() + 1; v < w.primes.back(); v++)
      CHECK(!oracle::is_prime_trial(v));
  }
}

TEST_CASE("runs of length three exist for Fibonacci below a million") {
  const auto& s = shared_sieve();
  RankTable cache;
  auto fib = make_params(1, 1);
  auto runs = find_runs(fib, s, cache, 3, 4, 100000);
  for (const auto& w : runs) {
    REQUIRE(w.primes.size() == 3);
    for (size_t i = 2; i < w.primes.size(); i++) CHECK(w.primes[i - 1] < w.primes[i]);
    for (i64 p : w.primes) CHECK(oracle::g(fib, p - 1) % w.threshold == 0);
  }
  CHECK(!runs.empty());  // first triple starts at 13421
  CHECK(runs[0].primes.size() == 3);
}

TEST_CASE("runs report empty when no threshold candidate exists") {
  const auto& s = shared_sieve();
  RankTable cache;
  // a2 = -2 blocks every even s and |delta| = 1 removes the prime power
  // fallback, so y = 1 leaves an empty candidate set.
  auto P = make_params(3, -2);
  CHECK(P.delta == 1);
  auto runs = find_runs(P, s, cache, 2, 1, 10000);
  CHECK(runs.empty());
}

TEST_CASE("runs input validation") {
  const auto& s = shared_sieve();
  RankTable cache;
  auto fib = make_params(1, 1);
  CHECK_THROWS_AS((void)find_runs(fib, s, cache, 1, 4, 10000), error);
  CHECK_THROWS_AS((void)find_runs(fib, s, cache, 2, 0, 10000), error);
  CHECK_THROWS_AS((void)find_runs(fib, s, cache, 2, 4, i64(1) << 40), error);
}

TEST_CASE("progression deviation diagnostic") {
  const auto& s = shared_sieve();
  RankTable cache;
  auto fib = make_params(1, 1);

  auto r = bv_diagnostic(fib, s, cache, 10000, 1);
  CHECK(r.weighted_sum == 0.0);

  auto r2 = bv_diagnostic(fib, s, cache, 10000, 50);
  CHECK(r2.weighted_sum >= 0);
  double lx = std::log(10000.0);
  CHECK(r2.ref_a1 == doctest::Approx(10000.0 / lx).epsilon(1e-12));
  CHECK(r2.ref_a2 == doctest::Approx(10000.0 / (lx * lx)).epsilon(1e-12));
  CHECK(r2.ref_a3 == doctest::Approx(10000.0 / (lx * lx * lx)).epsilon(1e-12));

  // Brute recomputation with oracle weights and trial-division counts.
  double brute = 0;
  i64 pix = 0;
  for (i64 p = 2; p <= 10000; p++)
    if (oracle::is_prime_trial(p)) pix++;
  for (i64 d = 1; d <= 50; d++) {
    i64 gam = oracle::gamma_scan(fib, d);
    if (gam == 0) continue;
    i64 cnt = 0;
    for (i64 p = 2; p <= 10000; p++)
      if (oracle::is_prime_trial(p) && p % d == 1 % d) cnt++;
    i64 phi = 0;
    for (i64 k = 1; k <= d; k++)
      if (std::gcd(k, d) == 1) phi++;
    brute += (double)gam * std::abs((double)cnt - (double)pix / (double)phi);
  }
  CHECK(r2.weighted_sum == doctest::Approx(brute).epsilon(1e-9));

  CHECK_THROWS_AS((void)bv_diagnostic(fib, s, cache, 10000, 101), error);  // z^2 > x
  CHECK_THROWS_AS((void)bv_diagnostic(fib, s, cache, 1, 1), error);
}

TEST_CASE("thread count never changes scan results") {
  const auto& s = shared_sieve();
  auto fib = make_params(1, 1);
  auto a = max_g(fib, s, 50000, Domain::all_integers, 1);
  auto b = max_g(fib, s, 50000, Domain::all_integers, 4);
  CHECK(a.max_value == b.max_value);
  CHECK(a.argmax == b.argmax);
  auto c1 = count_exceed(fib, s, 50000, 10.0, 1);
  auto c4 = count_exceed(fib, s, 50000, 10.0, 4);
  CHECK(c1.count == c4.count);
  CHECK(c1.bound_ratio_l1 == c4.bound_ratio_l1);
}
