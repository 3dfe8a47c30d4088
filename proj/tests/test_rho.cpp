#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "lucasgcd/errors.hpp"
#include "lucasgcd/rho.hpp"
#include "lucasgcd/sieve.hpp"

using namespace lucasgcd;

static const PrimeSieve& shared_sieve() {
  static PrimeSieve s(200000);
  return s;
}

static double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

TEST_CASE("context validates lambda") {
  CHECK_NOTHROW(RhoContext(1));
  CHECK_NOTHROW(RhoContext(20));
  CHECK_THROWS_AS(RhoContext(0), error);
  CHECK_THROWS_AS(RhoContext(21), error);
  CHECK_THROWS_AS(RhoContext(-3), error);
}

TEST_CASE("hand-derived closed forms") {
  const auto& s = shared_sieve();
  const double l2 = std::log(2.0), l3 = std::log(3.0), l5 = std::log(5.0);

  RhoContext c1(1), c2(2), c3(3);
  // One prime power q^h contributes (h^k - (h-1)^k)(log q)^k / k! per part.
  CHECK(rho(c1, s.factorize(2)) == doctest::Approx(l2).epsilon(1e-12));
  CHECK(rho(c1, s.factorize(4)) == doctest::Approx(l2).epsilon(1e-12));
  CHECK(rho(c1, s.factorize(8)) == doctest::Approx(l2).epsilon(1e-12));
  CHECK(rho(c1, s.factorize(9)) == doctest::Approx(l3).epsilon(1e-12));
  CHECK(rho(c1, s.factorize(5)) == doctest::Approx(l5).epsilon(1e-12));

  // lambda = 1 on two or more primes is 0 (a single part cannot cover both).
  CHECK(rho(c1, s.factorize(6)) == 0.0);
  CHECK(rho(c1, s.factorize(12)) == 0.0);
  CHECK(rho(c1, s.factorize(30)) == 0.0);

  CHECK(rho(c2, s.factorize(4)) == doctest::Approx(3 * l2 * l2).epsilon(1e-12));
  CHECK(rho(c2, s.factorize(9)) == doctest::Approx(3 * l3 * l3).epsilon(1e-12));
  CHECK(rho(c2, s.factorize(12)) == doctest::Approx(2 * l2 * l3).epsilon(1e-12));
  CHECK(rho(c2, s.factorize(6)) == doctest::Approx(2 * l2 * l3).epsilon(1e-12));
  CHECK(rho(c2, s.factorize(15)) == doctest::Approx(2 * l3 * l5).epsilon(1e-12));
  CHECK(rho(c2, s.factorize(30)) == 0.0);  // three primes, two parts

  // 2^3 at lambda = 3: (3^3 - 2^3)(log 2)^3 / 3! times 3!.
  CHECK(rho(c3, s.factorize(8)) == doctest::Approx(19 * l2 * l2 * l2).epsilon(1e-12));
  // 12 = 2^2 * 3: parts (2,1) and (1,2).
  double want12 = 6.0 * ((4 - 1) * l2 * l2 / 2.0 * l3 + l2 * (l3 * l3 / 2.0));
  CHECK(rho(c3, s.factorize(12)) == doctest::Approx(want12).epsilon(1e-12));
  // 30 = 2 * 3 * 5 at lambda = 3: 3! log2 log3 log5.
  CHECK(rho(c3, s.factorize(30)) == doctest::Approx(6 * l2 * l3 * l5).epsilon(1e-12));
}

TEST_CASE("squarefree semiprimes at lambda 2") {
  const auto& s = shared_sieve();
  RhoContext c2(2);
  for (i64 p : {2, 3, 5, 7, 11}) {
    for (i64 q : {13, 17, 19, 23}) {
      double want = 2.0 * std::log((double)p) * std::log((double)q);
      CHECK(rho(c2, s.factorize(p * q)) == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("agrees with the tuple-enumeration oracle") {
  const auto& s = shared_sieve();
  for (int lambda = 1; lambda <= 4; lambda++) {
    RhoContext ctx(lambda);
    for (i64 n = 1; n <= 600; n++) {
      double got = rho(ctx, s.factorize(n));
      double want = rho_oracle(lambda, n, s);
      CHECK(rel_err(got, want) <= 1e-9);
    }
  }
}

TEST_CASE("oracle caps its own scale") {
  const auto& s = shared_sieve();
  CHECK_THROWS_AS((void)rho_oracle(5, 10, s), error);
  CHECK_THROWS_AS((void)rho_oracle(0, 10, s), error);
  CHECK_THROWS_AS((void)rho_oracle(2, 10001, s), error);
  CHECK_NOTHROW((void)rho_oracle(4, 10000, s));
}

TEST_CASE("vanishing and sign") {
  const auto& s = shared_sieve();
  for (int lambda = 1; lambda <= 6; lambda++) {
    RhoContext ctx(lambda);
    CHECK(rho(ctx, s.factorize(1)) == 0.0);
    for (i64 n = 2; n <= 2000; n++) {
      double v = rho(ctx, s.factorize(n));
      CHECK(v >= 0.0);
      // More prime factors than parts forces zero.
      if ((int)s.factorize(n).omega() > lambda) CHECK(v == 0.0);
    }
  }
}

TEST_CASE("log power bound at scale") {
  const auto& s = shared_sieve();
  for (int lambda = 1; lambda <= 5; lambda++) {
    RhoContext ctx(lambda);
    for (i64 n = 2; n <= 100000; n++) {
      double bound = std::pow(std::log((double)n), (double)lambda);
      CHECK(rho(ctx, s.factorize(n)) <= bound * (1 + 1e-12));
    }
  }
}

TEST_CASE("large lambda stays finite and exact factorials are used") {
  RhoContext ctx(20);
  // 2^20 has a single prime, so rho_20 = (20^20 - 19^20)(log 2)^20 / 20!
  // times 20!; everything cancels to (20^20 - 19^20)(log 2)^20.
  FactoredInt f;
  f.n = i64(1) << 20;
  f.factors = {{2, 20}};
  double l2 = std::log(2.0);
  double want = (std::pow(20.0, 20) - std::pow(19.0, 20)) * std::pow(l2, 20);
  CHECK(rho(ctx, f) == doctest::Approx(want).epsilon(1e-9));
}
