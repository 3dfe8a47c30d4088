#pragma once

#include <span>
#include <vector>

#include "lucasgcd/lucas.hpp"
#include "lucasgcd/parallel.hpp"
#include "lucasgcd/rho.hpp"

namespace lucasgcd {

enum class Domain { all_integers, shifted_primes };

struct MomentReport {
  i64 x = 0;
  int lambda = 0;
  double direct_sum = 0;    // sum over the domain of (log g(n))^lambda
  double identity_sum = 0;  // rho-weighted progression/multiple counts
  double normalizer = 0;    // x (all integers) or pi(x) (shifted primes)
  double ratio = 0;         // direct_sum / normalizer, 0 when normalizer = 0
};

// Direct side. Shifted domain: n = p - 1 over primes p <= x; p = 2
// contributes (log g(1))^lambda = 0 and is included.
double moment_direct(const LucasParams& P, const PrimeSieve& s, int lambda, i64 x, Domain dom,
                     int threads = 1);

// Identity side over shifted primes:
//   sum_{d <= x, gcd(d, a2) = 1} rho_lambda(d) * pi(x; ell(d), 1),
// skipping ell(d) > x - 1 (empty progressions: p ≡ 1 mod ell(d) forces
// p >= ell(d) + 1). Equals the direct shifted sum exactly.
double moment_via_identity(const LucasParams& P, const PrimeSieve& s, RankTable& cache, int lambda,
                           i64 x, int threads = 1);

// Identity side over all integers:
//   sum_{d <= x, gcd(d, a2) = 1} rho_lambda(d) * floor(x / ell(d)).
double moment_via_identity_integers(const LucasParams& P, const PrimeSieve& s, RankTable& cache,
                                    int lambda, i64 x, int threads = 1);

// Pointwise form: (log g(n))^lambda = sum of rho_lambda(d) over divisors
// d >= 2 of n with gcd(d, a2) = 1 and ell(d) | n. Factors n by trial
// division; intended for desk-scale n.
double pointwise_identity(const LucasParams& P, RankTable& cache, int lambda, i64 n);

// One report per grid point (both sides computed, plus the normalized ratio).
std::vector<MomentReport> moment_table(const LucasParams& P, const PrimeSieve& s, RankTable& cache,
                                       int lambda, std::span<const i64> grid, Domain dom,
                                       int threads = 1);

}  // namespace lucasgcd
