#pragma once

#include <vector>

#include "lucasgcd/lucas.hpp"
#include "lucasgcd/moments.hpp"

namespace lucasgcd {

struct ExceedCount {
  i64 x = 0;
  double y = 0;
  i64 count = 0;              // primes p <= x with g(p-1) > y
  double bound_ratio_l1 = 0;  // count (log y) (log x) / x
  double bound_ratio_l2 = 0;  // count (log y)^2 (log x) / x
};

// Exceedance count over shifted primes, with the bound-shape ratios the
// moment bounds predict stay O(1) for fixed y.
ExceedCount count_exceed(const LucasParams& P, const PrimeSieve& s, i64 x, double y,
                         int threads = 1);

struct MaxScanResult {
  i64 x = 0;
  i64 max_value = 0;
  i64 argmax = 0;                // smallest attaining n (prime p when shifted)
  double observed_exponent = 0;  // log max_value / log x
};

// Max of g over n <= x (all integers) or over g(p-1), p <= x prime (shifted).
// For the all-integer domain with |delta| != 1 the scan result is checked
// against the constructive witness n = p^k <= x < p^{k+1} for the least
// prime p | delta, which forces max >= x/p.
MaxScanResult max_g(const LucasParams& P, const PrimeSieve& s, i64 x, Domain dom, int threads = 1);

struct TowerRow {
  int k = 0;
  i64 modulus = 0;               // q^k
  i64 least_prime = 0;           // least p ≡ 1 (mod q^k)
  bool divides = true;           // q^k | g(p-1), re-checked through g
  double observed_exponent = 0;  // k log q / log p
};

// Least-prime probes along the tower q, q^2, ..., q^kmax for a prime q
// dividing delta (so ell(q^k) = q^k and any p ≡ 1 mod q^k has q^k | g(p-1)).
std::vector<TowerRow> least_prime_tower(const LucasParams& P, i64 q, int k_max, u64 search_limit);

struct RunWitness {
  int m = 0;
  i64 modulus = 0;    // ell(threshold)
  i64 threshold = 0;  // s > y with s | g(p-1) for every prime in the run
  i64 start_prime = 0;
  std::vector<i64> primes;  // m consecutive primes, all ≡ 1 (mod modulus)
  i64 gap = 0;              // last - first
};

// Runs of m consecutive primes p with g(p-1) > y. The threshold s is the
// integer in (y, 2y] coprime to a2 with least ell(s); when |delta| != 1 the
// smallest power of the least prime of delta exceeding y competes as well,
// and the smaller modulus wins. Every witness is re-verified: consecutive in
// the sieve, ≡ 1 mod the modulus, and s | g(p-1). Witnesses come back
// smallest gap first. Empty result = none found (not an error).
std::vector<RunWitness> find_runs(const LucasParams& P, const PrimeSieve& s, RankTable& cache,
                                  int m, i64 y, i64 x_limit);

struct BvReport {
  i64 x = 0, z = 0;
  double weighted_sum = 0;  // sum_{d <= z} gamma(d) |pi(x;d,1) - pi(x)/phi(d)|
  double ref_a1 = 0, ref_a2 = 0, ref_a3 = 0;  // x/(log x)^A, A = 1, 2, 3
};

// Equidistribution diagnostic with the gamma weights the identity sums put
// on each modulus. pre: z <= sqrt(x).
BvReport bv_diagnostic(const LucasParams& P, const PrimeSieve& s, RankTable& cache, i64 x, i64 z);

}  // namespace lucasgcd
