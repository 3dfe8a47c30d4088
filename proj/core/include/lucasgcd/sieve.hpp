#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lucasgcd/errors.hpp"
#include "lucasgcd/modmath.hpp"

namespace lucasgcd {

// An integer with its prime-power factorization, smallest prime first.
struct FactoredInt {
  i64 n = 1;
  std::vector<std::pair<i64, int>> factors;  // (prime, exponent)
  int omega() const { return (int)factors.size(); }
};

// Smallest-prime-factor table plus a bit-packed primality view. Construction
// is windowed (fixed 2^20-entry segments) so marking stays cache-resident;
// the full SPF table is kept at 4 bytes per integer, bounded by max_entries.
class PrimeSieve {
 public:
  static constexpr i64 default_max_entries = 200'000'000;
  static constexpr i64 segment_size = i64(1) << 20;

  explicit PrimeSieve(i64 limit, i64 max_entries = default_max_entries);

  i64 limit() const { return limit_; }

  bool is_prime(i64 n) const {
    check_range(n);
    return n >= 2 && prime_bit(n);
  }

  i64 spf(i64 n) const {
    check_range(n);
    if (n < 2) fail(errc::invalid_input, "spf needs n >= 2");
    return spf_[(size_t)n];
  }

  // pre: 1 <= n <= limit. Exponents by repeated SPF division.
  void factorize_into(i64 n, FactoredInt& out) const;
  FactoredInt factorize(i64 n) const {
    FactoredInt f;
    factorize_into(n, f);
    return f;
  }

  // Unchecked primality bit; callers validate the range once per scan.
  bool prime_bit(i64 n) const { return (bits_[(size_t)(n >> 6)] >> (n & 63)) & 1; }

  // Primes <= x by word popcounts. pre: 0 <= x <= limit.
  i64 prime_count(i64 x) const;

 private:
  void check_range(i64 n) const {
    if (n < 0 || n > limit_) fail(errc::out_of_range, "value beyond sieve limit");
  }

  i64 limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<u64> bits_;
};

// Trial-division factorization for values outside any sieve; fine for the
// occasional large argument (cost ~ sqrt(n)/2 divisions).
FactoredInt factorize_trial(i64 n);

i64 euler_phi(const FactoredInt& f);
i64 tau(const FactoredInt& f);

// Legendre symbol (a | p) for odd prime p, by Euler's criterion.
int legendre(i64 a, i64 p);

// pi(x): number of primes <= x. pre: 0 <= x <= limit.
i64 pi(const PrimeSieve& s, i64 x);

// pi(x; b, a): primes p <= x, p ≡ a (mod b). pre: gcd(a, b) = 1, x <= limit.
i64 pi_progression(const PrimeSieve& s, i64 x, i64 b, i64 a);

// Delta(x; b, a) = pi(x; b, a) - pi(x)/phi(b). pre: b <= limit as well.
double delta_ap(const PrimeSieve& s, i64 x, i64 b, i64 a);

// Phi(x, y) = #{n <= x : P(n) < y} with the convention P(1) := 1, so n = 1
// always counts. Strict inequality: only primes < y may divide n. Reads
// primes up to min(y - 1, x) from the sieve, so x itself may exceed limit.
i64 smooth_count(const PrimeSieve& s, i64 x, i64 y);

// Deterministic Miller-Rabin, valid for every n < 2^64.
bool is_prime_u64(u64 n);

// Least prime p ≡ a (mod d) with p <= search_limit, or nullopt if the scan
// exhausts the limit. pre: gcd(a, d) = 1.
std::optional<u64> least_prime_in_ap(i64 a, i64 d, u64 search_limit);

}  // namespace lucasgcd
