#pragma once

#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <utility>

#include "lucasgcd/errors.hpp"
#include "lucasgcd/modmath.hpp"
#include "lucasgcd/sieve.hpp"

namespace lucasgcd {

// Coefficients of u_0 = 0, u_1 = 1, u_n = a1 u_{n-1} + a2 u_{n-2}.
// Validated nondegenerate by make_params: gcd(a1, a2) = 1, a2 != 0,
// delta = a1^2 + 4 a2 != 0, and u_k != 0 for k = 1..6 (with delta != 0 this
// rules out a root-of-unity ratio of the characteristic roots).
struct LucasParams {
  i64 a1 = 1;
  i64 a2 = 1;
  i64 delta = 5;
};

// |a1|, |a2| <= 10^6 keeps the degeneracy probe exact in 128-bit arithmetic.
LucasParams make_params(i64 a1, i64 a2);

// (u_n mod m, u_{n+1} mod m) in O(log n) by doubling:
//   u_{2k}   = u_k (2 u_{k+1} - a1 u_k)
//   u_{2k+1} = u_{k+1}^2 + a2 u_k^2
// pre: 1 <= m <= 2^62 (products stay exact in the 128-bit intermediates).
std::pair<u64, u64> lucas_pair_mod(const LucasParams& P, u64 n, u64 m);

// g(n) = gcd(n, u_n). pre: n >= 1. Equals n exactly when n | u_n.
i64 g(const LucasParams& P, i64 n);

// Cache of prime-power ranks z(p^j), safe for concurrent use: reads take a
// shared lock, insertions an exclusive one. Ranks depend on the sequence,
// so the table binds to the first (a1, a2) it serves and rejects any other;
// for one sequence entries are pure functions of (p, j) and a racing
// recomputation stores the same value.
class RankTable {
 public:
  std::optional<i64> lookup(i64 p, int j) const {
    std::shared_lock lk(mu_);
    auto it = z_.find(key(p, j));
    if (it == z_.end()) return std::nullopt;
    return it->second;
  }
  void store(i64 p, int j, i64 z) {
    std::unique_lock lk(mu_);
    z_.emplace(key(p, j), z);
  }
  std::size_t size() const {
    std::shared_lock lk(mu_);
    return z_.size();
  }
  // Throws invalid_input when the table already served a different sequence.
  void bind(const LucasParams& P);

 private:
  static u64 key(i64 p, int j) { return (u64)p * 64 + (u64)j; }
  mutable std::shared_mutex mu_;
  std::unordered_map<u64, i64> z_;
  bool bound_ = false;
  i64 a1_ = 0, a2_ = 0;
};

// z(p): least n >= 1 with p | u_n. pre: p prime, p does not divide a2.
// For p not dividing 2*delta*a2 this is the least divisor d of
// p - (delta | p) with u_d ≡ 0 (mod p); for p | 2*delta it is a linear scan,
// hard-bounded by 2p. Every result is an actual verified zero of u mod p.
// The sieve, when given and in range, factors p -+ 1; otherwise trial
// division is used.
i64 rank_prime(const LucasParams& P, i64 p, const PrimeSieve* sieve = nullptr);

// z(p^j) by verified lifting: z(p^i) is z(p^{i-1}) or p*z(p^{i-1}), decided
// by a divisibility test at each level (never an unverified formula).
i64 rank_prime_power(const LucasParams& P, i64 p, int j, RankTable& cache,
                     const PrimeSieve* sieve = nullptr);

// z(m) = lcm of z(p^j) over the prime powers of m; z(1) = 1.
// pre: gcd(m, a2) = 1.
i64 rank_factored(const LucasParams& P, const FactoredInt& f, RankTable& cache,
                  const PrimeSieve* sieve = nullptr);
i64 rank(const LucasParams& P, i64 m, RankTable& cache, const PrimeSieve* sieve = nullptr);

// ell(m) = lcm(m, z(m)); ell(1) = 1. Satisfies ell(m) <= 2 m^2.
i64 ell(const LucasParams& P, i64 m, RankTable& cache, const PrimeSieve* sieve = nullptr);
i64 ell_factored(const LucasParams& P, const FactoredInt& f, RankTable& cache,
                 const PrimeSieve* sieve = nullptr);

// gamma(r) = #{d : gcd(d, a2) = 1, ell(d) = r}. Any such d divides ell(d) = r,
// so this enumerates divisors of r; gamma(r) <= tau(r).
i64 gamma_count(const LucasParams& P, i64 r, RankTable& cache, const PrimeSieve* sieve = nullptr);

}  // namespace lucasgcd
