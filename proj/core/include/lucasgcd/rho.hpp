#pragma once

#include <array>

#include "lucasgcd/errors.hpp"
#include "lucasgcd/sieve.hpp"

namespace lucasgcd {

// Weights from expanding (sum of prime logs)^lambda: for
// n = q_1^{h_1} ... q_s^{h_s},
//   rho_lambda(n) = lambda! * sum over (l_1,...,l_s), l_i >= 1,
//                   l_1+...+l_s = lambda, of
//                   prod_i (h_i^{l_i} - (h_i - 1)^{l_i}) (log q_i)^{l_i} / l_i!
// with rho_lambda(1) = 0. Vanishes when omega(n) > lambda; otherwise
// 0 < rho_lambda(n) <= (log n)^lambda, and rho_lambda(q^h) at h = 1 is
// (log q)^lambda.
class RhoContext {
 public:
  // 20! is the largest factorial exact in 64-bit arithmetic; beyond that the
  // lambda! scaling would silently lose integer exactness.
  static constexpr int max_lambda = 20;

  explicit RhoContext(int lambda);
  int lambda() const { return lambda_; }
  double factorial(int k) const { return fact_[(size_t)k]; }

 private:
  int lambda_;
  std::array<double, max_lambda + 1> fact_{};
};

// Composition DP over the factor list (processed smallest prime first; the
// value is symmetric in the factors).
double rho(const RhoContext& ctx, const FactoredInt& f);

// Brute-force reference: sum over ordered lambda-tuples of prime powers whose
// numeric lcm equals n of prod_i log q_i. Exponential in lambda; refuses
// lambda > 4 or n > 10^4.
double rho_oracle(int lambda, i64 n, const PrimeSieve& sieve);

}  // namespace lucasgcd
