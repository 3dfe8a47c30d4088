#pragma once

#include <span>
#include <utility>
#include <vector>

#include "lucasgcd/lucas.hpp"
#include "lucasgcd/rho.hpp"

namespace lucasgcd {

enum class ConstantKind { M, P };  // term weights 1/ell(n) vs 1/phi(ell(n))

struct ConstantEstimate {
  ConstantKind kind = ConstantKind::M;
  int lambda = 1;
  i64 truncation_n = 0;
  double partial_sum = 0;
  double last_decade_mass = 0;  // terms with n in (N/10, N]
  double tail_estimate = 0;     // geometric decade extrapolation; heuristic
};

// Truncation of sum_{gcd(n, a2) = 1} rho_lambda(n)/ell(n) (kind M) or
// rho_lambda(n)/phi(ell(n)) (kind P) at n <= N. All terms are nonnegative,
// so partial sums are nondecreasing in N and the M sum never exceeds the P
// sum. Kind P factors z(n) <= 2n to build phi(ell(n)) and therefore needs
// sieve.limit() >= 2N; kind M needs sieve.limit() >= N.
//
// tail_estimate fits the final two decade masses D1 = mass(N/100, N/10],
// D2 = mass(N/10, N] to a geometric decay and reports D2 r/(1 - r) with
// r = D2/D1; 0 when the fit is undefined (D1 or D2 empty, or r >= 0.99).
ConstantEstimate constant_series(const LucasParams& P, const PrimeSieve& s, RankTable& cache,
                                 int lambda, i64 n_limit, ConstantKind kind, int threads = 1);

// Gamma(n, x) = (n-1)! e^{-x} sum_{k < n} x^k / k!, integer n in [1, 20],
// x >= 0.
double incomplete_gamma(int n, double x);

// Independent route for the same quantity: adaptive Simpson quadrature of
// int_x^T t^{n-1} e^{-t} dt with T far enough out that the truncated tail is
// below double precision relative to the value.
double incomplete_gamma_quadrature(int n, double x);

struct GrowthRow {
  int lambda = 1;
  double log_m = 0;
  double log_p = 0;
  double lambda_log_lambda = 0;
};

// log of both truncated constants per lambda, next to the lambda log lambda
// growth shape they are expected to track.
std::vector<GrowthRow> growth_table(const LucasParams& P, const PrimeSieve& s, RankTable& cache,
                                    std::span<const int> lambdas, i64 n_limit, int threads = 1);

// Partial sums at each N of an ascending grid (each entry bit-identical to a
// standalone constant_series run at that N).
std::vector<std::pair<i64, double>> tail_profile(const LucasParams& P, const PrimeSieve& s,
                                                 RankTable& cache, int lambda, ConstantKind kind,
                                                 std::span<const i64> n_grid, int threads = 1);

// (1/2) sum_{|a2| < p <= N} (log p)^lambda / p^2, straight off the primes:
// a lower bound for the M series since rho_lambda(p) = (log p)^lambda and
// ell(p) <= 2p^2.
double prime_minorant(const LucasParams& P, const PrimeSieve& s, int lambda, i64 n_limit);

}  // namespace lucasgcd
