#include "lucasgcd/constants.hpp"

#include <cmath>
#include <numeric>

#include "lucasgcd/parallel.hpp"

namespace lucasgcd {

namespace {

struct Masses {
  double total = 0, mid = 0, last = 0;  // all, (N/100, N/10], (N/10, N]
};

// The merge order over chunks is fixed, so results are thread-count
// invariant; see parallel.hpp.
Masses series_masses(const LucasParams& P, const PrimeSieve& s, RankTable& cache, int lambda,
                     i64 n_limit, ConstantKind kind, int threads) {
  RhoContext ctx(lambda);
  i64 lo_cut = n_limit / 100, hi_cut = n_limit / 10;
  auto parts =
      chunked_map<Masses>(2, n_limit + 1, default_chunk, threads, [&](i64 lo, i64 hi) {
        Masses m;
        kahan_sum total, mid, last;
        FactoredInt f, zf;
        for (i64 n = lo; n < hi; ++n) {
          s.factorize_into(n, f);
          if (f.omega() > lambda) continue;
          if (std::gcd(n, P.a2) != 1) continue;
          double r = rho(ctx, f);
          double term;
          if (kind == ConstantKind::M) {
            term = r / (double)ell_factored(P, f, cache, &s);
          } else {
            // phi(ell(n)) from ell(n) = lcm(n, z(n)): merge the exponent
            // maxima of n and z(n), both within the sieve (z(n) <= 2n).
            i64 z = rank_factored(P, f, cache, &s);
            s.factorize_into(z, zf);
            i64 phi = 1;
            size_t i = 0, j = 0;
            while (i < f.factors.size() || j < zf.factors.size()) {
              i64 p;
              int e;
              if (j == zf.factors.size() ||
                  (i < f.factors.size() && f.factors[i].first < zf.factors[j].first)) {
                p = f.factors[i].first, e = f.factors[i].second, ++i;
              } else if (i == f.factors.size() || zf.factors[j].first < f.factors[i].first) {
                p = zf.factors[j].first, e = zf.factors[j].second, ++j;
              } else {
                p = f.factors[i].first, e = std::max(f.factors[i].second, zf.factors[j].second);
                ++i, ++j;
              }
              phi *= p - 1;
              for (int k = 1; k < e; ++k) phi *= p;
            }
            term = r / (double)phi;
          }
          total.add(term);
          if (n > hi_cut)
            last.add(term);
          else if (n > lo_cut)
            mid.add(term);
        }
        m.total = total.sum;
        m.mid = mid.sum;
        m.last = last.sum;
        return m;
      });
  kahan_sum total, mid, last;
  for (const Masses& p : parts) {
    total.add(p.total);
    mid.add(p.mid);
    last.add(p.last);
  }
  return Masses{total.sum, mid.sum, last.sum};
}

}  // namespace

ConstantEstimate constant_series(const LucasParams& P, const PrimeSieve& s, RankTable& cache,
                                 int lambda, i64 n_limit, ConstantKind kind, int threads) {
  if (lambda < 1 || lambda > RhoContext::max_lambda)
    fail(lambda > RhoContext::max_lambda ? errc::lambda_too_large : errc::invalid_input,
         "lambda must be in [1, 20]");
  if (n_limit < 1) fail(errc::invalid_input, "N must be >= 1");
  i64 need = kind == ConstantKind::P ? 2 * n_limit : n_limit;
  if (need > s.limit())
    fail(errc::out_of_range,
         kind == ConstantKind::P ? "kind P needs sieve limit >= 2N" : "N beyond sieve limit");

  ConstantEstimate est;
  est.kind = kind;
  est.lambda = lambda;
  est.truncation_n = n_limit;
  if (n_limit < 2) return est;

  Masses m = series_masses(P, s, cache, lambda, n_limit, kind, threads);
  est.partial_sum = m.total;
  est.last_decade_mass = m.last;
  if (m.mid > 0 && m.last > 0) {
    double r = m.last / m.mid;
    if (r < 0.99) est.tail_estimate = m.last * r / (1.0 - r);
  }
  return est;
}

double incomplete_gamma(int n, double x) {
  if (n < 1) fail(errc::invalid_input, "n must be >= 1");
  if (n > RhoContext::max_lambda) fail(errc::lambda_too_large, "n capped at 20");
  if (!(x >= 0)) fail(errc::invalid_input, "x must be >= 0");
  double term = 1.0, partial = 1.0;  // x^k / k!, k = 0
  for (int k = 1; k < n; ++k) {
    term *= x / (double)k;
    partial += term;
  }
  double fact = 1.0;
  for (int k = 2; k < n; ++k) fact *= (double)k;
  return fact * std::exp(-x) * partial;
}

namespace {

double simpson(double (*f)(double, int), int n, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm, n), frm = f(rm, n);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson(f, n, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(f, n, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double gamma_integrand(double t, int n) {
  double r = std::exp(-t);
  for (int k = 1; k < n; ++k) r *= t;
  return r;
}

}  // namespace

double incomplete_gamma_quadrature(int n, double x) {
  if (n < 1) fail(errc::invalid_input, "n must be >= 1");
  if (n > RhoContext::max_lambda) fail(errc::lambda_too_large, "n capped at 20");
  if (!(x >= 0)) fail(errc::invalid_input, "x must be >= 0");
  // Upper cutoff: the discarded tail is ~ T^{n-1} e^{-T}, driven below double
  // precision relative to Gamma(n, x) >= e^{-x} by T = x + 60 + 8n.
  double upper = x + 60.0 + 8.0 * (double)n;
  double fa = gamma_integrand(x, n), fb = gamma_integrand(upper, n);
  double m = 0.5 * (x + upper);
  double fm = gamma_integrand(m, n);
  double whole = (upper - x) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(gamma_integrand, n, x, upper, fa, fm, fb, whole, 1e-13 * std::max(1.0, whole), 48);
}

std::vector<GrowthRow> growth_table(const LucasParams& P, const PrimeSieve& s, RankTable& cache,
                                    std::span<const int> lambdas, i64 n_limit, int threads) {
  std::vector<GrowthRow> rows;
  rows.reserve(lambdas.size());
  for (int lambda : lambdas) {
    GrowthRow r;
    r.lambda = lambda;
    r.log_m =
        std::log(constant_series(P, s, cache, lambda, n_limit, ConstantKind::M, threads).partial_sum);
    r.log_p =
        std::log(constant_series(P, s, cache, lambda, n_limit, ConstantKind::P, threads).partial_sum);
    r.lambda_log_lambda = (double)lambda * std::log((double)lambda);
    rows.push_back(r);
  }
  return rows;
}

std::vector<std::pair<i64, double>> tail_profile(const LucasParams& P, const PrimeSieve& s,
                                                 RankTable& cache, int lambda, ConstantKind kind,
                                                 std::span<const i64> n_grid, int threads) {
  for (size_t i = 1; i < n_grid.size(); ++i)
    if (n_grid[i] <= n_grid[i - 1]) fail(errc::invalid_input, "grid must ascend");
  std::vector<std::pair<i64, double>> rows;
  rows.reserve(n_grid.size());
  for (i64 n : n_grid)
    rows.emplace_back(n, constant_series(P, s, cache, lambda, n, kind, threads).partial_sum);
  return rows;
}

double prime_minorant(const LucasParams& P, const PrimeSieve& s, int lambda, i64 n_limit) {
  if (lambda < 1 || lambda > RhoContext::max_lambda)
    fail(lambda > RhoContext::max_lambda ? errc::lambda_too_large : errc::invalid_input,
         "lambda must be in [1, 20]");
  if (n_limit < 1) fail(errc::invalid_input, "N must be >= 1");
  if (n_limit > s.limit()) fail(errc::out_of_range, "N beyond sieve limit");
  i64 a2 = std::abs(P.a2);
  kahan_sum sum;
  for (i64 p = a2 + 1; p <= n_limit; ++p) {
    if (!s.prime_bit(p)) continue;
    double lg = std::log((double)p);
    double t = 1.0;
    for (int k = 0; k < lambda; ++k) t *= lg;
    sum.add(t / ((double)p * (double)p));
  }
  return 0.5 * sum.sum;
}

}  // namespace lucasgcd
