#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "format.hpp"
#include "lucasgcd/constants.hpp"
#include "lucasgcd/errors.hpp"
#include "lucasgcd/extremes.hpp"
#include "lucasgcd/lucas.hpp"
#include "lucasgcd/moments.hpp"
#include "lucasgcd/sieve.hpp"
#include "verify.hpp"

namespace {

using namespace lucasgcd;
using cli::Cell;
using cli::Table;
using cli::usage_error;

struct Options {
  i64 a1 = 1, a2 = 1;  // Fibonacci unless told otherwise
  int lambda = 1;
  std::string x;  // size flags stay strings so 1e6 style values parse
  std::string grid;
  std::string N;
  std::string kind = "both";
  double y = 0;
  int m = 2;
  i64 q = 0;
  int kmax = 4;
  std::string z;
  std::string limit;
  std::string domain = "shifted";
  std::string format = "csv";
  int threads = 1;
  std::string out;
};

void check_common(const Options& o) {
  if (o.threads < 1 || o.threads > 256) throw usage_error("--threads must be in [1, 256]");
  if (o.format != "csv" && o.format != "json") throw usage_error("--format must be csv or json");
  if (o.lambda < 1 || o.lambda > 20) throw usage_error("--lambda must be in [1, 20]");
}

Domain parse_domain(const std::string& d) {
  if (d == "all") return Domain::all_integers;
  if (d == "shifted") return Domain::shifted_primes;
  throw usage_error("--domain must be all or shifted");
}

std::string domain_name(Domain d) { return d == Domain::all_integers ? "all" : "shifted"; }

void emit(const Options& o, const Table& t) {
  std::string text = o.format == "csv" ? cli::render_csv(t) : cli::render_json(t);
  if (o.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw error(errc::invalid_input, "cannot open output file " + o.out);
    f.write(text.data(), (std::streamsize)text.size());
  }
}

int cmd_verify(const Options& o) {
  auto P = make_params(o.a1, o.a2);
  Table t = cli::run_verify(P, o.threads);
  emit(o, t);
  return cli::all_passed(t) ? 0 : 1;
}

int cmd_moments(const Options& o) {
  auto P = make_params(o.a1, o.a2);
  Domain dom = parse_domain(o.domain);
  std::vector<i64> grid;
  if (!o.grid.empty())
    grid = cli::parse_grid(o.grid);
  else if (!o.x.empty())
    grid = {cli::parse_scalar(o.x)};
  else
    throw usage_error("moments needs --grid or --x");
  i64 xmax = *std::max_element(grid.begin(), grid.end());

  PrimeSieve sieve(std::max<i64>(xmax, 1000));
  RankTable cache;
  auto rows = moment_table(P, sieve, cache, o.lambda, grid, dom, o.threads);
  Table t;
  t.columns = {"x", "lambda", "domain", "direct_sum", "identity_sum", "normalizer", "ratio"};
  for (const auto& r : rows)
    t.add_row({r.x, (i64)r.lambda, domain_name(dom), r.direct_sum, r.identity_sum, r.normalizer,
               r.ratio});
  emit(o, t);
  return 0;
}

int cmd_constants(const Options& o) {
  auto P = make_params(o.a1, o.a2);
  if (o.kind != "M" && o.kind != "P" && o.kind != "both")
    throw usage_error("--kind must be M, P or both");
  std::vector<i64> grid;
  if (!o.grid.empty())
    grid = cli::parse_grid(o.grid);
  else if (!o.N.empty())
    grid = {cli::parse_scalar(o.N)};
  else
    throw usage_error("constants needs --N or --grid");
  i64 nmax = *std::max_element(grid.begin(), grid.end());

  // The P weights need phi(ell(n)) with z(n) <= 2n, so factor up to 2 N.
  PrimeSieve sieve(std::max<i64>(2 * nmax, 1000));
  RankTable cache;
  std::vector<ConstantKind> kinds;
  if (o.kind == "M" || o.kind == "both") kinds.push_back(ConstantKind::M);
  if (o.kind == "P" || o.kind == "both") kinds.push_back(ConstantKind::P);

  Table t;
  t.columns = {"kind", "lambda", "N", "partial_sum", "last_decade_mass", "tail_estimate"};
  for (i64 N : grid) {
    for (ConstantKind k : kinds) {
      auto est = constant_series(P, sieve, cache, o.lambda, N, k, o.threads);
      t.add_row({std::string(k == ConstantKind::M ? "M" : "P"), (i64)o.lambda, N, est.partial_sum,
                 est.last_decade_mass, est.tail_estimate});
    }
  }
  emit(o, t);
  return 0;
}

int cmd_dist(const Options& o) {
  auto P = make_params(o.a1, o.a2);
  if (o.x.empty()) throw usage_error("dist needs --x");
  i64 x = cli::parse_scalar(o.x);
  std::vector<double> ys;
  if (!o.grid.empty()) {
    for (i64 v : cli::parse_grid(o.grid)) ys.push_back((double)v);
  } else if (o.y > 1) {
    ys.push_back(o.y);
  } else {
    throw usage_error("dist needs --y > 1 or --grid of thresholds");
  }

  PrimeSieve sieve(std::max<i64>(x, 1000));
  Table t;
  t.columns = {"x", "y", "count", "bound_ratio_l1", "bound_ratio_l2"};
  for (double y : ys) {
    if (y <= 1) throw usage_error("every threshold must exceed 1");
    auto c = count_exceed(P, sieve, x, y, o.threads);
    t.add_row({c.x, c.y, c.count, c.bound_ratio_l1, c.bound_ratio_l2});
  }
  emit(o, t);
  return 0;
}

int cmd_max(const Options& o) {
  auto P = make_params(o.a1, o.a2);
  if (o.q > 0) {
    // Tower probe: least prime ≡ 1 mod q^k for k = 1..kmax.
    if (o.kmax < 1 || o.kmax > 40) throw usage_error("--kmax must be in [1, 40]");
    u64 search_limit = o.limit.empty() ? 100000000 : (u64)cli::parse_scalar(o.limit);
    auto rows = least_prime_tower(P, o.q, o.kmax, search_limit);
    Table t;
    t.columns = {"k", "modulus", "least_prime", "divides", "observed_exponent"};
    for (const auto& r : rows)
      t.add_row({(i64)r.k, r.modulus, r.least_prime, (i64)(r.divides ? 1 : 0),
                 r.observed_exponent});
    emit(o, t);
    return 0;
  }
  if (o.x.empty()) throw usage_error("max needs --x (or --q for a tower probe)");
  i64 x = cli::parse_scalar(o.x);
  Domain dom = parse_domain(o.domain);
  PrimeSieve sieve(std::max<i64>(x, 1000));
  auto r = max_g(P, sieve, x, dom, o.threads);
  Table t;
  t.columns = {"x", "domain", "max_value", "argmax", "observed_exponent"};
  t.add_row({r.x, domain_name(dom), r.max_value, r.argmax, r.observed_exponent});
  emit(o, t);
  return 0;
}

int cmd_runs(const Options& o) {
  auto P = make_params(o.a1, o.a2);
  if (o.m < 2 || o.m > 64) throw usage_error("--m must be in [2, 64]");
  i64 y = (i64)o.y;
  if (y < 1 || (double)y != o.y) throw usage_error("runs needs an integer --y >= 1");
  i64 limit = o.limit.empty() ? 1000000 : cli::parse_scalar(o.limit);
  PrimeSieve sieve(std::max<i64>(limit, 1000));
  RankTable cache;
  auto runs = find_runs(P, sieve, cache, o.m, y, limit);
  Table t;
  t.columns = {"m", "y", "threshold", "modulus", "start_prime", "gap", "primes"};
  for (const auto& w : runs) {
    std::string primes;
    for (size_t i = 0; i < w.primes.size(); i++) {
      if (i) primes += ' ';
      primes += std::to_string(w.primes[i]);
    }
    t.add_row({(i64)w.m, y, w.threshold, w.modulus, w.start_prime, w.gap, primes});
  }
  emit(o, t);
  return 0;
}

int cmd_bv(const Options& o) {
  auto P = make_params(o.a1, o.a2);
  if (o.x.empty()) throw usage_error("bv needs --x >= 2");
  if (o.z.empty()) throw usage_error("bv needs --z >= 1");
  i64 x = cli::parse_scalar(o.x);
  i64 z = cli::parse_scalar(o.z);
  if (x < 2) throw usage_error("bv needs --x >= 2");
  PrimeSieve sieve(std::max<i64>(x, 1000));
  RankTable cache;
  auto r = bv_diagnostic(P, sieve, cache, x, z);
  Table t;
  t.columns = {"x", "z", "weighted_sum", "ref_log1", "ref_log2", "ref_log3"};
  t.add_row({r.x, r.z, r.weighted_sum, r.ref_a1, r.ref_a2, r.ref_a3});
  emit(o, t);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lucas sequence gcd experiments: moments, constants, extremal scans"};
  app.require_subcommand(1);

  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--a1", o.a1, "First recurrence coefficient (default 1)");
    sub->add_option("--a2", o.a2, "Second recurrence coefficient (default 1)");
    sub->add_option("--lambda", o.lambda, "Moment exponent (default 1)");
    sub->add_option("--threads", o.threads, "Worker threads (default 1)");
    sub->add_option("--format", o.format, "Output format: csv or json (default csv)");
    sub->add_option("--out", o.out, "Output path (default stdout)");
  };

  auto* verify = app.add_subcommand("verify", "Run the invariant suite at desk scale");
  add_common(verify);

  auto* moments = app.add_subcommand("moments", "Moment sums of log g, direct and via identity");
  add_common(moments);
  moments->add_option("--x", o.x, "Single evaluation point");
  moments->add_option("--grid", o.grid, "Comma list of points, e.g. 1e3,1e4");
  moments->add_option("--domain", o.domain, "all or shifted (default shifted)");

  auto* constants = app.add_subcommand("constants", "Truncated series for the moment constants");
  add_common(constants);
  constants->add_option("--N", o.N, "Truncation point");
  constants->add_option("--grid", o.grid, "Comma list of truncation points");
  constants->add_option("--kind", o.kind, "M, P or both (default both)");

  auto* dist = app.add_subcommand("dist", "Count shifted primes with g(p-1) above a threshold");
  add_common(dist);
  dist->add_option("--x", o.x, "Scan limit");
  dist->add_option("--y", o.y, "Threshold (> 1)");
  dist->add_option("--grid", o.grid, "Comma list of thresholds");

  auto* max = app.add_subcommand("max", "Maximum of g up to x, or least-prime tower with --q");
  add_common(max);
  max->add_option("--x", o.x, "Scan limit");
  max->add_option("--domain", o.domain, "all or shifted (default shifted)");
  max->add_option("--q", o.q, "Tower base: prime divisor of the discriminant");
  max->add_option("--kmax", o.kmax, "Tower height (default 4)");
  max->add_option("--limit", o.limit, "Tower search limit (default 1e8)");

  auto* runs = app.add_subcommand("runs", "Runs of consecutive primes with g(p-1) above y");
  add_common(runs);
  runs->add_option("--m", o.m, "Run length (default 2)");
  runs->add_option("--y", o.y, "Threshold the run must exceed");
  runs->add_option("--limit", o.limit, "Prime scan limit (default 1e6)");

  auto* bv = app.add_subcommand("bv", "Weighted progression-deviation diagnostic");
  add_common(bv);
  bv->add_option("--x", o.x, "Prime counting limit");
  bv->add_option("--z", o.z, "Modulus limit (z^2 <= x)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    check_common(o);
    if (verify->parsed()) return cmd_verify(o);
    if (moments->parsed()) return cmd_moments(o);
    if (constants->parsed()) return cmd_constants(o);
    if (dist->parsed()) return cmd_dist(o);
    if (max->parsed()) return cmd_max(o);
    if (runs->parsed()) return cmd_runs(o);
    if (bv->parsed()) return cmd_bv(o);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
