#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "format.hpp"
#include "verify.hpp"

using namespace lucasgcd;
using namespace lucasgcd::cli;

TEST_CASE("reals render shortest, capped at 12 significant digits") {
  CHECK(format_real(1.0) == "1");
  CHECK(format_real(0.5) == "0.5");
  CHECK(format_real(100.0) == "100");
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(-0.0) == "-0");
  CHECK(format_real(1e20) == "1e+20");
  CHECK(format_real(1e-5) == "1e-05");
  CHECK(format_real(9.0e18) == "9e+18");
  // Shortest form needs 16-17 digits; the cap kicks in.
  CHECK(format_real(1.0 / 3.0) == "0.333333333333");
  CHECK(format_real(std::sqrt(2.0)) == "1.41421356237");
  CHECK(format_real(2352.299149270378) == "2352.29914927");
  CHECK(format_real(12345678901234567.0) == "1.23456789012e+16");
  CHECK(format_real(std::nan("")) == "nan");
  CHECK(format_real(INFINITY) == "inf");
  CHECK(format_real(-INFINITY) == "-inf");
}

TEST_CASE("short reals round-trip exactly") {
  for (double v : {0.5, 0.1, 3.5, 1048576.0, 2.5e-8, 1e-300, 279.132142391,
                   -17.25, 4.28375728721}) {
    std::string s = format_real(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  // Capped values still parse back within half an ulp of 12 digits.
  double v = 2352.299149270378;
  CHECK(std::strtod(format_real(v).c_str(), nullptr) ==
        doctest::Approx(v).epsilon(1e-11));
}

TEST_CASE("grid parsing accepts scientific notation") {
  auto g = parse_grid("1e3,1e4,1e5");
  REQUIRE(g.size() == 3);
  CHECK(g[0] == 1000);
  CHECK(g[1] == 10000);
  CHECK(g[2] == 100000);
  auto t = parse_grid(" 5 ,\t6 ");
  CHECK(t == std::vector<i64>{5, 6});
  CHECK(parse_grid("42") == std::vector<i64>{42});
  CHECK(parse_grid("9e18") == std::vector<i64>{9000000000000000000LL});
  CHECK(parse_scalar("1e6") == 1000000);
}

TEST_CASE("grid parsing rejects malformed input") {
  CHECK_THROWS_AS((void)parse_grid(""), usage_error);
  CHECK_THROWS_AS((void)parse_grid("a"), usage_error);
  CHECK_THROWS_AS((void)parse_grid("1.5"), usage_error);
  CHECK_THROWS_AS((void)parse_grid("0"), usage_error);
  CHECK_THROWS_AS((void)parse_grid("-3"), usage_error);
  CHECK_THROWS_AS((void)parse_grid("1e19"), usage_error);
  CHECK_THROWS_AS((void)parse_grid("5,"), usage_error);
  CHECK_THROWS_AS((void)parse_grid("5,,6"), usage_error);
  CHECK_THROWS_AS((void)parse_grid("1e3 1e4"), usage_error);
  CHECK_THROWS_AS((void)parse_scalar("1e3,1e4"), usage_error);
}

TEST_CASE("tables render as CSV with minimal quoting") {
  Table t;
  t.columns = {"n", "value", "note"};
  t.add_row({i64(3), 0.5, std::string("plain")});
  t.add_row({i64(4), 1.0 / 3.0, std::string("a,b")});
  t.add_row({i64(5), 2.0, std::string("say \"hi\"")});
  CHECK(render_csv(t) ==
        "n,value,note\n"
        "3,0.5,plain\n"
        "4,0.333333333333,\"a,b\"\n"
        "5,2,\"say \"\"hi\"\"\"\n");

  Table empty;
  empty.columns = {"x"};
  CHECK(render_csv(empty) == "x\n");
}

TEST_CASE("tables render as a JSON array of objects") {
  Table t;
  t.columns = {"n", "value", "note"};
  t.add_row({i64(3), 0.5, std::string("plain")});
  t.add_row({i64(4), 1.0 / 3.0, std::string("a,b")});
  CHECK(render_json(t) ==
        "[\n"
        "  {\"n\": 3, \"value\": 0.5, \"note\": \"plain\"},\n"
        "  {\"n\": 4, \"value\": 0.333333333333, \"note\": \"a,b\"}\n"
        "]\n");

  Table empty;
  empty.columns = {"x"};
  CHECK(render_json(empty) == "[\n]\n");

  Table esc;
  esc.columns = {"s", "v"};
  esc.add_row({std::string("q\"b\\c\nd"), std::nan("")});
  CHECK(render_json(esc) == "[\n  {\"s\": \"q\\\"b\\\\c\\nd\", \"v\": \"nan\"}\n]\n");
}

TEST_CASE("row width must match the column count") {
  Table t;
  t.columns = {"a", "b"};
  CHECK_THROWS_AS(t.add_row({i64(1)}), std::logic_error);
  CHECK_THROWS_AS(t.add_row({i64(1), i64(2), i64(3)}), std::logic_error);
  CHECK_NOTHROW(t.add_row({i64(1), i64(2)}));
}

TEST_CASE("self-check battery passes for valid sequences") {
  for (auto [a1, a2] : {std::pair<i64, i64>{1, 1}, {2, 1}, {3, -2}}) {
    auto t = run_verify(make_params(a1, a2), 1);
    REQUIRE(t.columns == std::vector<std::string>{"property", "status", "detail"});
    CHECK(t.rows.size() >= 20);
    CHECK(all_passed(t));
    if (!all_passed(t)) {
      for (const auto& row : t.rows)
        if (std::get<std::string>(row[1]) != "pass")
          MESSAGE(std::get<std::string>(row[0]), ": ",
                  std::get<std::string>(row[2]));
    }
  }
}

TEST_CASE("self-check battery is thread invariant") {
  auto t1 = run_verify(make_params(1, 1), 1);
  auto t4 = run_verify(make_params(1, 1), 4);
  REQUIRE(t1.rows.size() == t4.rows.size());
  for (size_t i = 0; i < t1.rows.size(); i++) {
    CHECK(std::get<std::string>(t1.rows[i][0]) == std::get<std::string>(t4.rows[i][0]));
    CHECK(std::get<std::string>(t1.rows[i][1]) == std::get<std::string>(t4.rows[i][1]));
  }
}
