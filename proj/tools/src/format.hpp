#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lucasgcd/modmath.hpp"

namespace lucasgcd::cli {

// Bad flags or malformed values; mapped to exit code 2 by main.
struct usage_error : std::runtime_error {
  explicit usage_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Shortest decimal string that round-trips, capped at 12 significant
// digits (when the shortest form needs more, a 12-digit rendering is
// used instead). Deterministic: same double, same bytes.
std::string format_real(double v);

using Cell = std::variant<i64, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> cells);
};

// CSV with a header row; fields quoted per RFC 4180 only when needed.
std::string render_csv(const Table& t);

// JSON array of objects, one object per line, fields in column order.
// Non-finite reals are emitted as quoted strings.
std::string render_json(const Table& t);

// Comma-separated integers with scientific notation allowed
// ("1e3,1e4,1e5"). Values must be positive integers; throws usage_error
// otherwise.
std::vector<i64> parse_grid(const std::string& text);

// One positive integer, scientific notation allowed ("1e6").
i64 parse_scalar(const std::string& text);

}  // namespace lucasgcd::cli
