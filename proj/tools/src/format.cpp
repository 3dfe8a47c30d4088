#include "format.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>

namespace lucasgcd::cli {

void Table::add_row(std::vector<Cell> cells) {
  if (cells.size() != columns.size()) throw std::logic_error("row width != column count");
  rows.push_back(std::move(cells));
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string shortest(buf, res.ptr);
  // Count significant digits of the mantissa (leading zeros don't count).
  int sig = 0;
  bool seen_nonzero = false;
  for (char c : shortest) {
    if (c == 'e' || c == 'E') break;
    if (c >= '1' && c <= '9') {
      seen_nonzero = true;
      sig++;
    } else if (c == '0' && seen_nonzero) {
      sig++;
    }
  }
  if (sig <= 12) return shortest;
  auto capped = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, capped.ptr);
}

namespace {

std::string cell_text(const Cell& c) {
  if (std::holds_alternative<i64>(c)) return std::to_string(std::get<i64>(c));
  if (std::holds_alternative<double>(c)) return format_real(std::get<double>(c));
  return std::get<std::string>(c);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if ((unsigned char)c < 0x20) {
          char esc[8];
          std::snprintf(esc, sizeof esc, "\\u%04x", c);
          out += esc;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

std::string json_value(const Cell& c) {
  if (std::holds_alternative<i64>(c)) return std::to_string(std::get<i64>(c));
  if (std::holds_alternative<double>(c)) {
    double v = std::get<double>(c);
    std::string text = format_real(v);
    if (!std::isfinite(v)) return json_string(text);
    return text;
  }
  return json_string(std::get<std::string>(c));
}

}  // namespace

std::string render_csv(const Table& t) {
  std::string out;
  for (size_t i = 0; i < t.columns.size(); i++) {
    if (i) out += ',';
    out += csv_field(t.columns[i]);
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); i++) {
      if (i) out += ',';
      out += csv_field(cell_text(row[i]));
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Table& t) {
  std::string out = "[\n";
  for (size_t r = 0; r < t.rows.size(); r++) {
    out += "  {";
    for (size_t i = 0; i < t.columns.size(); i++) {
      if (i) out += ", ";
      out += json_string(t.columns[i]);
      out += ": ";
      out += json_value(t.rows[r][i]);
    }
    out += r + 1 < t.rows.size() ? "},\n" : "}\n";
  }
  out += "]\n";
  return out;
}

i64 parse_scalar(const std::string& text) {
  auto v = parse_grid(text);
  if (v.size() != 1) throw usage_error("expected one value, got '" + text + "'");
  return v[0];
}

std::vector<i64> parse_grid(const std::string& text) {
  std::vector<i64> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    size_t a = item.find_first_not_of(" \t");
    size_t b = item.find_last_not_of(" \t");
    if (a == std::string::npos) throw usage_error("empty grid entry in '" + text + "'");
    item = item.substr(a, b - a + 1);
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(item.c_str(), &end);
    if (errno != 0 || end != item.c_str() + item.size())
      throw usage_error("bad grid entry '" + item + "'");
    if (!(v >= 1 && v <= 9.0e18) || v != std::floor(v))
      throw usage_error("grid entry '" + item + "' is not a positive integer");
    out.push_back((i64)v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw usage_error("empty grid");
  return out;
}

}  // namespace lucasgcd::cli
