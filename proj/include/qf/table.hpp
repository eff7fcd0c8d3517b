// Tabular output for the command-line tool: CSV (RFC 4180 quoting, header
// row, LF line ends) and JSON (array of objects keyed by the CSV header).
//
// Numbers are printed with 12 significant digits, switching to scientific
// notation at |x| >= 1e6. Formatting goes through std::to_chars, so output
// does not depend on the process locale.
#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace qf {

/// Empty, integer, real or text value. Empty cells print as an empty CSV
/// field and as JSON null.
using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
      throw std::logic_error("row width does not match the header");
    }
    rows.push_back(std::move(row));
  }
};

inline Cell optional_cell(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

inline Cell flag_cell(bool b) { return static_cast<long long>(b ? 1 : 0); }

inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";  // folds -0
  char buf[64];
  const auto fmt = std::abs(x) >= 1e6 ? std::chars_format::scientific
                                      : std::chars_format::general;
  const int precision = fmt == std::chars_format::scientific ? 11 : 12;
  const auto res = std::to_chars(buf, buf + sizeof buf, x, fmt, precision);
  return std::string(buf, res.ptr);
}

/// Parses a full string as a double; nullopt on any trailing garbage.
inline std::optional<double> parse_number(std::string_view s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) return std::nullopt;
  return v;
}

inline std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_number(v);
        } else {
          return v;
        }
      },
      c);
}

inline std::string csv_escape(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

inline void write_csv(std::ostream& os, const Table& t) {
  const auto line = [&os](const auto& fields, auto&& text) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i != 0) os << ',';
      os << csv_escape(text(fields[i]));
    }
    os << '\n';
  };
  line(t.columns, [](const std::string& s) { return s; });
  for (const auto& row : t.rows) line(row, cell_text);
}

/// Reals go through their printed form so the JSON carries exactly the
/// digits of the CSV.
inline void write_json(std::ostream& os, const Table& t) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const std::string& key = t.columns[i];
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
              obj[key] = nullptr;
            } else if constexpr (std::is_same_v<T, double>) {
              const auto printed = parse_number(format_number(v));
              if (printed && std::isfinite(*printed)) {
                obj[key] = *printed;
              } else {
                obj[key] = nullptr;
              }
            } else {
              obj[key] = v;
            }
          },
          row[i]);
    }
    arr.push_back(std::move(obj));
  }
  os << arr.dump(1) << '\n';
}

enum class OutputFormat { csv, json };

inline std::optional<OutputFormat> parse_format(std::string_view s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  return std::nullopt;
}

inline void write_table(std::ostream& os, const Table& t, OutputFormat f) {
  if (f == OutputFormat::csv) {
    write_csv(os, t);
  } else {
    write_json(os, t);
  }
}

inline constexpr double kMaxGridPoints = 1e7;

/// Uniform grid `start:stop:step`, both ends inclusive up to rounding.
struct GridSpec {
  double start = 0.0;
  double stop = 1.0;
  double step = 0.1;

  static GridSpec parse(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t from = 0;
    while (true) {
      const std::size_t colon = text.find(':', from);
      parts.push_back(text.substr(from, colon - from));
      if (colon == std::string_view::npos) break;
      from = colon + 1;
    }
    if (parts.size() != 3) {
      throw std::invalid_argument("range must be start:stop:step");
    }
    GridSpec g;
    double* fields[] = {&g.start, &g.stop, &g.step};
    for (std::size_t i = 0; i < 3; ++i) {
      const auto v = parse_number(parts[i]);
      if (!v || !std::isfinite(*v)) {
        throw std::invalid_argument("not a number in range: '" +
                                    std::string(parts[i]) + "'");
      }
      *fields[i] = *v;
    }
    g.validate();
    return g;
  }

  void validate() const {
    if (!(step > 0.0)) throw std::invalid_argument("range step must be > 0");
    if (!(start < stop)) throw std::invalid_argument("range needs start < stop");
    if ((stop - start) / step > kMaxGridPoints) {
      throw std::invalid_argument("range has more than 1e7 steps");
    }
  }

  std::size_t size() const {
    return static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) +
           1;
  }

  std::vector<double> points() const {
    validate();
    const std::size_t n = size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = start + step * static_cast<double>(i);
    }
    return out;
  }
};

}  // namespace qf
