#pragma once

// Column-oriented numeric table with CSV (RFC-4180-ish, header row, '.'
// decimal separator) and JSON (array of records) writers. Numbers are
// printed with shortest round-trip formatting so identical runs produce
// byte-identical output.

#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sce {

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::optional<std::string>> notes; // per-row, optional

  void add_row(std::vector<double> row,
               std::optional<std::string> note = std::nullopt) {
    if (row.size() != columns.size())
      throw std::invalid_argument("Table: row width mismatch");
    rows.push_back(std::move(row));
    notes.push_back(std::move(note));
  }

  bool has_notes() const {
    for (const auto& n : notes)
      if (n) return true;
    return false;
  }
};

namespace detail {

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

} // namespace detail

inline void write_csv(std::ostream& os, const Table& t) {
  const bool notes = t.has_notes();
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) os << ',';
    os << detail::csv_escape(t.columns[c]);
  }
  if (notes) os << ",note";
  os << '\n';
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
      if (c) os << ',';
      os << format_double(t.rows[r][c]);
    }
    if (notes) os << ',' << detail::csv_escape(t.notes[r] ? *t.notes[r] : "");
    os << '\n';
  }
}

inline void write_json(std::ostream& os, const Table& t) {
  const bool notes = t.has_notes();
  os << "[\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << "  {";
    for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
      if (c) os << ", ";
      const double v = t.rows[r][c];
      os << '"' << detail::json_escape(t.columns[c])
         << "\": " << (std::isfinite(v) ? format_double(v) : "null");
    }
    if (notes)
      os << ", \"note\": \""
         << detail::json_escape(t.notes[r] ? *t.notes[r] : "") << '"';
    os << '}' << (r + 1 < t.rows.size() ? "," : "") << '\n';
  }
  os << "]\n";
}

} // namespace sce
