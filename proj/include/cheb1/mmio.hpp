#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "cheb1/core.hpp"
#include "cheb1/errors.hpp"

namespace cheb1 {

enum class MatrixFormat { autodetect, csv, matrix_market };

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  }
  return true;
}

inline double parse_double(std::string_view token, std::size_t line, std::size_t column) {
  token = trim(token);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
    throw ParseError("cannot parse number '" + std::string(token) + "'", line, column);
  }
  if (!std::isfinite(value)) {
    throw ValueError("non-finite matrix entry at line " + std::to_string(line));
  }
  return value;
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  // Drop a single trailing empty line from a final newline.
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

inline DenseMatrix parse_csv(std::string_view text) {
  auto lines = split_lines(text);
  std::vector<std::vector<double>> rows;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    std::string_view line = lines[li];
    if (trim(line).empty()) {
      throw ParseError("empty row", li + 1, 1);
    }
    std::vector<double> row;
    std::size_t start = 0, field = 1;
    while (true) {
      std::size_t comma = line.find(',', start);
      std::string_view tok =
          comma == std::string_view::npos ? line.substr(start) : line.substr(start, comma - start);
      row.push_back(parse_double(tok, li + 1, field));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
      ++field;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("row has " + std::to_string(row.size()) + " fields, expected " +
                           std::to_string(rows.front().size()),
                       li + 1, 1);
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2 || rows.front().size() < 2) {
    throw ShapeError("matrix must be at least 2x2, got " + std::to_string(rows.size()) + "x" +
                     std::to_string(rows.empty() ? 0 : rows.front().size()));
  }
  std::vector<double> data;
  data.reserve(rows.size() * rows.front().size());
  for (const auto& r : rows) data.insert(data.end(), r.begin(), r.end());
  return DenseMatrix(rows.size(), rows.front().size(), std::move(data));
}

inline DenseMatrix parse_matrix_market(std::string_view text) {
  auto lines = split_lines(text);
  if (lines.empty()) throw ParseError("empty input", 1, 1);

  // Header: %%MatrixMarket matrix array real general
  {
    std::string_view header = trim(lines[0]);
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < header.size()) {
      while (pos < header.size() && std::isspace(static_cast<unsigned char>(header[pos]))) ++pos;
      std::size_t end = pos;
      while (end < header.size() && !std::isspace(static_cast<unsigned char>(header[end]))) ++end;
      if (end > pos) tokens.push_back(header.substr(pos, end - pos));
      pos = end;
    }
    if (tokens.size() != 5 || !iequals(tokens[0], "%%MatrixMarket") ||
        !iequals(tokens[1], "matrix") || !iequals(tokens[2], "array") ||
        !iequals(tokens[3], "real") || !iequals(tokens[4], "general")) {
      throw ParseError("expected header '%%MatrixMarket matrix array real general'", 1, 1);
    }
  }

  std::size_t li = 1;
  while (li < lines.size() && (trim(lines[li]).empty() || trim(lines[li]).front() == '%')) ++li;
  if (li >= lines.size()) throw ParseError("missing size line", lines.size(), 1);

  std::size_t m = 0, n = 0;
  {
    std::string_view size_line = trim(lines[li]);
    std::size_t sep = size_line.find_first_of(" \t");
    if (sep == std::string_view::npos) throw ParseError("size line must be 'rows cols'", li + 1, 1);
    auto parse_size = [&](std::string_view tok, std::size_t col) {
      tok = trim(tok);
      std::size_t v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError("cannot parse size '" + std::string(tok) + "'", li + 1, col);
      }
      return v;
    };
    m = parse_size(size_line.substr(0, sep), 1);
    n = parse_size(size_line.substr(sep + 1), 2);
  }
  if (m < 2 || n < 2) {
    throw ShapeError("matrix must be at least 2x2, got " + std::to_string(m) + "x" +
                     std::to_string(n));
  }

  // Values are listed column-major, whitespace separated.
  std::vector<double> colmajor;
  colmajor.reserve(m * n);
  for (++li; li < lines.size(); ++li) {
    std::string_view line = lines[li];
    if (trim(line).empty() || trim(line).front() == '%') continue;
    std::size_t pos = 0, field = 1;
    while (pos < line.size()) {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      std::size_t end = pos;
      while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
      if (end > pos) {
        if (colmajor.size() >= m * n) {
          throw ParseError("more than rows*cols values", li + 1, field);
        }
        colmajor.push_back(parse_double(line.substr(pos, end - pos), li + 1, field));
        ++field;
      }
      pos = end;
    }
  }
  if (colmajor.size() != m * n) {
    throw ParseError("expected " + std::to_string(m * n) + " values, got " +
                         std::to_string(colmajor.size()),
                     lines.size(), 1);
  }
  std::vector<double> data(m * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) data[i * n + j] = colmajor[j * m + i];
  return DenseMatrix(m, n, std::move(data));
}

inline std::string format_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

}  // namespace detail

inline DenseMatrix parse_matrix(std::string_view text, MatrixFormat fmt = MatrixFormat::autodetect) {
  if (fmt == MatrixFormat::autodetect) {
    std::string_view t = detail::trim(text);
    fmt = (!t.empty() && t.front() == '%') ? MatrixFormat::matrix_market : MatrixFormat::csv;
  }
  return fmt == MatrixFormat::csv ? detail::parse_csv(text) : detail::parse_matrix_market(text);
}

/// One row per line, comma separated, shortest round-trip formatting.
inline std::string write_csv(const DenseMatrix& a) {
  std::string out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out += ',';
      out += detail::format_double(a(i, j));
    }
    out += '\n';
  }
  return out;
}

/// Dense array MatrixMarket text (values column-major, one per line).
inline std::string write_matrix_market(const DenseMatrix& a) {
  std::string out = "%%MatrixMarket matrix array real general\n";
  out += std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      out += detail::format_double(a(i, j));
      out += '\n';
    }
  }
  return out;
}

}  // namespace cheb1
