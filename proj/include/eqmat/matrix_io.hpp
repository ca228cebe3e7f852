#pragma once

// Text format:
//   [# trace m0=<int> n0=<int> k=<int> q=<int>]
//   <m> <n>
//   m lines of n space-separated decimal integers
// Single spaces, LF line endings, no trailing whitespace. Other lines
// starting with '#' before the header are accepted and ignored.

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "matrix.hpp"

namespace eqmat {

struct MatrixFile {
  IntMatrix matrix;
  std::optional<ConstructionTrace> trace;
};

namespace detail {

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

inline std::int64_t parse_small(std::string_view token) {
  i128 v = parse_i128(token);
  if (v > INT64_MAX || v < INT64_MIN) throw ParseError("value out of range: " + std::string(token));
  return static_cast<std::int64_t>(v);
}

inline ConstructionTrace parse_trace(std::string_view line) {
  auto tokens = split_ws(line);
  // "#" "trace" then four key=value pairs
  if (tokens.size() != 6) throw ParseError("malformed trace line");
  ConstructionTrace t;
  bool seen[4] = {false, false, false, false};
  for (std::size_t i = 2; i < tokens.size(); ++i) {
    auto tok = tokens[i];
    auto eq = tok.find('=');
    if (eq == std::string_view::npos) throw ParseError("malformed trace field '" + std::string(tok) + "'");
    auto key = tok.substr(0, eq);
    auto value = parse_small(tok.substr(eq + 1));
    int idx = key == "m0" ? 0 : key == "n0" ? 1 : key == "k" ? 2 : key == "q" ? 3 : -1;
    if (idx < 0 || seen[idx]) throw ParseError("malformed trace field '" + std::string(tok) + "'");
    seen[idx] = true;
    (idx == 0 ? t.m0 : idx == 1 ? t.n0 : idx == 2 ? t.k : t.q) = value;
  }
  if (t.m0 < 1 || t.n0 < 1 || t.k < 0 || t.q < 2) throw ParseError("trace values out of range");
  return t;
}

}  // namespace detail

inline std::string write_matrix(const IntMatrix& a, const std::optional<ConstructionTrace>& trace = std::nullopt) {
  std::string out;
  if (trace) {
    out += "# trace m0=" + std::to_string(trace->m0) + " n0=" + std::to_string(trace->n0) +
           " k=" + std::to_string(trace->k) + " q=" + std::to_string(trace->q) + "\n";
  }
  out += std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out += ' ';
      out += to_string(a(i, j));
    }
    out += '\n';
  }
  return out;
}

inline MatrixFile read_matrix(std::string_view text) {
  auto lines = detail::split_lines(text);
  std::size_t li = 0;
  std::optional<ConstructionTrace> trace;
  for (; li < lines.size() && !lines[li].empty() && lines[li][0] == '#'; ++li) {
    auto tokens = detail::split_ws(lines[li]);
    if (tokens.size() >= 2 && tokens[0] == "#" && tokens[1] == "trace") {
      if (trace) throw ParseError("duplicate trace line");
      trace = detail::parse_trace(lines[li]);
    }
  }
  if (li >= lines.size()) throw ParseError("missing '<m> <n>' header");
  auto header = detail::split_ws(lines[li++]);
  if (header.size() != 2) throw ParseError("malformed header: expected '<m> <n>'");
  auto m = detail::parse_small(header[0]);
  auto n = detail::parse_small(header[1]);
  if (m < 1 || n < 1) throw ParseError("malformed header: dimensions must be >= 1");

  std::vector<i128> entries;
  entries.reserve(static_cast<std::size_t>(m * n));
  std::int64_t row_count = 0;
  for (; li < lines.size(); ++li) {
    auto tokens = detail::split_ws(lines[li]);
    if (tokens.empty()) continue;
    if (row_count == m) throw ParseError("wrong entry count: more than " + std::to_string(m) + " rows");
    if (static_cast<std::int64_t>(tokens.size()) != n)
      throw ParseError("wrong entry count: row " + std::to_string(row_count + 1) + " has " +
                       std::to_string(tokens.size()) + " entries, expected " + std::to_string(n));
    for (auto tok : tokens) entries.push_back(parse_i128(tok));
    ++row_count;
  }
  if (row_count != m)
    throw ParseError("wrong entry count: expected " + std::to_string(m) + " rows, got " + std::to_string(row_count));
  return MatrixFile{IntMatrix(static_cast<std::size_t>(m), static_cast<std::size_t>(n), std::move(entries)), trace};
}

/* Space-separated integers, e.g. "4 -2 -1 0". */
inline IntVector parse_vector(std::string_view text) {
  IntVector v;
  for (auto tok : detail::split_ws(text)) {
    if (tok.back() == ',') tok.remove_suffix(1);
    v.push_back(parse_i128(tok));
  }
  return v;
}

inline std::string format_vector(std::span<const i128> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += to_string(v[i]);
  }
  return s;
}

}  // namespace eqmat
