// Text format for oriented hypergraphs:
//
//   # optional comment lines
//   k <k>
//   n <n>
//   e v1 v2 ... vk        (one line per edge, orientation order)
//
// Indices are 0-based decimal. Lines end with LF and carry no trailing
// whitespace. Edge order is preserved in both directions.

#ifndef PROPO_IO_HPP
#define PROPO_IO_HPP

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "propo/core.hpp"

namespace propo {

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError(what + ", line " + std::to_string(line)), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline std::string serialize(const OrientedHypergraph& h) {
  std::string out = "k " + std::to_string(h.k()) + "\nn " + std::to_string(h.n()) + "\n";
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    out += "e";
    for (Vertex v : h.edge(i)) {
      out += ' ';
      out += std::to_string(v);
    }
    out += '\n';
  }
  return out;
}

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

inline unsigned parse_uint(std::string_view field, std::size_t line_no, const char* what) {
  unsigned value = 0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end || field.empty()) {
    throw ParseError(line_no, std::string("malformed ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace detail

/// Parses and validates. Diagnostics carry the 1-based line number.
inline OrientedHypergraph parse_hypergraph(std::string_view text) {
  std::optional<unsigned> k;
  std::optional<unsigned> n;
  std::optional<OrientedHypergraph> h;
  std::vector<std::size_t> edge_lines;
  std::vector<Vertex> buf;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (line.back() == ' ' || line.back() == '\t') throw ParseError(line_no, "trailing whitespace");
    if (line.find('\t') != std::string_view::npos) throw ParseError(line_no, "tab character");
    const auto fields = detail::split_fields(line);
    const auto tag = fields.front();
    if (tag == "k") {
      if (k) throw ParseError(line_no, "duplicate k header");
      if (fields.size() != 2) throw ParseError(line_no, "malformed k header");
      k = detail::parse_uint(fields[1], line_no, "uniformity");
      if (*k < 2) throw ParseError(line_no, "uniformity k must be at least 2");
    } else if (tag == "n") {
      if (!k) throw ParseError(line_no, "n header before k header");
      if (n) throw ParseError(line_no, "duplicate n header");
      if (fields.size() != 2) throw ParseError(line_no, "malformed n header");
      n = detail::parse_uint(fields[1], line_no, "vertex count");
      h.emplace(*k, *n);
    } else if (tag == "e") {
      if (!h) throw ParseError(line_no, "edge before k and n headers");
      if (fields.size() != *k + 1) {
        throw ParseError(line_no, "wrong arity: expected " + std::to_string(*k) + " vertices, got " +
                                      std::to_string(fields.size() - 1));
      }
      buf.clear();
      for (std::size_t i = 1; i < fields.size(); ++i) {
        buf.push_back(detail::parse_uint(fields[i], line_no, "vertex index"));
      }
      h->add_edge(buf);
      edge_lines.push_back(line_no);
    } else {
      throw ParseError(line_no, "unknown record '" + std::string(tag) + "'");
    }
  }
  if (!k) throw ParseError(line_no, "missing k header");
  if (!n) throw ParseError(line_no, "missing n header");
  const auto res = validate(*h);
  if (!res.ok()) {
    const auto& v = res.violations.front();
    std::string what;
    switch (v.kind) {
      case Violation::Kind::kRepeatedVertex: what = "repeated vertex"; break;
      case Violation::Kind::kOutOfRange: what = "out-of-range index"; break;
      case Violation::Kind::kDuplicateSet: what = "duplicate underlying set"; break;
      case Violation::Kind::kBadUniformity: what = "bad uniformity"; break;
    }
    throw ParseError(edge_lines.empty() ? line_no : edge_lines.at(v.edge), what + " (" + v.message + ")");
  }
  return std::move(*h);
}

}  // namespace propo

#endif  // PROPO_IO_HPP
