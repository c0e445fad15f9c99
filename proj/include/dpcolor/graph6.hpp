#pragma once

// graph6 encoding as used by nauty: N(n) followed by the upper triangle of the
// adjacency matrix, column by column, packed six bits per printable byte
// (value + 63).

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dpcolor/graph.hpp"

namespace dpcolor {

namespace detail {

inline std::string_view strip_ascii(std::string_view s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ' ||
                        s.back() == '\t'))
    s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

}  // namespace detail

inline Graph parse_graph6(std::string_view text) {
  text = detail::strip_ascii(text);
  constexpr std::string_view header = ">>graph6<<";
  if (text.substr(0, header.size()) == header) text.remove_prefix(header.size());
  if (text.empty()) throw Error(Errc::MalformedGraph6, "empty input");
  for (char ch : text)
    if (ch < 63 || ch > 126)
      throw Error(Errc::MalformedGraph6, "byte outside 63..126 in '" + std::string(text) + "'");

  std::size_t pos = 0;
  auto take = [&](int count) {
    std::uint64_t value = 0;
    for (int i = 0; i < count; ++i) {
      if (pos >= text.size()) throw Error(Errc::MalformedGraph6, "truncated vertex count");
      value = (value << 6) | static_cast<std::uint64_t>(text[pos++] - 63);
    }
    return value;
  };

  std::uint64_t n = 0;
  if (text[0] != 126) {
    n = take(1);
  } else if (text.size() > 1 && text[1] != 126) {
    ++pos;
    n = take(3);
  } else {
    pos += 2;
    n = take(6);
  }
  if (n > (1u << 20)) throw Error(Errc::MalformedGraph6, "vertex count too large");

  const std::uint64_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::uint64_t bytes = (bits + 5) / 6;
  if (text.size() - pos != bytes)
    throw Error(Errc::MalformedGraph6, "expected " + std::to_string(bytes) +
                                           " adjacency bytes, found " +
                                           std::to_string(text.size() - pos));

  std::vector<std::pair<Vertex, Vertex>> edges;
  std::uint64_t k = 0;
  for (std::uint64_t j = 1; j < n; ++j)
    for (std::uint64_t i = 0; i < j; ++i, ++k) {
      int byte = text[pos + k / 6] - 63;
      if ((byte >> (5 - k % 6)) & 1) edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  return Graph(static_cast<int>(n), edges);
}

inline std::string encode_graph6(const Graph& g) {
  std::string out;
  const auto n = static_cast<std::uint64_t>(g.order());
  auto put = [&](std::uint64_t value, int count) {
    for (int i = count - 1; i >= 0; --i) out.push_back(static_cast<char>(((value >> (6 * i)) & 63) + 63));
  };
  if (n <= 62) {
    put(n, 1);
  } else if (n <= 258047) {
    out.push_back(126);
    put(n, 3);
  } else {
    out.append(2, static_cast<char>(126));
    put(n, 6);
  }
  int acc = 0;
  int filled = 0;
  for (std::uint64_t j = 1; j < n; ++j)
    for (std::uint64_t i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(static_cast<Vertex>(i), static_cast<Vertex>(j)) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        filled = 0;
      }
    }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

}  // namespace dpcolor
