#pragma once

#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ordlab/graph.hpp"

namespace ordlab {

enum class GraphFormat { edge_list, graph6 };

// Edge-list text: first line is the vertex count, then one "u v" pair per
// line, 0-indexed. Duplicate edges are deduped with a warning; self-loops and
// out-of-range indices are errors.
inline Graph parse_edge_list(const std::string& text,
                             std::vector<std::string>* warnings = nullptr) {
  std::istringstream in(text);
  std::string line;
  int n = -1;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank line
    char* end = nullptr;
    long parsed = std::strtol(tok.c_str(), &end, 10);
    if (*end != '\0' || parsed < 0 || (ls >> tok))
      throw std::invalid_argument("edge list: malformed header line");
    n = static_cast<int>(parsed);
    break;
  }
  if (n < 0) throw std::invalid_argument("edge list: missing header");
  Graph g(n);
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    long u, v;
    if (!(ls >> u >> v)) throw std::invalid_argument("edge list: malformed edge line");
    std::string extra;
    if (ls >> extra) throw std::invalid_argument("edge list: malformed edge line");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("edge list: vertex index out of range");
    if (u == v) throw std::invalid_argument("edge list: self-loop");
    if (g.has_edge(static_cast<int>(u), static_cast<int>(v))) {
      if (warnings)
        warnings->push_back("duplicate edge " + std::to_string(u) + " " +
                            std::to_string(v));
      continue;
    }
    g.add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  return g;
}

// Standard graph6 (read-only), short form n <= 62.
inline Graph parse_graph6(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != '\n' && c != '\r' && c != ' ') s.push_back(c);
  if (s.rfind(">>graph6<<", 0) == 0) s = s.substr(10);
  if (s.empty()) throw std::invalid_argument("graph6: empty input");
  const int header = static_cast<unsigned char>(s[0]);
  if (header < 63 || header > 63 + 62)
    throw std::invalid_argument("graph6: only n <= 62 supported");
  const int n = header - 63;
  const int bits_needed = n * (n - 1) / 2;
  const int bytes_needed = (bits_needed + 5) / 6;
  if (static_cast<int>(s.size()) != 1 + bytes_needed)
    throw std::invalid_argument("graph6: truncated or oversized body");
  Graph g(n);
  int bit = 0;
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u, ++bit) {
      const int byte = static_cast<unsigned char>(s[1 + bit / 6]) - 63;
      if (byte < 0 || byte > 63)
        throw std::invalid_argument("graph6: byte out of range");
      if ((byte >> (5 - bit % 6)) & 1) g.add_edge(u, v);
    }
  }
  return g;
}

inline Graph parse_graph(const std::string& text, GraphFormat format,
                         std::vector<std::string>* warnings = nullptr) {
  switch (format) {
    case GraphFormat::edge_list:
      return parse_edge_list(text, warnings);
    case GraphFormat::graph6:
      return parse_graph6(text);
  }
  throw std::invalid_argument("unknown graph format");
}

// Canonical write format.
inline std::string write_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.order() << "\n";
  for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
  return out.str();
}

// Several graphs in one file, blocks separated by blank lines.
inline std::vector<Graph> parse_edge_list_blocks(const std::string& text) {
  std::vector<Graph> out;
  std::istringstream in(text);
  std::string line, block;
  auto flush = [&]() {
    if (block.find_first_not_of(" \t\n") == std::string::npos) {
      block.clear();
      return;
    }
    out.push_back(parse_edge_list(block));
    block.clear();
  };
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t") == std::string::npos) {
      flush();
    } else {
      block += line;
      block += '\n';
    }
  }
  flush();
  return out;
}

}  // namespace ordlab
