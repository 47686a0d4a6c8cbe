#pragma once

#include <stdexcept>
#include <vector>

#include "ordlab/graph.hpp"

namespace ordlab {

// An injective map realizing `source` as an induced subgraph of `target`.
struct Embedding {
  std::vector<int> map;  // map[source vertex] = target vertex
};

namespace detail {

inline void extend_embedding(const Graph& h, const Graph& g,
                             std::vector<int>& map, std::vector<bool>& used,
                             int next, std::vector<Embedding>& out,
                             bool stop_at_first, bool& found) {
  if (found && stop_at_first) return;
  if (next == h.order()) {
    out.push_back({map});
    found = true;
    return;
  }
  for (int cand = 0; cand < g.order(); ++cand) {
    if (used[cand]) continue;
    if (g.degree(cand) < h.degree(next)) continue;
    bool ok = true;
    for (int prev = 0; prev < next; ++prev) {
      if (h.has_edge(prev, next) != g.has_edge(map[prev], cand)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    map[next] = cand;
    used[cand] = true;
    extend_embedding(h, g, map, used, next + 1, out, stop_at_first, found);
    used[cand] = false;
    map[next] = -1;
    if (found && stop_at_first) return;
  }
}

}  // namespace detail

// Every injective map under which h is an induced subgraph of g, in
// lexicographic order of the map vector. Backtracking over h's vertices in
// index order; the cap guards against the factorial blowup on large targets.
inline std::vector<Embedding> enumerate_embeddings(const Graph& h,
                                                   const Graph& g,
                                                   int cap = 12) {
  if (h.order() > g.order()) return {};
  if (g.order() > cap)
    throw std::invalid_argument("enumerate_embeddings: size cap exceeded");
  std::vector<Embedding> out;
  std::vector<int> map(h.order(), -1);
  std::vector<bool> used(g.order(), false);
  bool found = false;
  detail::extend_embedding(h, g, map, used, 0, out, false, found);
  return out;
}

inline bool exists_induced_embedding(const Graph& h, const Graph& g) {
  if (h.order() > g.order()) return false;
  std::vector<Embedding> out;
  std::vector<int> map(h.order(), -1);
  std::vector<bool> used(g.order(), false);
  bool found = false;
  detail::extend_embedding(h, g, map, used, 0, out, true, found);
  return found;
}

inline bool graphs_isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
  std::vector<int> da, db;
  for (int v = 0; v < a.order(); ++v) da.push_back(a.degree(v));
  for (int v = 0; v < b.order(); ++v) db.push_back(b.degree(v));
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return false;
  return exists_induced_embedding(a, b);
}

// Distinct vertex sets that induce a copy of h in g.
inline std::vector<std::vector<int>> induced_copy_sets(const Graph& h,
                                                       const Graph& g,
                                                       int cap = 12) {
  std::vector<std::vector<int>> sets;
  for (const auto& e : enumerate_embeddings(h, g, cap)) {
    std::vector<int> s = e.map;
    std::sort(s.begin(), s.end());
    if (std::find(sets.begin(), sets.end(), s) == sets.end())
      sets.push_back(std::move(s));
  }
  std::sort(sets.begin(), sets.end());
  return sets;
}

}  // namespace ordlab
