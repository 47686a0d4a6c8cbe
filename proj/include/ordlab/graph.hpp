#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ordlab {

// Finite simple undirected graph on vertex indices 0..n-1. Adjacency is kept
// as packed bit rows, so edge tests are O(1). Graphs are treated as immutable
// once constructed; all operations below build new graphs.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n)
      : n_(n), words_((n + 63) / 64), bits_(std::size_t(n) * words_, 0) {
    if (n < 0) throw std::invalid_argument("graph order must be >= 0");
  }

  int order() const { return n_; }

  bool has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) return false;
    return (bits_[row(u) + (v >> 6)] >> (v & 63)) & 1u;
  }

  void add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loop rejected");
    bits_[row(u) + (v >> 6)] |= std::uint64_t(1) << (v & 63);
    bits_[row(v) + (u >> 6)] |= std::uint64_t(1) << (u & 63);
  }

  int degree(int v) const {
    check_vertex(v);
    int d = 0;
    for (int w = 0; w < words_; ++w) d += popcount(bits_[row(v) + w]);
    return d;
  }

  int max_degree() const {
    int d = 0;
    for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
  }

  int edge_count() const {
    int total = 0;
    for (int v = 0; v < n_; ++v) total += degree(v);
    return total / 2;
  }

  std::vector<int> neighbors(int v) const {
    check_vertex(v);
    std::vector<int> out;
    for (int u = 0; u < n_; ++u)
      if (u != v && has_edge(v, u)) out.push_back(u);
    return out;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v)
        if (has_edge(u, v)) out.emplace_back(u, v);
    return out;
  }

  // True when u and v have the same neighbourhood outside {u,v}.
  bool same_outside_neighborhood(int u, int v) const {
    for (int w = 0; w < n_; ++w) {
      if (w == u || w == v) continue;
      if (has_edge(u, w) != has_edge(v, w)) return false;
    }
    return true;
  }

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && bits_ == other.bits_;
  }

 private:
  static int popcount(std::uint64_t x) {
    return static_cast<int>(__builtin_popcountll(x));
  }
  std::size_t row(int v) const { return std::size_t(v) * words_; }
  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw std::out_of_range("vertex index out of range");
  }

  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// ---------------------------------------------------------------------------
// Named constructions.

inline Graph empty_graph(int n) { return Graph(n); }

inline Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph path_graph(int n) {
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs >= 3 vertices");
  Graph g = path_graph(n);
  g.add_edge(n - 1, 0);
  return g;
}

// Star K_{1,k} with the center at index 0.
inline Graph star_graph(int k) {
  Graph g(k + 1);
  for (int v = 1; v <= k; ++v) g.add_edge(0, v);
  return g;
}

inline Graph complete_bipartite_graph(int a, int b) {
  Graph g(a + b);
  for (int u = 0; u < a; ++u)
    for (int v = a; v < a + b; ++v) g.add_edge(u, v);
  return g;
}

// Triangle 0,1,2 with pendant vertices 3 (at 1) and 4 (at 2).
inline Graph bull_graph() {
  Graph g(5);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  g.add_edge(1, 3);
  g.add_edge(2, 4);
  return g;
}

// ---------------------------------------------------------------------------
// Constructions over existing graphs.

inline Graph complement(const Graph& g) {
  const int n = g.order();
  Graph out(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v)) out.add_edge(u, v);
  return out;
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph out(a.order() + b.order());
  for (auto [u, v] : a.edges()) out.add_edge(u, v);
  const int off = a.order();
  for (auto [u, v] : b.edges()) out.add_edge(u + off, v + off);
  return out;
}

// Identifies v1 in a with v2 in b. The merged vertex keeps v1's index; the
// remaining b vertices are appended after a.
inline Graph glue_at_vertex(const Graph& a, int v1, const Graph& b, int v2) {
  if (v1 < 0 || v1 >= a.order() || v2 < 0 || v2 >= b.order())
    throw std::out_of_range("glue vertex out of range");
  Graph out(a.order() + b.order() - 1);
  for (auto [u, v] : a.edges()) out.add_edge(u, v);
  std::vector<int> map(b.order());
  int next = a.order();
  for (int v = 0; v < b.order(); ++v) map[v] = (v == v2) ? v1 : next++;
  for (auto [u, v] : b.edges()) out.add_edge(map[u], map[v]);
  return out;
}

struct InducedSubgraph {
  Graph graph;
  std::vector<int> vertex_map;  // new index -> original index, ascending
};

inline InducedSubgraph induced_subgraph(const Graph& g, std::vector<int> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (int v : s)
    if (v < 0 || v >= g.order())
      throw std::out_of_range("induced subgraph: vertex out of range");
  Graph sub(static_cast<int>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (g.has_edge(s[i], s[j]))
        sub.add_edge(static_cast<int>(i), static_cast<int>(j));
  return {std::move(sub), std::move(s)};
}

// n copies of g glued along the common induced subgraph on `shared`.
// Layout: the shared vertices come first (in ascending original order),
// followed by the private vertices of each copy.
struct ReplicatedGraph {
  Graph graph;
  std::vector<int> shared_image;             // shared[i] -> new index i
  std::vector<std::vector<int>> copy_image;  // copy c: original v -> new index
};

inline ReplicatedGraph replicate_over_subgraph(const Graph& g,
                                               std::vector<int> shared, int n,
                                               int size_cap = 4096) {
  std::sort(shared.begin(), shared.end());
  shared.erase(std::unique(shared.begin(), shared.end()), shared.end());
  for (int v : shared)
    if (v < 0 || v >= g.order())
      throw std::out_of_range("replicate: shared vertex out of range");
  if (n < 1) throw std::invalid_argument("replicate: need n >= 1");
  if (shared.empty() || static_cast<int>(shared.size()) == g.order())
    throw std::invalid_argument("replicate: shared set must be proper and nonempty");
  const int priv = g.order() - static_cast<int>(shared.size());
  const long long total = static_cast<long long>(n) * priv + static_cast<long long>(shared.size());
  if (total > size_cap) throw std::invalid_argument("replicate: size cap exceeded");

  Graph out(static_cast<int>(total));
  std::vector<int> shared_pos(g.order(), -1);
  for (std::size_t i = 0; i < shared.size(); ++i)
    shared_pos[shared[i]] = static_cast<int>(i);

  ReplicatedGraph result;
  result.shared_image.resize(shared.size());
  std::iota(result.shared_image.begin(), result.shared_image.end(), 0);

  int next = static_cast<int>(shared.size());
  for (int c = 0; c < n; ++c) {
    std::vector<int> map(g.order(), -1);
    for (int v = 0; v < g.order(); ++v)
      map[v] = (shared_pos[v] >= 0) ? shared_pos[v] : next++;
    for (auto [u, v] : g.edges()) {
      if (shared_pos[u] >= 0 && shared_pos[v] >= 0 && c > 0) continue;
      out.add_edge(map[u], map[v]);
    }
    result.copy_image.push_back(std::move(map));
  }
  result.graph = std::move(out);
  return result;
}

// ---------------------------------------------------------------------------
// Structural predicates.

enum class TwinStatus { adjacent_twins, nonadjacent_twins, not_twins };

inline TwinStatus twin_status(const Graph& g, int u, int v) {
  if (u == v) throw std::invalid_argument("twin_status: u == v");
  if (!g.same_outside_neighborhood(u, v)) return TwinStatus::not_twins;
  return g.has_edge(u, v) ? TwinStatus::adjacent_twins
                          : TwinStatus::nonadjacent_twins;
}

inline std::vector<std::vector<int>> connected_components(const Graph& g) {
  const int n = g.order();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      out[id].push_back(v);
      for (int w = 0; w < n; ++w) {
        if (w != v && g.has_edge(v, w) && comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

inline bool is_connected(const Graph& g) {
  return g.order() <= 1 || connected_components(g).size() == 1;
}

inline bool is_forest(const Graph& g) {
  // Acyclic iff every component has |E| = |V|-1.
  const auto comps = connected_components(g);
  int edges = g.edge_count();
  int tree_edges = 0;
  for (const auto& c : comps) tree_edges += static_cast<int>(c.size()) - 1;
  return edges == tree_edges;
}

inline bool is_bipartite(const Graph& g) {
  const int n = g.order();
  std::vector<int> color(n, -1);
  for (int s = 0; s < n; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < n; ++w) {
        if (w == v || !g.has_edge(v, w)) continue;
        if (color[w] < 0) {
          color[w] = 1 - color[v];
          stack.push_back(w);
        } else if (color[w] == color[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

inline bool is_triangle_free(const Graph& g) {
  const int n = g.order();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (!g.has_edge(u, v)) continue;
      for (int w = v + 1; w < n; ++w)
        if (g.has_edge(u, w) && g.has_edge(v, w)) return false;
    }
  return true;
}

inline std::vector<int> articulation_points(const Graph& g) {
  const int n = g.order();
  std::vector<int> disc(n, -1), low(n, 0), parent(n, -1);
  std::vector<bool> cut(n, false);
  int timer = 0;
  // Iterative DFS would also do; recursion depth is bounded by graph order.
  std::function<void(int)> dfs = [&](int u) {
    disc[u] = low[u] = timer++;
    int children = 0;
    for (int v = 0; v < n; ++v) {
      if (v == u || !g.has_edge(u, v)) continue;
      if (disc[v] < 0) {
        ++children;
        parent[v] = u;
        dfs(v);
        low[u] = std::min(low[u], low[v]);
        if (parent[u] < 0 && children > 1) cut[u] = true;
        if (parent[u] >= 0 && low[v] >= disc[u]) cut[u] = true;
      } else if (v != parent[u]) {
        low[u] = std::min(low[u], disc[v]);
      }
    }
  };
  for (int s = 0; s < n; ++s)
    if (disc[s] < 0) dfs(s);
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (cut[v]) out.push_back(v);
  return out;
}

inline bool is_two_connected(const Graph& g) {
  return g.order() >= 3 && is_connected(g) && articulation_points(g).empty();
}

inline bool is_clique_union(const Graph& g) {
  for (const auto& comp : connected_components(g)) {
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (std::size_t j = i + 1; j < comp.size(); ++j)
        if (!g.has_edge(comp[i], comp[j])) return false;
  }
  return true;
}

struct StructureReport {
  bool homogeneous = false;
  bool clique_union = false;
  bool complete_multipartite = false;
  bool two_connected = false;
  bool forest = false;
  int max_degree = 0;
  std::vector<int> leaf_support;  // vertices adjacent to a degree-1 vertex
};

inline StructureReport structure_report(const Graph& g) {
  StructureReport r;
  const int n = g.order();
  const int m = g.edge_count();
  r.max_degree = g.max_degree();
  r.homogeneous = (m == 0) || (m == n * (n - 1) / 2);
  r.clique_union = is_clique_union(g);
  r.complete_multipartite = is_clique_union(complement(g));
  r.two_connected = is_two_connected(g);
  r.forest = is_forest(g);
  for (int v = 0; v < n; ++v) {
    if (g.degree(v) != 1) continue;
    int u = g.neighbors(v).front();
    if (std::find(r.leaf_support.begin(), r.leaf_support.end(), u) ==
        r.leaf_support.end())
      r.leaf_support.push_back(u);
  }
  std::sort(r.leaf_support.begin(), r.leaf_support.end());
  return r;
}

}  // namespace ordlab
