#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ordlab/graph.hpp"
#include "ordlab/graph_algo.hpp"
#include "ordlab/graph_io.hpp"
#include "ordlab/verdict.hpp"

namespace ordlab {

enum class Mark { full, empty };

// A graph with every vertex marked full or empty. The blow-up replaces full
// vertices by cliques and empty vertices by independent sets, joining blocks
// exactly along the template's edges.
struct Template {
  Graph base;
  std::vector<Mark> marks;

  int order() const { return base.order(); }
};

inline Template make_template(Graph base, std::vector<Mark> marks) {
  if (static_cast<int>(marks.size()) != base.order())
    throw std::invalid_argument("template: marks must cover all vertices");
  return {std::move(base), std::move(marks)};
}

// Complement with full/empty swapped; uniformity is preserved by this move.
inline Template complement_template(const Template& t) {
  Template out;
  out.base = complement(t.base);
  out.marks.reserve(t.marks.size());
  for (Mark m : t.marks)
    out.marks.push_back(m == Mark::full ? Mark::empty : Mark::full);
  return out;
}

inline bool templates_isomorphic(const Template& a, const Template& b) {
  if (a.order() != b.order()) return false;
  for (const auto& e : enumerate_embeddings(a.base, b.base, b.order())) {
    bool marks_ok = true;
    for (int v = 0; v < a.order(); ++v)
      if (a.marks[v] != b.marks[e.map[v]]) marks_ok = false;
    if (marks_ok) return true;
  }
  return false;
}

struct BlowUpSpec {
  Template tmpl;
  std::vector<int> multiplicity;  // per template vertex, all >= 1
};

inline BlowUpSpec uniform_blow_up_spec(Template t, int multiplicity) {
  BlowUpSpec spec;
  spec.multiplicity.assign(t.order(), multiplicity);
  spec.tmpl = std::move(t);
  return spec;
}

struct BlowUpResult {
  Graph graph;
  std::vector<int> block_of;              // blown vertex -> template vertex
  std::vector<std::vector<int>> blocks;   // template vertex -> blown vertices
};

inline BlowUpResult blow_up(const BlowUpSpec& spec, int size_cap = 4096) {
  const Template& t = spec.tmpl;
  if (static_cast<int>(spec.multiplicity.size()) != t.order())
    throw std::invalid_argument("blow_up: multiplicity size mismatch");
  long long total = 0;
  for (int m : spec.multiplicity) {
    if (m < 1) throw std::invalid_argument("blow_up: multiplicities must be >= 1");
    total += m;
  }
  if (total > size_cap) throw std::invalid_argument("blow_up: size cap exceeded");

  BlowUpResult out;
  out.graph = Graph(static_cast<int>(total));
  out.blocks.resize(t.order());
  int next = 0;
  for (int v = 0; v < t.order(); ++v) {
    for (int i = 0; i < spec.multiplicity[v]; ++i) {
      out.blocks[v].push_back(next);
      out.block_of.push_back(v);
      ++next;
    }
  }
  for (int v = 0; v < t.order(); ++v) {
    if (t.marks[v] == Mark::full) {
      for (std::size_t i = 0; i < out.blocks[v].size(); ++i)
        for (std::size_t j = i + 1; j < out.blocks[v].size(); ++j)
          out.graph.add_edge(out.blocks[v][i], out.blocks[v][j]);
    }
    for (int w = v + 1; w < t.order(); ++w) {
      if (!t.base.has_edge(v, w)) continue;
      for (int a : out.blocks[v])
        for (int b : out.blocks[w]) out.graph.add_edge(a, b);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reduction: merging adjacent full twins and non-adjacent empty twins leaves
// the blow-up unchanged, so only reduced templates matter for classification.

struct ReducedTemplate {
  Template tmpl;
  std::vector<int> merge_map;  // original vertex -> reduced vertex
};

namespace detail {

inline bool find_mergeable_pair(const Template& t, int& out_u, int& out_v) {
  for (int u = 0; u < t.order(); ++u) {
    for (int v = u + 1; v < t.order(); ++v) {
      if (t.marks[u] != t.marks[v]) continue;
      if (!t.base.same_outside_neighborhood(u, v)) continue;
      const bool adjacent = t.base.has_edge(u, v);
      if ((t.marks[u] == Mark::full && adjacent) ||
          (t.marks[u] == Mark::empty && !adjacent)) {
        out_u = u;
        out_v = v;
        return true;
      }
    }
  }
  return false;
}

inline Template drop_vertex(const Template& t, int victim,
                            std::vector<int>& relabel) {
  Template out;
  out.base = Graph(t.order() - 1);
  relabel.assign(t.order(), -1);
  int next = 0;
  for (int v = 0; v < t.order(); ++v)
    if (v != victim) relabel[v] = next++;
  for (auto [a, b] : t.base.edges())
    if (a != victim && b != victim) out.base.add_edge(relabel[a], relabel[b]);
  for (int v = 0; v < t.order(); ++v)
    if (v != victim) out.marks.push_back(t.marks[v]);
  return out;
}

}  // namespace detail

// Merges lowest-index mergeable pairs first until none remain. All merge
// orders agree up to isomorphism; the fixed order makes the result
// deterministic.
inline ReducedTemplate reduce_template(const Template& t) {
  ReducedTemplate out;
  out.tmpl = t;
  out.merge_map.resize(t.order());
  std::iota(out.merge_map.begin(), out.merge_map.end(), 0);
  int u, v;
  while (detail::find_mergeable_pair(out.tmpl, u, v)) {
    std::vector<int> relabel;
    out.tmpl = detail::drop_vertex(out.tmpl, v, relabel);
    relabel[v] = relabel[u];
    for (auto& m : out.merge_map) m = relabel[m];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classification: a reduced template with at least two vertices is
// non-uniform exactly when it is edgeless (then at most one vertex is empty)
// or complete (then at most one vertex is full); everything else is uniform,
// certified by the three-vertex configuration that forces uniformity.

namespace detail {

// Searches for one of the full/full/empty configurations, in the template or
// its mark-swapped complement.
inline bool find_uniformity_certificate(const Template& t, std::string& cert) {
  const int n = t.order();
  for (int u = 0; u < n; ++u) {
    if (t.marks[u] != Mark::full) continue;
    for (int v = 0; v < n; ++v) {
      if (v == u || t.marks[v] != Mark::full) continue;
      for (int w = 0; w < n; ++w) {
        if (w == u || w == v || t.marks[w] != Mark::empty) continue;
        const bool uv = t.base.has_edge(u, v);
        const bool uw = t.base.has_edge(u, w);
        const bool vw = t.base.has_edge(v, w);
        if (uv && uw && !vw) {
          cert = "l:e-f-f";
          return true;
        }
        if (uw && !uv && !vw) {
          cert = "l:e-f,f";
          return true;
        }
        if (uw && vw && !uv) {
          cert = "l:f-e-f";
          return true;
        }
      }
    }
  }
  // Full-induced subgraph with a non-clique component.
  std::vector<int> fulls;
  for (int v = 0; v < n; ++v)
    if (t.marks[v] == Mark::full) fulls.push_back(v);
  if (fulls.size() >= 3) {
    const Graph fg = induced_subgraph(t.base, fulls).graph;
    if (!is_clique_union(fg)) {
      cert = "l:f-f-f";
      return true;
    }
  }
  return false;
}

}  // namespace detail

inline Verdict classify_template(const Template& t) {
  Verdict verdict;
  const Template reduced = reduce_template(t).tmpl;
  const int n = reduced.order();
  const int m = reduced.base.edge_count();
  const bool edgeless = (m == 0);
  const bool complete = (m == n * (n - 1) / 2);

  int fulls = 0;
  for (Mark mk : reduced.marks)
    if (mk == Mark::full) ++fulls;
  const int empties = n - fulls;

  if (n <= 1 || (edgeless && fulls == 0) || (complete && empties == 0)) {
    verdict.label = UniformityLabel::uniform;
    verdict.certificate = "l:homog";
    return verdict;
  }
  if (edgeless) {
    // Disjoint cliques: order the blocks, then order inside each block.
    verdict.label = UniformityLabel::non_uniform;
    verdict.certificate = "block ordering (x:UK)";
    verdict.witness_sampler = "block";
    verdict.direction = "clique-union";
    return verdict;
  }
  if (complete) {
    verdict.label = UniformityLabel::non_uniform;
    verdict.certificate = "block ordering (x:UK, complement)";
    verdict.witness_sampler = "block";
    verdict.direction = "complete-multipartite";
    return verdict;
  }

  verdict.label = UniformityLabel::uniform;
  std::string cert;
  if (detail::find_uniformity_certificate(reduced, cert)) {
    verdict.certificate = cert;
  } else if (detail::find_uniformity_certificate(complement_template(reduced),
                                                 cert)) {
    verdict.certificate = "r:comp+" + cert;
  } else {
    verdict.certificate = "t:template";
  }
  return verdict;
}

}  // namespace ordlab
