#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ordlab/bernoulli.hpp"
#include "ordlab/graph.hpp"
#include "ordlab/graph_algo.hpp"
#include "ordlab/ordering.hpp"
#include "ordlab/rng.hpp"

namespace ordlab {

// Canonical representative of t mod 1 in [0,1).
inline double mod1(double t) {
  double r = t - std::floor(t);
  if (r >= 1.0) r -= 1.0;
  return r;
}

// ---------------------------------------------------------------------------
// Uniform ordering: i.i.d. U(0,1) latents.

inline SampleResult sample_uniform(const Graph& g, Rng& rng) {
  SampleResult s;
  s.latents.x.resize(g.order());
  for (auto& x : s.latents.x) x = rng.next_unit();
  s.ordering = ordering_from_latents(s.latents.x, &s.latent_ties);
  return s;
}

// ---------------------------------------------------------------------------
// Block ordering: uniform order of blocks, uniform order inside each block.
// Blocks are the cliques of a clique union, or the partite classes of a
// complete multipartite graph (components of the complement).

struct BlockStructure {
  std::vector<std::vector<int>> blocks;
};

inline BlockStructure block_structure(const Graph& g) {
  const auto report = structure_report(g);
  if (report.clique_union) return {connected_components(g)};
  if (report.complete_multipartite) return {connected_components(complement(g))};
  throw std::domain_error(
      "block sampler needs a clique union or complete multipartite graph");
}

inline SampleResult sample_block(const Graph& g, const BlockStructure& bs,
                                 Rng& rng) {
  const int n = g.order();
  std::vector<int> block_order(bs.blocks.size());
  std::iota(block_order.begin(), block_order.end(), 0);
  rng.shuffle(block_order);
  SampleResult s;
  s.ordering.rank.assign(n, 0);
  int next_rank = 0;
  for (int b : block_order) {
    std::vector<int> members = bs.blocks[b];
    rng.shuffle(members);
    for (int v : members) s.ordering.rank[v] = next_rank++;
  }
  // Canonical latents consistent with the drawn ranks.
  s.latents.x.resize(n);
  for (int v = 0; v < n; ++v) s.latents.x[v] = (s.ordering.rank[v] + 0.5) / n;
  return s;
}

inline SampleResult sample_block(const Graph& g, Rng& rng) {
  return sample_block(g, block_structure(g), rng);
}

// ---------------------------------------------------------------------------
// Spectral ordering: embed vertices as the columns of B with
// B^2 = I + eps*A, then order by projection onto a random unit vector.
// Pairwise distances depend only on adjacency, which makes the ordering
// consistent; it is non-uniform on every non-homogeneous graph.

inline Eigen::MatrixXd embed_spectral(const Graph& g, double eps) {
  const int n = g.order();
  const int max_deg = g.max_degree();
  if (max_deg > 0 && !(eps > 0.0 && eps < 1.0 / max_deg))
    throw std::domain_error("embed_spectral: need 0 < eps < 1/max_degree");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (auto [u, v] : g.edges()) {
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("embed_spectral: eigendecomposition failed");
  Eigen::VectorXd scaled = solver.eigenvalues();
  for (int i = 0; i < n; ++i) {
    const double shifted = 1.0 + eps * scaled(i);
    if (shifted <= 0.0)
      throw std::runtime_error("embed_spectral: I + eps*A not positive definite");
    scaled(i) = std::sqrt(shifted);
  }
  return solver.eigenvectors() * scaled.asDiagonal() *
         solver.eigenvectors().transpose();
}

inline SampleResult sample_spectral(const Graph& g, const Eigen::MatrixXd& b,
                                    Rng& rng) {
  const int n = g.order();
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) u(i) = rng.next_gaussian();
  const double norm = u.norm();
  if (norm > 0.0) u /= norm;
  const Eigen::VectorXd scores = b * u;
  SampleResult s;
  s.latents.x.assign(scores.data(), scores.data() + n);
  s.ordering = ordering_from_latents(s.latents.x, &s.latent_ties);
  return s;
}

inline SampleResult sample_spectral(const Graph& g, double eps, Rng& rng) {
  return sample_spectral(g, embed_spectral(g, eps), rng);
}

// ---------------------------------------------------------------------------
// Edge-signed mod-1 conditioning: pick an edge xy uniformly, give every other
// vertex an i.i.d. uniform, and solve for one vertex so that
// sum_v eps_v X_v = alpha mod 1 with eps_v = -1 exactly on {x,y}.
// Uniform on every (n-1)-subset, non-uniform on the whole vertex set.

inline SampleResult sample_mod1_edge(const Graph& g, double alpha, Rng& rng) {
  const int n = g.order();
  const auto edges = g.edges();
  if (n < 2 || edges.empty())
    throw std::domain_error("mod1_edge sampler needs n >= 2 and an edge");
  SampleResult s;
  const auto [ex, ey] = edges[rng.next_below(edges.size())];
  s.conditioning_edges.push_back({ex, ey});
  int v0 = 0;
  if (v0 == ex || v0 == ey) {
    v0 = -1;
    for (int v = 0; v < n; ++v) {
      if (v != ex && v != ey) {
        v0 = v;
        break;
      }
    }
    if (v0 < 0) v0 = 0;  // K2: every vertex lies on the edge
  }
  s.latents.x.assign(n, 0.0);
  double partial = 0.0;
  for (int v = 0; v < n; ++v) {
    if (v == v0) continue;
    s.latents.x[v] = rng.next_unit();
    partial += (v == ex || v == ey) ? -s.latents.x[v] : s.latents.x[v];
  }
  const double sign0 = (v0 == ex || v0 == ey) ? -1.0 : 1.0;
  s.latents.x[v0] = mod1(sign0 * (alpha - partial));
  s.ordering = ordering_from_latents(s.latents.x, &s.latent_ties);
  return s;
}

// ---------------------------------------------------------------------------
// Disjoint-copy conditioning: the copies of H in G are pairwise vertex
// disjoint; each copy is conditioned independently. Homogeneous H uses the
// all-plus sum constraint, non-homogeneous H re-runs the edge-signed
// construction inside each copy.

struct CopyPattern {
  Graph h;
  bool homogeneous = false;
  std::vector<std::vector<int>> copies;          // sorted vertex sets
  std::vector<std::vector<int>> copy_embedding;  // H vertex -> G vertex
  std::vector<std::pair<int, int>> h_edges;
};

inline CopyPattern prepare_copy_pattern(const Graph& g, const Graph& h,
                                        int enumeration_cap = 12) {
  if (h.order() < 2)
    throw std::invalid_argument("disjoint copies: |V(H)| must be >= 2");
  CopyPattern p;
  p.h = h;
  const auto hreport = structure_report(h);
  p.homogeneous = hreport.homogeneous;
  p.h_edges = h.edges();
  std::vector<bool> used(g.order(), false);
  for (const auto& emb : enumerate_embeddings(h, g, enumeration_cap)) {
    std::vector<int> set = emb.map;
    std::sort(set.begin(), set.end());
    if (std::find(p.copies.begin(), p.copies.end(), set) != p.copies.end())
      continue;
    for (int v : set)
      if (used[v])
        throw std::domain_error("disjoint copies: copies of H are not vertex disjoint");
    for (int v : set) used[v] = true;
    p.copies.push_back(set);
    p.copy_embedding.push_back(emb.map);
  }
  return p;
}

// Validates externally supplied copy sets against the enumerated ones.
inline void validate_copy_sets(const CopyPattern& p,
                               std::vector<std::vector<int>> provided) {
  for (auto& s : provided) std::sort(s.begin(), s.end());
  std::sort(provided.begin(), provided.end());
  std::vector<std::vector<int>> expected = p.copies;
  std::sort(expected.begin(), expected.end());
  if (provided != expected)
    throw std::domain_error("disjoint copies: provided copies are not exhaustive");
}

inline SampleResult sample_disjoint_copies(const Graph& g,
                                           const CopyPattern& p, double alpha,
                                           Rng& rng) {
  SampleResult s;
  s.latents.x.resize(g.order());
  for (auto& x : s.latents.x) x = rng.next_unit();
  for (std::size_t c = 0; c < p.copies.size(); ++c) {
    const auto& copy = p.copies[c];
    if (p.homogeneous) {
      const int pivot = copy.front();
      double rest = 0.0;
      for (int v : copy)
        if (v != pivot) rest += s.latents.x[v];
      s.latents.x[pivot] = mod1(alpha - rest);
    } else {
      const auto& emb = p.copy_embedding[c];
      const auto [ha, hb] = p.h_edges[rng.next_below(p.h_edges.size())];
      const int ga = emb[ha];
      const int gb = emb[hb];
      s.conditioning_edges.push_back({ga, gb});
      int pivot = -1;
      for (int v : copy) {
        if (v != ga && v != gb) {
          pivot = v;
          break;
        }
      }
      double partial = 0.0;
      for (int v : copy) {
        if (v == pivot) continue;
        partial += (v == ga || v == gb) ? -s.latents.x[v] : s.latents.x[v];
      }
      const double sign0 = (pivot == ga || pivot == gb) ? -1.0 : 1.0;
      s.latents.x[pivot] = mod1(sign0 * (alpha - partial));
    }
  }
  s.ordering = ordering_from_latents(s.latents.x, &s.latent_ties);
  return s;
}

// ---------------------------------------------------------------------------
// Double broom: a path u_1..u_n with extra leaves on both end-vertices. The
// central path sum is conditioned to a zero of B_n, which keeps every P_{n+1}
// uniform while each P_{n+2} stays non-uniform.

struct DoubleBroom {
  Graph graph;
  std::vector<int> path;
  std::vector<int> left_leaves;
  std::vector<int> right_leaves;
};

inline DoubleBroom double_broom_graph(int path_len, int left, int right) {
  if (path_len < 3)
    throw std::invalid_argument("double broom: path length must be >= 3");
  if (left < 0 || right < 0)
    throw std::invalid_argument("double broom: leaf counts must be >= 0");
  DoubleBroom b;
  Graph g(path_len + left + right);
  for (int i = 0; i + 1 < path_len; ++i) g.add_edge(i, i + 1);
  for (int i = 0; i < path_len; ++i) b.path.push_back(i);
  for (int i = 0; i < left; ++i) {
    g.add_edge(0, path_len + i);
    b.left_leaves.push_back(path_len + i);
  }
  for (int i = 0; i < right; ++i) {
    g.add_edge(path_len - 1, path_len + left + i);
    b.right_leaves.push_back(path_len + left + i);
  }
  b.graph = std::move(g);
  return b;
}

inline void validate_broom_alpha(int path_len, double alpha) {
  if (std::fabs(bernoulli_poly(path_len, alpha)) > 1e-12)
    throw std::domain_error("double broom: alpha is not a zero of B_n");
}

inline SampleResult sample_double_broom(const DoubleBroom& b, double alpha,
                                        Rng& rng) {
  SampleResult s;
  s.latents.x.resize(b.graph.order());
  for (auto& x : s.latents.x) x = rng.next_unit();
  const int last = b.path.back();
  double rest = 0.0;
  for (int v : b.path)
    if (v != last) rest += s.latents.x[v];
  s.latents.x[last] = mod1(alpha - rest);
  s.ordering = ordering_from_latents(s.latents.x, &s.latent_ties);
  return s;
}

// ---------------------------------------------------------------------------
// Flower: k four-cycles sharing one center vertex. Every petal's cycle sum is
// conditioned to alpha; the center and two vertices per petal stay free.

struct Flower {
  Graph graph;
  int center = 0;
  std::vector<std::array<int, 3>> petals;  // attach, opposite, attach
};

inline Flower flower_graph(int petals) {
  if (petals < 1) throw std::invalid_argument("flower: need k >= 1 petals");
  const auto rep = replicate_over_subgraph(cycle_graph(4), {0}, petals);
  Flower f;
  f.graph = rep.graph;
  f.center = rep.shared_image.front();
  for (const auto& image : rep.copy_image)
    f.petals.push_back({image[1], image[2], image[3]});
  return f;
}

inline SampleResult sample_flower(const Flower& f, double alpha, Rng& rng) {
  SampleResult s;
  s.latents.x.assign(f.graph.order(), 0.0);
  s.latents.x[f.center] = rng.next_unit();
  for (const auto& petal : f.petals) {
    s.latents.x[petal[0]] = rng.next_unit();
    s.latents.x[petal[1]] = rng.next_unit();
    s.latents.x[petal[2]] =
        mod1(alpha - s.latents.x[f.center] - s.latents.x[petal[0]] -
             s.latents.x[petal[1]]);
  }
  s.ordering = ordering_from_latents(s.latents.x, &s.latent_ties);
  return s;
}

// ---------------------------------------------------------------------------
// Sampler specification and dispatch.

enum class SamplerKind {
  uniform,
  block,
  spectral,
  mod1_edge,
  disjoint_copies,
  double_broom,
  flower
};

inline std::string sampler_kind_name(SamplerKind k) {
  switch (k) {
    case SamplerKind::uniform: return "uniform";
    case SamplerKind::block: return "block";
    case SamplerKind::spectral: return "spectral";
    case SamplerKind::mod1_edge: return "mod1_edge";
    case SamplerKind::disjoint_copies: return "disjoint_copies";
    case SamplerKind::double_broom: return "double_broom";
    case SamplerKind::flower: return "flower";
  }
  throw std::invalid_argument("unknown sampler kind");
}

inline SamplerKind sampler_kind_from_name(const std::string& name) {
  for (SamplerKind k :
       {SamplerKind::uniform, SamplerKind::block, SamplerKind::spectral,
        SamplerKind::mod1_edge, SamplerKind::disjoint_copies,
        SamplerKind::double_broom, SamplerKind::flower}) {
    if (sampler_kind_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown sampler kind: " + name);
}

struct SamplerSpec {
  SamplerKind kind = SamplerKind::uniform;
  std::optional<double> alpha;    // empty = auto
  std::optional<double> epsilon;  // empty = auto
  std::uint64_t seed = 0;
  std::optional<Graph> copy_pattern;  // H, for disjoint_copies
  int broom_path_len = 3;
  int broom_left_leaves = 2;
  int broom_right_leaves = 2;
  int flower_petals = 1;
};

// A sampler bound to its graph with all per-graph preparation done. draw() is
// pure given the Rng, so parallel chunks with derived seeds are reproducible.
struct PreparedSampler {
  std::string name;
  Graph graph;
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double epsilon = std::numeric_limits<double>::quiet_NaN();
  std::function<SampleResult(Rng&)> draw;
};

inline double resolve_alpha(const SamplerSpec& spec, int degree) {
  if (spec.alpha) return *spec.alpha;
  if (spec.kind == SamplerKind::double_broom) {
    // Needs a zero of B_n; pick 1/2 for odd n, the lower bisected zero else.
    if (spec.broom_path_len % 2 == 1) return 0.5;
    return bernoulli_zeros(spec.broom_path_len).front();
  }
  return pick_alpha_auto(degree);
}

inline PreparedSampler prepare_sampler(const SamplerSpec& spec,
                                       const Graph* graph = nullptr) {
  PreparedSampler out;
  out.name = sampler_kind_name(spec.kind);
  auto require_graph = [&]() -> const Graph& {
    if (!graph) throw std::invalid_argument(out.name + " sampler needs a graph");
    return *graph;
  };
  switch (spec.kind) {
    case SamplerKind::uniform: {
      out.graph = require_graph();
      const Graph g = out.graph;
      out.draw = [g](Rng& rng) { return sample_uniform(g, rng); };
      break;
    }
    case SamplerKind::block: {
      out.graph = require_graph();
      const Graph g = out.graph;
      const BlockStructure bs = block_structure(g);
      out.draw = [g, bs](Rng& rng) { return sample_block(g, bs, rng); };
      break;
    }
    case SamplerKind::spectral: {
      out.graph = require_graph();
      const Graph g = out.graph;
      const int max_deg = g.max_degree();
      out.epsilon = spec.epsilon ? *spec.epsilon
                                 : (max_deg > 0 ? 1.0 / (2.0 * max_deg) : 0.5);
      const Eigen::MatrixXd b = embed_spectral(g, out.epsilon);
      out.draw = [g, b](Rng& rng) { return sample_spectral(g, b, rng); };
      break;
    }
    case SamplerKind::mod1_edge: {
      out.graph = require_graph();
      const Graph g = out.graph;
      if (g.edge_count() == 0 || g.order() < 2)
        throw std::domain_error("mod1_edge sampler needs n >= 2 and an edge");
      out.alpha = resolve_alpha(spec, std::max(1, g.order() - 1));
      const double alpha = out.alpha;
      out.draw = [g, alpha](Rng& rng) { return sample_mod1_edge(g, alpha, rng); };
      break;
    }
    case SamplerKind::disjoint_copies: {
      out.graph = require_graph();
      if (!spec.copy_pattern)
        throw std::invalid_argument("disjoint_copies sampler needs copy_pattern H");
      const Graph g = out.graph;
      const CopyPattern p = prepare_copy_pattern(g, *spec.copy_pattern,
                                                 std::max(12, g.order()));
      out.alpha = resolve_alpha(spec, spec.copy_pattern->order());
      const double alpha = out.alpha;
      out.draw = [g, p, alpha](Rng& rng) {
        return sample_disjoint_copies(g, p, alpha, rng);
      };
      break;
    }
    case SamplerKind::double_broom: {
      const DoubleBroom broom = double_broom_graph(
          spec.broom_path_len, spec.broom_left_leaves, spec.broom_right_leaves);
      out.graph = broom.graph;
      out.alpha = resolve_alpha(spec, spec.broom_path_len);
      validate_broom_alpha(spec.broom_path_len, out.alpha);
      const double alpha = out.alpha;
      out.draw = [broom, alpha](Rng& rng) {
        return sample_double_broom(broom, alpha, rng);
      };
      break;
    }
    case SamplerKind::flower: {
      const Flower f = flower_graph(spec.flower_petals);
      out.graph = f.graph;
      out.alpha = resolve_alpha(spec, 4);
      const double alpha = out.alpha;
      out.draw = [f, alpha](Rng& rng) { return sample_flower(f, alpha, rng); };
      break;
    }
  }
  return out;
}

}  // namespace ordlab
