#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "ordlab/graph.hpp"
#include "ordlab/graph_algo.hpp"
#include "ordlab/graph_io.hpp"
#include "ordlab/rng.hpp"

using namespace ordlab;

namespace {

// Independent embedding oracle: filter every injective map by the induced
// edge condition. Exponential, fine up to n = 7.
std::vector<std::vector<int>> brute_force_embeddings(const Graph& h,
                                                     const Graph& g) {
  std::vector<std::vector<int>> out;
  std::vector<int> map(h.order(), -1);
  std::vector<bool> used(g.order(), false);
  std::function<void(int)> rec = [&](int next) {
    if (next == h.order()) {
      bool ok = true;
      for (int a = 0; a < h.order() && ok; ++a)
        for (int b = a + 1; b < h.order() && ok; ++b)
          if (h.has_edge(a, b) != g.has_edge(map[a], map[b])) ok = false;
      if (ok) out.push_back(map);
      return;
    }
    for (int cand = 0; cand < g.order(); ++cand) {
      if (used[cand]) continue;
      used[cand] = true;
      map[next] = cand;
      rec(next + 1);
      used[cand] = false;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

// Test-only graph6 encoder, written independently of the decoder.
std::string encode_graph6(const Graph& g) {
  const int n = g.order();
  std::string bits;
  for (int v = 1; v < n; ++v)
    for (int u = 0; u < v; ++u) bits.push_back(g.has_edge(u, v) ? '1' : '0');
  while (bits.size() % 6 != 0) bits.push_back('0');
  std::string out(1, static_cast<char>(63 + n));
  for (std::size_t i = 0; i < bits.size(); i += 6) {
    int value = 0;
    for (int j = 0; j < 6; ++j) value = value * 2 + (bits[i + j] == '1');
    out.push_back(static_cast<char>(63 + value));
  }
  return out;
}

Graph graph_from_mask(int n, unsigned long long mask) {
  Graph g(n);
  int bit = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++bit)
      if ((mask >> bit) & 1) g.add_edge(u, v);
  return g;
}

Graph random_graph(int n, double p, Rng& rng) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.next_unit() < p) g.add_edge(u, v);
  return g;
}

}  // namespace

TEST_CASE("edge list parsing") {
  const Graph p3 = parse_edge_list("3\n0 1\n1 2\n");
  REQUIRE(p3.order() == 3);
  REQUIRE(p3.edge_count() == 2);
  REQUIRE(p3.has_edge(0, 1));
  REQUIRE(p3.has_edge(1, 2));
  REQUIRE_FALSE(p3.has_edge(0, 2));

  const Graph k1 = parse_edge_list("1\n");
  REQUIRE(k1.order() == 1);
  REQUIRE(k1.edge_count() == 0);

  std::vector<std::string> warnings;
  const Graph dup = parse_edge_list("2\n0 1\n1 0\n", &warnings);
  REQUIRE(dup.edge_count() == 1);
  REQUIRE(warnings.size() == 1);

  REQUIRE_THROWS_AS(parse_edge_list("2\n0 2\n"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_edge_list("2\n1 1\n"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_edge_list("abc\n"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_edge_list(""), std::invalid_argument);
}

TEST_CASE("graph6 decoding") {
  // 4-cycle 0-1-2-3-0 encoded by the test-side encoder.
  const Graph c4 = parse_graph6(encode_graph6(cycle_graph(4)));
  REQUIRE(c4.order() == 4);
  REQUIRE(c4.edge_count() == 4);
  REQUIRE(graphs_isomorphic(c4, cycle_graph(4)));

  // Cross-check the decoder against the independent encoder on every graph
  // with n <= 5.
  for (int n = 1; n <= 5; ++n) {
    const int bits = n * (n - 1) / 2;
    for (unsigned long long mask = 0; mask < (1ull << bits); ++mask) {
      const Graph g = graph_from_mask(n, mask);
      REQUIRE(parse_graph6(encode_graph6(g)) == g);
    }
  }

  REQUIRE_THROWS_AS(parse_graph6(""), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_graph6("C"), std::invalid_argument);
}

TEST_CASE("edge list round trip") {
  const Graph g = bull_graph();
  REQUIRE(parse_edge_list(write_edge_list(g)) == g);
}

TEST_CASE("induced subgraphs relabel ascending") {
  const auto sub = induced_subgraph(cycle_graph(4), {0, 1, 2});
  REQUIRE(sub.graph == path_graph(3));
  REQUIRE(sub.vertex_map == std::vector<int>{0, 1, 2});

  REQUIRE(induced_subgraph(complete_graph(3), {0}).graph == empty_graph(1));

  const auto leaves = induced_subgraph(star_graph(3), {1, 2, 3});
  REQUIRE(leaves.graph == empty_graph(3));

  REQUIRE_THROWS_AS(induced_subgraph(path_graph(3), {0, 5}),
                    std::out_of_range);
}

TEST_CASE("embedding enumeration on the named cases") {
  const auto k2_in_p3 = enumerate_embeddings(complete_graph(2), path_graph(3));
  std::vector<std::vector<int>> maps;
  for (const auto& e : k2_in_p3) maps.push_back(e.map);
  REQUIRE(maps == std::vector<std::vector<int>>{{0, 1}, {1, 0}, {1, 2}, {2, 1}});

  REQUIRE(enumerate_embeddings(path_graph(3), complete_graph(3)).empty());
  REQUIRE(enumerate_embeddings(empty_graph(1), bull_graph()).size() == 5);

  REQUIRE_THROWS_AS(enumerate_embeddings(path_graph(3), empty_graph(13)),
                    std::invalid_argument);
}

TEST_CASE("embedding enumeration equals the brute-force oracle") {
  Rng rng(2024);
  std::vector<Graph> targets = {path_graph(5),  cycle_graph(6), bull_graph(),
                                star_graph(4),  complete_graph(5),
                                empty_graph(4)};
  for (int i = 0; i < 8; ++i) targets.push_back(random_graph(7, 0.4, rng));
  const std::vector<Graph> patterns = {complete_graph(2), path_graph(3),
                                       complete_graph(3), cycle_graph(4),
                                       empty_graph(2)};
  for (const auto& g : targets) {
    for (const auto& h : patterns) {
      std::vector<std::vector<int>> got;
      for (const auto& e : enumerate_embeddings(h, g)) got.push_back(e.map);
      std::sort(got.begin(), got.end());
      REQUIRE(got == brute_force_embeddings(h, g));
    }
  }
}

TEST_CASE("twin classification") {
  const Graph k3 = complete_graph(3);
  REQUIRE(twin_status(k3, 0, 1) == TwinStatus::adjacent_twins);
  REQUIRE(twin_status(cycle_graph(4), 0, 2) == TwinStatus::nonadjacent_twins);
  const Graph p3 = path_graph(3);
  REQUIRE(twin_status(p3, 0, 2) == TwinStatus::nonadjacent_twins);
  REQUIRE(twin_status(p3, 0, 1) == TwinStatus::not_twins);
  REQUIRE_THROWS_AS(twin_status(p3, 1, 1), std::invalid_argument);
}

TEST_CASE("twin status flips under complement") {
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const Graph g = random_graph(6, 0.5, rng);
    const Graph gc = complement(g);
    for (int u = 0; u < 6; ++u)
      for (int v = u + 1; v < 6; ++v) {
        const auto s = twin_status(g, u, v);
        const auto sc = twin_status(gc, u, v);
        if (s == TwinStatus::adjacent_twins)
          REQUIRE(sc == TwinStatus::nonadjacent_twins);
        else if (s == TwinStatus::nonadjacent_twins)
          REQUIRE(sc == TwinStatus::adjacent_twins);
        else
          REQUIRE(sc == TwinStatus::not_twins);
      }
  }
}

TEST_CASE("structure report on the named cases") {
  const Graph k3k2 = disjoint_union(complete_graph(3), complete_graph(2));
  auto r = structure_report(k3k2);
  REQUIRE(r.clique_union);
  REQUIRE_FALSE(r.complete_multipartite);

  r = structure_report(cycle_graph(4));
  REQUIRE(r.complete_multipartite);
  REQUIRE(r.two_connected);
  REQUIRE_FALSE(r.clique_union);

  r = structure_report(path_graph(3));
  REQUIRE(r.forest);
  REQUIRE_FALSE(r.clique_union);
  REQUIRE(r.complete_multipartite);
  REQUIRE(r.max_degree == 2);
  REQUIRE(r.leaf_support == std::vector<int>{1});

  REQUIRE(structure_report(complete_graph(4)).homogeneous);
  REQUIRE(structure_report(empty_graph(3)).homogeneous);
  REQUIRE_FALSE(structure_report(path_graph(3)).homogeneous);
}

TEST_CASE("complete multipartite iff complement is a clique union, n <= 7") {
  for (int n = 1; n <= 7; ++n) {
    const int bits = n * (n - 1) / 2;
    const unsigned long long limit = 1ull << bits;
    // Full enumeration through n = 6; a seeded slice of n = 7.
    const unsigned long long step = (n == 7) ? 97 : 1;
    for (unsigned long long mask = 0; mask < limit; mask += step) {
      const Graph g = graph_from_mask(n, mask);
      REQUIRE(is_clique_union(complement(g)) ==
              structure_report(g).complete_multipartite);
      REQUIRE(complement(complement(g)) == g);
    }
  }
}

TEST_CASE("constructions: complement, glue, union") {
  REQUIRE(graphs_isomorphic(complement(path_graph(3)),
                            disjoint_union(complete_graph(2), empty_graph(1))));
  REQUIRE(graphs_isomorphic(glue_at_vertex(complete_graph(2), 0,
                                           complete_graph(2), 0),
                            path_graph(3)));
  REQUIRE(disjoint_union(empty_graph(1), empty_graph(1)) == empty_graph(2));
}

TEST_CASE("replication over a shared subgraph") {
  const auto two_petals = replicate_over_subgraph(cycle_graph(4), {0}, 2);
  REQUIRE(two_petals.graph.order() == 7);
  REQUIRE(two_petals.graph.edge_count() == 8);

  const auto identity = replicate_over_subgraph(bull_graph(), {0, 1}, 1);
  REQUIRE(graphs_isomorphic(identity.graph, bull_graph()));

  const auto claw = replicate_over_subgraph(complete_graph(2), {0}, 3);
  REQUIRE(graphs_isomorphic(claw.graph, star_graph(3)));

  REQUIRE_THROWS_AS(replicate_over_subgraph(path_graph(3), {}, 2),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(replicate_over_subgraph(path_graph(3), {0, 1, 2}, 2),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(replicate_over_subgraph(path_graph(3), {0}, 100000),
                    std::invalid_argument);
}

TEST_CASE("replication contains exactly n copies extending the shared part") {
  // Flower and broom families: count distinct image sets of G that agree with
  // the identity on the shared vertices.
  for (int n = 1; n <= 4; ++n) {
    for (const auto& [base, shared] :
         std::vector<std::pair<Graph, std::vector<int>>>{
             {cycle_graph(4), {0}}, {path_graph(3), {0}}}) {
      const auto rep = replicate_over_subgraph(base, shared, n);
      std::set<std::vector<int>> images;
      for (const auto& emb : enumerate_embeddings(base, rep.graph, 16)) {
        bool extends = true;
        for (std::size_t i = 0; i < shared.size(); ++i)
          if (emb.map[shared[i]] != rep.shared_image[i]) extends = false;
        if (!extends) continue;
        std::vector<int> img = emb.map;
        std::sort(img.begin(), img.end());
        images.insert(img);
      }
      REQUIRE(static_cast<int>(images.size()) == n);
    }
  }
}

TEST_CASE("articulation points and two-connectivity") {
  REQUIRE(articulation_points(path_graph(4)) == std::vector<int>{1, 2});
  REQUIRE(is_two_connected(cycle_graph(5)));
  REQUIRE_FALSE(is_two_connected(path_graph(3)));
  REQUIRE_FALSE(is_two_connected(complete_graph(2)));
  REQUIRE(is_two_connected(complete_graph(3)));
  REQUIRE_FALSE(is_two_connected(bull_graph()));
}

TEST_CASE("forest, bipartite and triangle predicates") {
  REQUIRE(is_forest(disjoint_union(path_graph(4), star_graph(3))));
  REQUIRE_FALSE(is_forest(cycle_graph(3)));
  REQUIRE(is_bipartite(cycle_graph(6)));
  REQUIRE_FALSE(is_bipartite(cycle_graph(5)));
  REQUIRE(is_triangle_free(cycle_graph(4)));
  REQUIRE_FALSE(is_triangle_free(bull_graph()));
}

TEST_CASE("parse several blocks") {
  const auto graphs = parse_edge_list_blocks("3\n0 1\n1 2\n\n2\n0 1\n\n\n1\n");
  REQUIRE(graphs.size() == 3);
  REQUIRE(graphs[0] == path_graph(3));
  REQUIRE(graphs[1] == complete_graph(2));
  REQUIRE(graphs[2] == empty_graph(1));
}
