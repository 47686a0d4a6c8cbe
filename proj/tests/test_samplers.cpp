#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <vector>

#include "ordlab/bernoulli.hpp"
#include "ordlab/graph.hpp"
#include "ordlab/ordering.hpp"
#include "ordlab/rng.hpp"
#include "ordlab/samplers.hpp"

using namespace ordlab;

namespace {

// Signed circle distance to the target, for congruence checks.
double mod1_error(double value, double target) {
  const double d = mod1(value - target);
  return std::min(d, 1.0 - d);
}

std::vector<double> pattern_frequencies(const PreparedSampler& s,
                                        const std::vector<int>& tuple,
                                        std::uint64_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> freq(factorial(static_cast<int>(tuple.size())), 0.0);
  for (std::uint64_t i = 0; i < n; ++i)
    freq[pattern_index(s.draw(rng).ordering, tuple)] += 1.0;
  for (auto& f : freq) f /= double(n);
  return freq;
}

}  // namespace

TEST_CASE("latent ordering breaks ties by index") {
  const auto ord = ordering_from_latents({0.5, 0.5, 0.1});
  REQUIRE(ord.rank == std::vector<int>{1, 2, 0});
  REQUIRE(ord.sequence() == std::vector<int>{2, 0, 1});
}

TEST_CASE("uniform sampler basics") {
  Rng rng(1);
  const auto single = sample_uniform(empty_graph(1), rng);
  REQUIRE(single.ordering.rank == std::vector<int>{0});

  SamplerSpec spec;
  spec.kind = SamplerKind::uniform;
  const Graph k2 = complete_graph(2);
  const auto sampler = prepare_sampler(spec, &k2);
  const auto freq = pattern_frequencies(sampler, {0, 1}, 100000, 7);
  REQUIRE(freq[0] == Catch::Approx(0.5).margin(0.01));
}

TEST_CASE("block sampler on K2 + K1 matches the process enumeration") {
  const Graph g = disjoint_union(complete_graph(2), empty_graph(1));
  SamplerSpec spec;
  spec.kind = SamplerKind::block;
  const auto sampler = prepare_sampler(spec, &g);
  const auto freq = pattern_frequencies(sampler, {0, 1, 2}, 200000, 11);
  // Feasible orders a1<a2<b, a2<a1<b, b<a1<a2, b<a2<a1 at 1/4 each;
  // interleavings are structurally impossible.
  REQUIRE(freq[0] == Catch::Approx(0.25).margin(0.01));
  REQUIRE(freq[2] == Catch::Approx(0.25).margin(0.01));
  REQUIRE(freq[4] == Catch::Approx(0.25).margin(0.01));
  REQUIRE(freq[5] == Catch::Approx(0.25).margin(0.01));
  REQUIRE(freq[1] == 0.0);
  REQUIRE(freq[3] == 0.0);
}

TEST_CASE("block sampler on the edgeless graph is uniform") {
  const Graph g = empty_graph(3);
  SamplerSpec spec;
  spec.kind = SamplerKind::block;
  const auto sampler = prepare_sampler(spec, &g);
  const auto freq = pattern_frequencies(sampler, {0, 1, 2}, 120000, 13);
  for (double f : freq) REQUIRE(f == Catch::Approx(1.0 / 6).margin(0.012));
}

TEST_CASE("block sampler rejects graphs without block structure") {
  const Graph p4 = path_graph(4);
  REQUIRE_THROWS_AS(block_structure(p4), std::domain_error);
}

TEST_CASE("spectral embedding satisfies the Gram identity") {
  const auto b = embed_spectral(complete_graph(2), 0.25);
  const double d01 = (b.col(0) - b.col(1)).squaredNorm();
  REQUIRE(d01 == Catch::Approx(1.5).margin(1e-12));

  const auto b2 = embed_spectral(empty_graph(2), 0.25);
  REQUIRE((b2.col(0) - b2.col(1)).squaredNorm() == Catch::Approx(2.0).margin(1e-12));

  // B^T B = I + eps A on P3.
  const Graph p3 = path_graph(3);
  const auto b3 = embed_spectral(p3, 0.25);
  Eigen::MatrixXd gram = b3.transpose() * b3;
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) {
      const double want = (u == v) ? 1.0 : (p3.has_edge(u, v) ? 0.25 : 0.0);
      REQUIRE(gram(u, v) == Catch::Approx(want).margin(1e-10));
    }

  REQUIRE_THROWS_AS(embed_spectral(p3, 0.6), std::domain_error);
  REQUIRE_THROWS_AS(embed_spectral(p3, 0.0), std::domain_error);
}

TEST_CASE("Gram identity holds on a corpus of graphs up to n = 8") {
  Rng rng(99);
  std::vector<Graph> corpus = {path_graph(4),     cycle_graph(5),
                               cycle_graph(6),    complete_graph(5),
                               bull_graph(),      star_graph(4),
                               complete_bipartite_graph(3, 3)};
  for (int i = 0; i < 6; ++i) {
    Graph g(8);
    for (int u = 0; u < 8; ++u)
      for (int v = u + 1; v < 8; ++v)
        if (rng.next_unit() < 0.4) g.add_edge(u, v);
    corpus.push_back(g);
  }
  for (const auto& g : corpus) {
    const double eps = g.max_degree() > 0 ? 1.0 / (2.0 * g.max_degree()) : 0.5;
    const auto b = embed_spectral(g, eps);
    for (int u = 0; u < g.order(); ++u)
      for (int v = u + 1; v < g.order(); ++v) {
        const double want = 2.0 - 2.0 * eps * (g.has_edge(u, v) ? 1.0 : 0.0);
        REQUIRE((b.col(u) - b.col(v)).squaredNorm() ==
                Catch::Approx(want).margin(1e-10));
      }
  }
}

TEST_CASE("spectral middle probability on P3 is arccos(1/3)/pi") {
  const Graph p3 = path_graph(3);
  SamplerSpec spec;
  spec.kind = SamplerKind::spectral;  // auto epsilon = 1/(2*max_degree) = 1/4
  const auto sampler = prepare_sampler(spec, &p3);
  REQUIRE(sampler.epsilon == Catch::Approx(0.25));
  Rng rng(17);
  const std::uint64_t n = 300000;
  std::uint64_t middle = 0;
  for (std::uint64_t i = 0; i < n; ++i)
    if (sampler.draw(rng).ordering.rank[1] == 1) ++middle;
  const double expect = std::acos(1.0 / 3.0) / M_PI;
  const double se = std::sqrt(expect * (1 - expect) / double(n));
  REQUIRE(std::fabs(double(middle) / n - expect) < 5.0 * se);
}

TEST_CASE("spectral ordering on homogeneous graphs is uniform") {
  for (const Graph& g : {complete_graph(3), empty_graph(3)}) {
    SamplerSpec spec;
    spec.kind = SamplerKind::spectral;
    const auto sampler = prepare_sampler(spec, &g);
    const auto freq = pattern_frequencies(sampler, {0, 1, 2}, 120000, 23);
    for (double f : freq) REQUIRE(f == Catch::Approx(1.0 / 6).margin(0.012));
  }
}

TEST_CASE("mod1 edge sampler satisfies its congruence exactly") {
  for (const Graph& g : {path_graph(3), path_graph(4), cycle_graph(4),
                         complete_graph(2)}) {
    SamplerSpec spec;
    spec.kind = SamplerKind::mod1_edge;
    spec.alpha = 0.3;
    const auto sampler = prepare_sampler(spec, &g);
    Rng rng(31);
    for (int i = 0; i < 2000; ++i) {
      const auto s = sampler.draw(rng);
      REQUIRE(s.conditioning_edges.size() == 1);
      const auto [ex, ey] = s.conditioning_edges.front();
      REQUIRE(g.has_edge(ex, ey));
      double sum = 0.0;
      for (int v = 0; v < g.order(); ++v)
        sum += (v == ex || v == ey) ? -s.latents.x[v] : s.latents.x[v];
      REQUIRE(mod1_error(sum, 0.3) < 1e-12);
    }
  }
}

TEST_CASE("mod1 edge sampler reproduces the degree-asymmetry offset on P3") {
  // delta = P(leaf < center < leaf') - P(center < leaf < leaf') = 1/8 at
  // alpha = 0, from the exact edge-conditioned order statistics.
  const Graph p3 = path_graph(3);
  SamplerSpec spec;
  spec.kind = SamplerKind::mod1_edge;
  spec.alpha = 0.0;
  const auto sampler = prepare_sampler(spec, &p3);
  const std::uint64_t n = 400000;
  const auto freq = pattern_frequencies(sampler, {0, 1, 2}, n, 37);
  const double delta = freq[0] - freq[2];  // 0<1<2 versus 1<0<2
  REQUIRE(delta == Catch::Approx(0.125).margin(5e-3));
}

TEST_CASE("mod1 auto alpha picks a working target for P3") {
  const Graph p3 = path_graph(3);
  SamplerSpec spec;
  spec.kind = SamplerKind::mod1_edge;
  const auto sampler = prepare_sampler(spec, &p3);
  // degree n-1 = 2; |B_2| peaks at the endpoints.
  REQUIRE(sampler.alpha == 0.0);
}

TEST_CASE("disjoint copies: the unique non-adjacent pair in P3") {
  const Graph p3 = path_graph(3);
  SamplerSpec spec;
  spec.kind = SamplerKind::disjoint_copies;
  spec.copy_pattern = empty_graph(2);
  spec.alpha = 0.0;
  const auto sampler = prepare_sampler(spec, &p3);

  // Exactly one copy {0,2}; the conditioned sum makes
  // P(center < leaf0 < leaf2) = 1/6 - B_2(0)/4 = 1/8.
  const std::uint64_t n = 400000;
  const auto freq = pattern_frequencies(sampler, {1, 0, 2}, n, 41);
  REQUIRE(freq[0] == Catch::Approx(0.125).margin(5e-3));

  // At a zero of B_2 the event reverts to the uniform 1/6.
  SamplerSpec zero_spec = spec;
  zero_spec.alpha = bernoulli_zeros(2).front();
  const auto zero_sampler = prepare_sampler(zero_spec, &p3);
  const auto zero_freq = pattern_frequencies(zero_sampler, {1, 0, 2}, n, 43);
  REQUIRE(zero_freq[0] == Catch::Approx(1.0 / 6).margin(5e-3));
}

TEST_CASE("disjoint copies with no copy present behaves uniformly") {
  const Graph k3 = complete_graph(3);
  SamplerSpec spec;
  spec.kind = SamplerKind::disjoint_copies;
  spec.copy_pattern = empty_graph(2);
  spec.alpha = 0.0;
  const auto sampler = prepare_sampler(spec, &k3);
  const auto freq = pattern_frequencies(sampler, {0, 1, 2}, 120000, 47);
  for (double f : freq) REQUIRE(f == Catch::Approx(1.0 / 6).margin(0.012));
}

TEST_CASE("disjoint copies with a non-homogeneous pattern runs the edge construction per copy") {
  // Two disjoint P3 copies inside P3 + P3.
  const Graph g = disjoint_union(path_graph(3), path_graph(3));
  SamplerSpec spec;
  spec.kind = SamplerKind::disjoint_copies;
  spec.copy_pattern = path_graph(3);
  spec.alpha = 0.0;
  const auto sampler = prepare_sampler(spec, &g);
  Rng rng(53);
  for (int i = 0; i < 2000; ++i) {
    const auto s = sampler.draw(rng);
    REQUIRE(s.conditioning_edges.size() == 2);
    for (const auto& [ex, ey] : s.conditioning_edges) {
      double sum = 0.0;
      const int base = ex < 3 ? 0 : 3;
      for (int v = base; v < base + 3; ++v)
        sum += (v == ex || v == ey) ? -s.latents.x[v] : s.latents.x[v];
      REQUIRE(mod1_error(sum, 0.0) < 1e-12);
    }
  }
  // The per-copy construction matches the single-graph mod1 sampler in law.
  const auto freq = pattern_frequencies(sampler, {0, 1, 2}, 400000, 59);
  REQUIRE(freq[0] - freq[2] == Catch::Approx(0.125).margin(5e-3));
}

TEST_CASE("disjoint copies rejects overlapping copies") {
  const Graph g = empty_graph(3);
  SamplerSpec spec;
  spec.kind = SamplerKind::disjoint_copies;
  spec.copy_pattern = empty_graph(2);
  REQUIRE_THROWS_AS(prepare_sampler(spec, &g), std::domain_error);

  const Graph p3 = path_graph(3);
  const auto pattern = prepare_copy_pattern(p3, empty_graph(2));
  REQUIRE_THROWS_AS(validate_copy_sets(pattern, {{0, 1}}), std::domain_error);
  REQUIRE_NOTHROW(validate_copy_sets(pattern, {{0, 2}}));
}

TEST_CASE("double broom validates and conditions the central path") {
  SamplerSpec spec;
  spec.kind = SamplerKind::double_broom;
  spec.broom_path_len = 3;
  spec.broom_left_leaves = 4;
  spec.broom_right_leaves = 4;
  spec.alpha = 0.5;
  const auto sampler = prepare_sampler(spec);
  REQUIRE(sampler.graph.order() == 11);

  Rng rng(61);
  for (int i = 0; i < 2000; ++i) {
    const auto s = sampler.draw(rng);
    const double sum = s.latents.x[0] + s.latents.x[1] + s.latents.x[2];
    REQUIRE(mod1_error(sum, 0.5) < 1e-12);
  }

  // The induced order on the central path is uniform by exchangeability.
  const auto freq = pattern_frequencies(sampler, {0, 1, 2}, 150000, 67);
  for (double f : freq) REQUIRE(f == Catch::Approx(1.0 / 6).margin(0.012));

  SamplerSpec bad = spec;
  bad.alpha = 0.3;  // B_3(0.3) != 0
  REQUIRE_THROWS_AS(prepare_sampler(bad), std::domain_error);

  SamplerSpec auto_alpha = spec;
  auto_alpha.alpha.reset();
  REQUIRE(prepare_sampler(auto_alpha).alpha == 0.5);
}

TEST_CASE("flower conditions every petal cycle") {
  SamplerSpec spec;
  spec.kind = SamplerKind::flower;
  spec.flower_petals = 2;
  spec.alpha = 0.25;
  const auto sampler = prepare_sampler(spec);
  REQUIRE(sampler.graph.order() == 7);

  const Flower f = flower_graph(2);
  Rng rng(71);
  for (int i = 0; i < 2000; ++i) {
    const auto s = sampler.draw(rng);
    for (const auto& petal : f.petals) {
      const double sum = s.latents.x[f.center] + s.latents.x[petal[0]] +
                         s.latents.x[petal[1]] + s.latents.x[petal[2]];
      REQUIRE(mod1_error(sum, 0.25) < 1e-12);
    }
  }
}

TEST_CASE("flower three-vertex marginals are uniform on one petal") {
  SamplerSpec spec;
  spec.kind = SamplerKind::flower;
  spec.flower_petals = 1;
  spec.alpha = 0.0;
  const auto sampler = prepare_sampler(spec);
  // Vertices 0 = center, 1,2,3 = petal path; any 3 of the 4 latents are
  // i.i.d. uniform, so every 3-subset ordering is uniform.
  const auto freq = pattern_frequencies(sampler, {1, 2, 3}, 150000, 73);
  for (double f : freq) REQUIRE(f == Catch::Approx(1.0 / 6).margin(0.012));
}

TEST_CASE("flower five-tuple events follow the conditioned formula") {
  // On two petals, pick the free attach vertex of petal 2 as the extra
  // variable and petal 1 plus the center as the conditioned four.
  SamplerSpec spec;
  spec.kind = SamplerKind::flower;
  spec.flower_petals = 2;
  spec.alpha = 0.0;
  const auto sampler = prepare_sampler(spec);
  const Flower f = flower_graph(2);
  const std::vector<int> chain = {f.center, f.petals[0][0], f.petals[0][1],
                                  f.petals[0][2]};
  const int extra = f.petals[1][0];

  Rng rng(79);
  const std::uint64_t n = 500000;
  std::vector<std::uint64_t> hits(5, 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto s = sampler.draw(rng);
    bool sorted = true;
    for (int t = 0; t + 1 < 4; ++t)
      if (s.ordering.rank[chain[t]] > s.ordering.rank[chain[t + 1]]) sorted = false;
    if (!sorted) continue;
    for (int k = 1; k <= 4; ++k)
      if (s.ordering.rank[extra] < s.ordering.rank[chain[k - 1]]) ++hits[k];
  }
  for (int k = 1; k <= 4; ++k) {
    const double expect = addx_probability(4, k, 0.0, 1);
    const double se = std::sqrt(expect * (1 - expect) / double(n));
    REQUIRE(std::fabs(double(hits[k]) / n - expect) < 5.0 * se);
  }
}

TEST_CASE("samplers are deterministic given spec and seed") {
  const Graph g = cycle_graph(5);
  for (SamplerKind kind : {SamplerKind::uniform, SamplerKind::block,
                           SamplerKind::spectral, SamplerKind::mod1_edge}) {
    if (kind == SamplerKind::block) continue;  // C5 has no block structure
    SamplerSpec spec;
    spec.kind = kind;
    spec.alpha = 0.0;
    const auto s1 = prepare_sampler(spec, &g);
    const auto s2 = prepare_sampler(spec, &g);
    Rng r1(123), r2(123);
    for (int i = 0; i < 200; ++i) {
      const auto a = s1.draw(r1);
      const auto b = s2.draw(r2);
      REQUIRE(a.ordering.rank == b.ordering.rank);
      REQUIRE(a.latents.x == b.latents.x);
    }
  }
}
