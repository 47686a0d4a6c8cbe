#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ordlab/stats.hpp"
#include "ordlab/template.hpp"

using namespace ordlab;

namespace {

// Independent oracle: upper chi-square tail by Simpson integration of the
// density, used to validate the incomplete-gamma path.
double chi_square_tail_by_quadrature(double stat, int dof) {
  const double a = dof / 2.0;
  auto density = [&](double x) {
    if (x <= 0.0) return 0.0;
    return std::exp((a - 1.0) * std::log(x) - x / 2.0 - a * std::log(2.0) -
                    std::lgamma(a));
  };
  const double hi = stat + 200.0 + 20.0 * std::sqrt(double(dof));
  const int panels = 200000;
  const double h = (hi - stat) / panels;
  double acc = density(stat) + density(hi);
  for (int i = 1; i < panels; ++i)
    acc += density(stat + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

PreparedSampler make(SamplerKind kind, const Graph& g, double alpha = 0.0) {
  SamplerSpec spec;
  spec.kind = kind;
  spec.alpha = alpha;
  return prepare_sampler(spec, &g);
}

}  // namespace

TEST_CASE("chi-square p-values match quadrature on canned tables") {
  // Table 1: counts {55,45} against flat; statistic 1, dof 1.
  auto r1 = gof_against_flat({55, 45});
  REQUIRE(r1.method == "chi-square");
  REQUIRE(r1.statistic == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(r1.p_value == Catch::Approx(0.31731050786291415).margin(1e-9));
  REQUIRE(r1.p_value ==
          Catch::Approx(chi_square_tail_by_quadrature(1.0, 1)).margin(1e-7));

  // Table 2: counts {30,20,10}; statistic 10, dof 2; tail = exp(-5).
  auto r2 = gof_against_flat({30, 20, 10});
  REQUIRE(r2.statistic == Catch::Approx(10.0).margin(1e-12));
  REQUIRE(r2.p_value == Catch::Approx(std::exp(-5.0)).margin(1e-10));
  REQUIRE(r2.p_value ==
          Catch::Approx(chi_square_tail_by_quadrature(10.0, 2)).margin(1e-7));

  // Table 3: two samples {25,25,50} vs {20,30,50}; dof-2 tail = exp(-x/2).
  auto r3 = chi_square_two_sample({25, 25, 50}, {20, 30, 50});
  const double stat3 = 2.0 * (6.25 / 22.5 + 6.25 / 27.5);
  REQUIRE(r3.statistic == Catch::Approx(stat3).margin(1e-12));
  REQUIRE(r3.dof == 2);
  REQUIRE(r3.p_value == Catch::Approx(std::exp(-stat3 / 2.0)).margin(1e-10));
}

TEST_CASE("exact multinomial for tiny samples") {
  // N=2 over two cells: outcomes (2,0),(1,1),(0,2) with probs 1/4,1/2,1/4.
  std::string method;
  REQUIRE(exact_multinomial_p({2, 0}, 2000000, 1, &method) ==
          Catch::Approx(0.5).margin(1e-12));
  REQUIRE(method == "exact-multinomial");
  REQUIRE(exact_multinomial_p({1, 1}) == Catch::Approx(1.0).margin(1e-12));

  // The GoF entry point switches to the exact test below the count floor.
  auto r = gof_against_flat({2, 0});
  REQUIRE(r.method == "exact-multinomial");
  REQUIRE(r.p_value == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("KS test accepts uniforms and rejects a biased sample") {
  Rng rng(3);
  std::vector<double> unif, biased;
  for (int i = 0; i < 5000; ++i) {
    unif.push_back(rng.next_unit());
    const double u = rng.next_unit();
    biased.push_back(u * u);
  }
  REQUIRE(ks_report(unif).p_value > 0.01);
  REQUIRE(ks_report(biased).p_value < 1e-6);
  REQUIRE(ks_p_value(0.001, 100) > 0.999);
  REQUIRE(ks_p_value(0.9, 100) < 1e-12);
}

TEST_CASE("estimate_distribution reproduces block probabilities") {
  const Graph g = disjoint_union(complete_graph(2), empty_graph(1));
  const auto dist = estimate_distribution(make(SamplerKind::block, g),
                                          {0, 1, 2}, 200000, 5, 2);
  REQUIRE(dist.probabilities.size() == 6);
  double total = 0.0;
  for (double p : dist.probabilities) total += p;
  REQUIRE(total == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(dist.probabilities[0] == Catch::Approx(0.25).margin(0.01));
  REQUIRE(dist.probabilities[1] == 0.0);
  REQUIRE(dist.probabilities[3] == 0.0);
}

TEST_CASE("pattern counts are identical across thread counts") {
  const Graph g = cycle_graph(5);
  const auto s = make(SamplerKind::mod1_edge, g);
  const std::vector<std::vector<int>> tuples = {{0, 1, 2}, {1, 3}, {0, 2, 4}};
  const auto c1 = count_patterns(s, tuples, 100000, 77, 1);
  const auto c2 = count_patterns(s, tuples, 100000, 77, 2);
  const auto c4 = count_patterns(s, tuples, 100000, 77, 4);
  REQUIRE(c1 == c2);
  REQUIRE(c1 == c4);
}

TEST_CASE("uniformity battery passes for the uniform sampler") {
  const Graph g = path_graph(3);
  const auto family = check_uniformity(make(SamplerKind::uniform, g), 3,
                                       100000, 1e-3, 7, 2);
  REQUIRE_FALSE(family.family_reject);
  REQUIRE(family.tests.size() == 4);  // three pairs + one triple
}

TEST_CASE("uniformity battery rejects the spectral sampler on P3") {
  const Graph g = path_graph(3);
  SamplerSpec spec;
  spec.kind = SamplerKind::spectral;
  const auto family =
      check_uniformity(prepare_sampler(spec, &g), 3, 100000, 1e-3, 9, 2);
  REQUIRE(family.family_reject);
}

TEST_CASE("uniformity battery rejects the mod1 sampler on the full P3 tuple") {
  const Graph g = path_graph(3);
  const auto s = make(SamplerKind::mod1_edge, g, 0.0);
  const auto family = check_uniformity(s, 3, 100000, 1e-3, 11, 2);
  REQUIRE(family.family_reject);
  // Pair marginals stay uniform: only the full-tuple test may reject.
  for (const auto& t : family.tests)
    if (t.sample_size_a > 0 && t.name.find(",") != std::string::npos) continue;
  for (std::size_t i = 0; i < 3; ++i)
    REQUIRE_FALSE(family.tests[i].reject);  // the three pair tests
  REQUIRE(family.tests[3].reject);
}

TEST_CASE("mod1 marginals on (n-1)-subsets are uniform") {
  for (const Graph& g : {path_graph(3), path_graph(4), cycle_graph(4)}) {
    const auto s = make(SamplerKind::mod1_edge, g, 0.0);
    std::vector<std::vector<int>> tuples;
    for (int skip = 0; skip < g.order(); ++skip) {
      std::vector<int> t;
      for (int v = 0; v < g.order(); ++v)
        if (v != skip) t.push_back(v);
      tuples.push_back(t);
    }
    const auto counts = count_patterns(s, tuples, 100000, 13, 2);
    for (const auto& c : counts) {
      const auto r = gof_against_flat(c);
      REQUIRE(r.p_value > 1e-4);
    }
  }
}

TEST_CASE("consistency battery passes for consistent samplers") {
  const auto uniform_family = check_consistency(
      make(SamplerKind::uniform, bull_graph()), 3, 30000, 1e-3, 15, 2);
  REQUIRE_FALSE(uniform_family.family_reject);
  REQUIRE(uniform_family.tests.size() > 10);

  SamplerSpec spec;
  spec.kind = SamplerKind::spectral;
  const Graph c5 = cycle_graph(5);
  const auto spectral_family =
      check_consistency(prepare_sampler(spec, &c5), 3, 30000, 1e-3, 17, 2);
  REQUIRE_FALSE(spectral_family.family_reject);
}

TEST_CASE("consistency battery detects a broken sampler") {
  // Deliberately inconsistent: vertex 0 of C4 gets a biased latent, which
  // shows up when comparing isomorphic pairs.
  PreparedSampler biased;
  biased.name = "biased";
  biased.graph = cycle_graph(4);
  biased.draw = [](Rng& rng) {
    SampleResult s;
    s.latents.x.resize(4);
    for (auto& x : s.latents.x) x = rng.next_unit();
    s.latents.x[0] = std::pow(s.latents.x[0], 2.0);
    s.ordering = ordering_from_latents(s.latents.x);
    return s;
  };
  const auto family = check_consistency(biased, 2, 40000, 1e-3, 19, 2);
  REQUIRE(family.family_reject);
}

TEST_CASE("flower per-graph consistency holds at small tuples") {
  SamplerSpec spec;
  spec.kind = SamplerKind::flower;
  spec.flower_petals = 2;
  spec.alpha = 0.0;
  const auto s = prepare_sampler(spec);
  const auto family = check_consistency(s, 3, 30000, 1e-3, 21, 2);
  REQUIRE_FALSE(family.family_reject);
}

TEST_CASE("every sampler passes consistency on small in-domain graphs") {
  // One representative graph with n <= 5 per sampler kind; the flower case
  // is the one-petal C4, where the construction is exchangeable.
  std::vector<PreparedSampler> samplers;
  {
    SamplerSpec spec;
    spec.kind = SamplerKind::block;
    const Graph g = disjoint_union(complete_graph(3), complete_graph(2));
    samplers.push_back(prepare_sampler(spec, &g));
  }
  {
    SamplerSpec spec;
    spec.kind = SamplerKind::mod1_edge;
    spec.alpha = 0.0;
    const Graph g = path_graph(4);
    samplers.push_back(prepare_sampler(spec, &g));
  }
  {
    SamplerSpec spec;
    spec.kind = SamplerKind::disjoint_copies;
    spec.copy_pattern = empty_graph(2);
    spec.alpha = 0.0;
    const Graph g = path_graph(3);
    samplers.push_back(prepare_sampler(spec, &g));
  }
  {
    SamplerSpec spec;
    spec.kind = SamplerKind::double_broom;
    spec.broom_path_len = 3;
    spec.broom_left_leaves = 1;
    spec.broom_right_leaves = 1;
    spec.alpha = 0.5;
    samplers.push_back(prepare_sampler(spec));
  }
  {
    SamplerSpec spec;
    spec.kind = SamplerKind::flower;
    spec.flower_petals = 1;
    spec.alpha = 0.0;
    samplers.push_back(prepare_sampler(spec));
  }
  std::uint64_t seed = 400;
  for (const auto& s : samplers) {
    const auto family =
        check_consistency(s, std::min(5, s.graph.order()), 40000, 1e-3, ++seed, 2);
    INFO(s.name);
    REQUIRE_FALSE(family.family_reject);
  }
}

TEST_CASE("blow-up statistics under the uniform sampler") {
  const Template t = make_template(
      path_graph(3), {Mark::full, Mark::empty, Mark::full});
  const auto blown = blow_up(uniform_blow_up_spec(t, 50));
  const auto s = make(SamplerKind::uniform, blown.graph);
  const auto stats =
      estimate_blowup_statistics(s, blown.blocks, 0, 1, 200, 23, 2);

  REQUIRE(stats.v_uv.size() == 200 * 50);
  REQUIRE(ks_report(stats.u_samples, 2000).p_value > 1e-3);
  REQUIRE(ks_report(stats.v_uv, 2000).p_value > 1e-3);

  const auto ffi = check_inverse_and_ffi(stats.f_uv, stats.f_vu, 0.02);
  REQUIRE(ffi.inequality_ok);
  REQUIRE(ffi.uniform_consistent);
  REQUIRE(ffi.sup_distance < 0.05);
}

TEST_CASE("blow-up statistics under the block sampler on two cliques") {
  // Two full vertices, no edge: the blow-up is a pair of cliques and the
  // cross-block rank is a two-point mass with mean 1/2.
  const Template t =
      make_template(empty_graph(2), {Mark::full, Mark::full});
  const auto blown = blow_up(uniform_blow_up_spec(t, 50));
  const auto s = make(SamplerKind::block, blown.graph);
  const auto stats =
      estimate_blowup_statistics(s, blown.blocks, 0, 1, 2000, 29, 2);

  double mean = 0.0;
  for (double v : stats.v_uv) {
    REQUIRE((v == 0.0 || v == 1.0));
    mean += v;
  }
  mean /= double(stats.v_uv.size());
  REQUIRE(mean == Catch::Approx(0.5).margin(0.05));

  const auto ffi = check_inverse_and_ffi(stats.f_uv, stats.f_vu, 0.02);
  REQUIRE(ffi.moment_functional > 0.9);
  REQUIRE(ffi.inequality_ok);
  REQUIRE_FALSE(ffi.uniform_consistent);
}

TEST_CASE("blow-up statistics reject tiny multiplicities") {
  const Template t = make_template(empty_graph(2), {Mark::full, Mark::full});
  const auto blown = blow_up(uniform_blow_up_spec(t, 10));
  const auto s = make(SamplerKind::uniform, blown.graph);
  REQUIRE_THROWS_AS(estimate_blowup_statistics(s, blown.blocks, 0, 1, 50, 1),
                    std::invalid_argument);
}

TEST_CASE("latent ties are counted and surfaced in reports") {
  PreparedSampler degenerate;
  degenerate.name = "degenerate";
  degenerate.graph = empty_graph(3);
  degenerate.draw = [](Rng&) {
    SampleResult s;
    s.latents.x = {0.5, 0.5, 0.5};
    s.ordering = ordering_from_latents(s.latents.x, &s.latent_ties);
    return s;
  };
  const auto dist = estimate_distribution(degenerate, {0, 1, 2}, 100, 1);
  REQUIRE(dist.tie_events == 200);  // two collisions per draw
  // Index tie-break: the ordering is always 0 < 1 < 2.
  REQUIRE(dist.probabilities[0] == 1.0);

  // Real samplers essentially never tie.
  const auto honest = estimate_distribution(
      make(SamplerKind::uniform, path_graph(3)), {0, 1, 2}, 20000, 2);
  REQUIRE(honest.tie_events == 0);
}

TEST_CASE("empirical inverse of the inverse returns the CDF") {
  Rng rng(31);
  EmpiricalF f;
  for (int i = 0; i < 4000; ++i) {
    const double u = rng.next_unit();
    f.sorted_samples.push_back(u * u);  // CDF(x) = sqrt(x)
  }
  std::sort(f.sorted_samples.begin(), f.sorted_samples.end());
  const int grid = 256;
  for (int i = 0; i <= grid; ++i) {
    const double x = double(i) / grid;
    // right_inverse(cdf-like probe): composing the two maps returns x.
    const double y = f.cdf(x);
    REQUIRE(std::fabs(f.cdf(f.right_inverse(y)) - y) <= 2.0 / grid + 1e-9);
  }
  // And the analytic inverse: (sqrt)^-1(y) = y^2.
  for (int i = 0; i <= grid; ++i) {
    const double y = double(i) / grid;
    REQUIRE(f.right_inverse(y) == Catch::Approx(y * y).margin(0.05));
  }
}
