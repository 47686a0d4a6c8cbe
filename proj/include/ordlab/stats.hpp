#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ordlab/graph.hpp"
#include "ordlab/graph_algo.hpp"
#include "ordlab/ordering.hpp"
#include "ordlab/rng.hpp"
#include "ordlab/samplers.hpp"

namespace ordlab {

// ---------------------------------------------------------------------------
// p-value primitives.

inline double regularized_gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::domain_error("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) {
    // Series for P(a,x); Q = 1 - P.
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 1000; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    const double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    return std::clamp(1.0 - p, 0.0, 1.0);
  }
  // Lentz continued fraction for Q.
  double b = x + 1.0 - a;
  double c = 1e300;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -double(i) * (double(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::clamp(h * std::exp(-x + a * std::log(x) - std::lgamma(a)), 0.0, 1.0);
}

inline double chi_square_p_value(double statistic, int dof) {
  if (dof <= 0) return 1.0;
  return regularized_gamma_q(dof / 2.0, statistic / 2.0);
}

inline double ks_statistic_uniform(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("ks: empty sample");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    d = std::max(d, (i + 1) / n - xs[i]);
    d = std::max(d, xs[i] - i / n);
  }
  return d;
}

// Kolmogorov distribution, evaluated by the theta-function form for small
// lambda (where the alternating series fails to converge) and by the
// alternating tail otherwise.
inline double kolmogorov_cdf(double lambda) {
  if (lambda < 1e-8) return 0.0;
  if (lambda < 1.18) {
    const double t = std::exp(-M_PI * M_PI / (8.0 * lambda * lambda));
    return std::sqrt(2.0 * M_PI) / lambda *
           (t + std::pow(t, 9.0) + std::pow(t, 25.0) + std::pow(t, 49.0));
  }
  double tail = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = 2.0 * std::exp(-2.0 * j * j * lambda * lambda);
    tail += (j % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return 1.0 - std::clamp(tail, 0.0, 1.0);
}

// Asymptotic KS tail with the Stephens small-sample correction.
inline double ks_p_value(double d, std::size_t n) {
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
  return std::clamp(1.0 - kolmogorov_cdf(lambda), 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Test reports.

struct TestReport {
  std::string name;
  std::string method;  // "chi-square", "exact-multinomial", "multinomial-mc", "ks"
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  double significance = 0.0;  // per-test threshold actually applied
  bool reject = false;
  std::uint64_t sample_size_a = 0;
  std::uint64_t sample_size_b = 0;
  std::uint64_t seed = 0;
};

struct FamilyReport {
  std::vector<TestReport> tests;
  double family_significance = 0.0;  // before the Bonferroni division
  bool family_reject = false;
  double min_p = 1.0;
  std::uint64_t tie_events = 0;  // latent collisions seen while sampling
};

inline void apply_bonferroni(FamilyReport& family, double significance) {
  family.family_significance = significance;
  const double per_test =
      family.tests.empty() ? significance
                           : significance / static_cast<double>(family.tests.size());
  family.family_reject = false;
  family.min_p = 1.0;
  for (auto& t : family.tests) {
    t.significance = per_test;
    t.reject = t.p_value < per_test;
    family.family_reject |= t.reject;
    family.min_p = std::min(family.min_p, t.p_value);
  }
}

// ---------------------------------------------------------------------------
// Exact multinomial goodness of fit (probability ordering). Only viable for
// tiny samples; the chi-square floor keeps it out of the default paths.

namespace detail {

inline double log_multinomial_prob(const std::vector<std::int64_t>& counts,
                                   std::int64_t n, int cells) {
  double lp = std::lgamma(double(n) + 1.0) - double(n) * std::log(double(cells));
  for (auto c : counts) lp -= std::lgamma(double(c) + 1.0);
  return lp;
}

inline std::uint64_t composition_count(std::int64_t n, int cells) {
  // C(n + cells - 1, cells - 1), saturating.
  long double acc = 1.0L;
  for (int i = 1; i < cells; ++i) {
    acc *= static_cast<long double>(n + i) / i;
    if (acc > 1e18L) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace detail

inline double exact_multinomial_p(const std::vector<std::int64_t>& observed,
                                  std::uint64_t max_enumeration = 2000000,
                                  std::uint64_t mc_fallback_seed = 1,
                                  std::string* method = nullptr) {
  const int cells = static_cast<int>(observed.size());
  const std::int64_t n = std::accumulate(observed.begin(), observed.end(),
                                         std::int64_t{0});
  const double lp_obs = detail::log_multinomial_prob(observed, n, cells);
  if (detail::composition_count(n, cells) <= max_enumeration) {
    if (method) *method = "exact-multinomial";
    double p = 0.0;
    std::vector<std::int64_t> work(cells, 0);
    std::function<void(int, std::int64_t)> rec = [&](int cell, std::int64_t left) {
      if (cell == cells - 1) {
        work[cell] = left;
        const double lp = detail::log_multinomial_prob(work, n, cells);
        if (lp <= lp_obs + 1e-9) p += std::exp(lp);
        return;
      }
      for (std::int64_t c = 0; c <= left; ++c) {
        work[cell] = c;
        rec(cell + 1, left - c);
      }
    };
    rec(0, n);
    return std::min(p, 1.0);
  }
  // Monte Carlo version of the same probability-ordering test.
  if (method) *method = "multinomial-mc";
  Rng rng(mc_fallback_seed);
  const int reps = 20000;
  int hits = 0;
  std::vector<std::int64_t> sim(cells);
  for (int r = 0; r < reps; ++r) {
    std::fill(sim.begin(), sim.end(), 0);
    for (std::int64_t i = 0; i < n; ++i) sim[rng.next_below(cells)]++;
    if (detail::log_multinomial_prob(sim, n, cells) <= lp_obs + 1e-9) ++hits;
  }
  return (hits + 1.0) / (reps + 1.0);
}

// ---------------------------------------------------------------------------
// Chi-square tests with the expected-count floor.

inline TestReport gof_against_flat(const std::vector<std::int64_t>& counts,
                                   std::uint64_t seed = 0) {
  TestReport r;
  r.seed = seed;
  const int cells = static_cast<int>(counts.size());
  const std::int64_t n = std::accumulate(counts.begin(), counts.end(),
                                         std::int64_t{0});
  r.sample_size_a = static_cast<std::uint64_t>(n);
  const double expected = double(n) / cells;
  if (expected >= 5.0) {
    r.method = "chi-square";
    double stat = 0.0;
    for (auto c : counts) {
      const double diff = double(c) - expected;
      stat += diff * diff / expected;
    }
    r.statistic = stat;
    r.dof = cells - 1;
    r.p_value = chi_square_p_value(stat, r.dof);
  } else {
    r.p_value = exact_multinomial_p(counts, 2000000,
                                    derive_seed(seed, "multinomial-mc"),
                                    &r.method);
    r.dof = cells - 1;
  }
  return r;
}

inline TestReport chi_square_two_sample(const std::vector<std::int64_t>& a,
                                        const std::vector<std::int64_t>& b,
                                        std::uint64_t seed = 0) {
  if (a.size() != b.size())
    throw std::invalid_argument("two-sample chi-square: cell count mismatch");
  TestReport r;
  r.seed = seed;
  r.method = "chi-square";
  const double na = double(std::accumulate(a.begin(), a.end(), std::int64_t{0}));
  const double nb = double(std::accumulate(b.begin(), b.end(), std::int64_t{0}));
  r.sample_size_a = static_cast<std::uint64_t>(na);
  r.sample_size_b = static_cast<std::uint64_t>(nb);

  // Cells whose pooled expectation is below the floor get merged into one
  // bucket; empty pooled cells carry no information and are dropped.
  double stat = 0.0;
  int used_cells = 0;
  double rare_a = 0.0, rare_b = 0.0;
  bool has_rare = false;
  auto add_cell = [&](double ca, double cb) {
    const double pooled = ca + cb;
    const double ea = pooled * na / (na + nb);
    const double eb = pooled * nb / (na + nb);
    stat += (ca - ea) * (ca - ea) / ea + (cb - eb) * (cb - eb) / eb;
    ++used_cells;
  };
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double pooled = double(a[i] + b[i]);
    if (pooled == 0.0) continue;
    const double min_expected = pooled * std::min(na, nb) / (na + nb);
    if (min_expected < 5.0) {
      rare_a += double(a[i]);
      rare_b += double(b[i]);
      has_rare = true;
    } else {
      add_cell(double(a[i]), double(b[i]));
    }
  }
  if (has_rare && rare_a + rare_b > 0.0) add_cell(rare_a, rare_b);
  r.statistic = stat;
  r.dof = std::max(0, used_cells - 1);
  r.p_value = chi_square_p_value(r.statistic, r.dof);
  return r;
}

// ---------------------------------------------------------------------------
// Pattern counting over sampler draws: one shared pass for many tuples,
// chunked so that results are identical for any thread count.

inline std::vector<std::vector<std::int64_t>> count_patterns(
    const PreparedSampler& sampler, const std::vector<std::vector<int>>& tuples,
    std::uint64_t n_draws, std::uint64_t seed, int threads,
    std::string_view stream_label = "draws",
    std::uint64_t* tie_events = nullptr) {
  for (const auto& t : tuples)
    if (t.size() > 8)
      throw std::invalid_argument("count_patterns: tuple size > 8");
  constexpr std::uint64_t kChunk = 1 << 14;
  const std::size_t n_chunks =
      static_cast<std::size_t>((n_draws + kChunk - 1) / kChunk);
  std::vector<std::vector<std::vector<std::int64_t>>> partial(n_chunks);
  std::vector<std::uint64_t> ties(n_chunks, 0);
  run_jobs(n_chunks, threads, [&](std::size_t chunk) {
    Rng rng(derive_seed(seed, stream_label, chunk));
    auto& local = partial[chunk];
    local.resize(tuples.size());
    for (std::size_t t = 0; t < tuples.size(); ++t)
      local[t].assign(factorial(static_cast<int>(tuples[t].size())), 0);
    const std::uint64_t begin = chunk * kChunk;
    const std::uint64_t end = std::min(n_draws, begin + kChunk);
    for (std::uint64_t i = begin; i < end; ++i) {
      const SampleResult s = sampler.draw(rng);
      ties[chunk] += static_cast<std::uint64_t>(s.latent_ties);
      for (std::size_t t = 0; t < tuples.size(); ++t)
        local[t][pattern_index(s.ordering, tuples[t])]++;
    }
  });
  std::vector<std::vector<std::int64_t>> total(tuples.size());
  for (std::size_t t = 0; t < tuples.size(); ++t)
    total[t].assign(factorial(static_cast<int>(tuples[t].size())), 0);
  for (const auto& local : partial)
    for (std::size_t t = 0; t < tuples.size(); ++t)
      for (std::size_t p = 0; p < local[t].size(); ++p)
        total[t][p] += local[t][p];
  if (tie_events) {
    *tie_events = 0;
    for (auto t : ties) *tie_events += t;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Ordering distributions.

struct OrderingDistribution {
  std::vector<int> tuple;
  std::vector<double> probabilities;  // indexed by lexicographic pattern
  std::uint64_t sample_count = 0;
  std::uint64_t tie_events = 0;
};

inline OrderingDistribution estimate_distribution(const PreparedSampler& sampler,
                                                  const std::vector<int>& tuple,
                                                  std::uint64_t n_draws,
                                                  std::uint64_t seed,
                                                  int threads = 1) {
  OrderingDistribution dist;
  dist.tuple = tuple;
  dist.sample_count = n_draws;
  const auto counts = count_patterns(sampler, {tuple}, n_draws, seed, threads,
                                     "draws", &dist.tie_events);
  dist.probabilities.reserve(counts[0].size());
  for (auto c : counts[0])
    dist.probabilities.push_back(double(c) / double(n_draws));
  return dist;
}

// ---------------------------------------------------------------------------
// Consistency battery: for every pair of same-size vertex subsets whose
// induced subgraphs are isomorphic, and every isomorphism phi between them,
// compare the tuple distribution with its phi-pushforward on two independent
// batches of draws. Family verdict is Bonferroni-corrected.

namespace detail {

inline void all_subsets(int n, int k, std::vector<std::vector<int>>& out) {
  std::vector<int> pick(k);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      out.push_back(pick);
      return;
    }
    for (int v = start; v <= n - (k - depth); ++v) {
      pick[depth] = v;
      rec(v + 1, depth + 1);
    }
  };
  if (k >= 0 && k <= n) rec(0, 0);
}

inline double binomial_double(int n, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b *= double(n - i) / double(i + 1);
  return b;
}

inline std::string tuple_name(const std::vector<int>& t) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << "}";
  return os.str();
}

}  // namespace detail

// Tuples the batteries test: exhaustive while the subset counts stay small,
// seeded random k-subsets on larger graphs.
inline std::vector<std::vector<int>> battery_subsets(int n, int k_max,
                                                     std::uint64_t seed,
                                                     std::size_t cap = 512) {
  std::vector<std::vector<int>> subsets;
  for (int k = 2; k <= std::min(k_max, n); ++k) {
    if (detail::binomial_double(n, k) <= double(cap)) {
      detail::all_subsets(n, k, subsets);
      continue;
    }
    Rng rng(derive_seed(seed, "battery-subsets", k));
    std::vector<std::vector<int>> sampled;
    while (sampled.size() < cap) {
      std::vector<int> pick;
      while (static_cast<int>(pick.size()) < k) {
        const int v = static_cast<int>(rng.next_below(n));
        if (std::find(pick.begin(), pick.end(), v) == pick.end())
          pick.push_back(v);
      }
      std::sort(pick.begin(), pick.end());
      if (std::find(sampled.begin(), sampled.end(), pick) == sampled.end())
        sampled.push_back(std::move(pick));
    }
    subsets.insert(subsets.end(), sampled.begin(), sampled.end());
  }
  return subsets;
}

inline FamilyReport check_consistency(const PreparedSampler& sampler, int k_max,
                                      std::uint64_t n_draws, double significance,
                                      std::uint64_t seed, int threads = 1) {
  const Graph& g = sampler.graph;
  const auto subsets = battery_subsets(g.order(), k_max, seed);

  FamilyReport family;
  std::uint64_t ties_a = 0, ties_b = 0;
  const auto counts_a = count_patterns(sampler, subsets, n_draws,
                                       derive_seed(seed, "consistency-a"),
                                       threads, "consistency-a", &ties_a);
  const auto counts_b = count_patterns(sampler, subsets, n_draws,
                                       derive_seed(seed, "consistency-b"),
                                       threads, "consistency-b", &ties_b);
  family.tie_events = ties_a + ties_b;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (std::size_t j = i; j < subsets.size(); ++j) {
      if (subsets[i].size() != subsets[j].size()) continue;
      const int k = static_cast<int>(subsets[i].size());
      const Graph hi = induced_subgraph(g, subsets[i]).graph;
      const Graph hj = induced_subgraph(g, subsets[j]).graph;
      if (hi.edge_count() != hj.edge_count()) continue;
      for (const auto& iso : enumerate_embeddings(hi, hj, hj.order())) {
        bool identity = (i == j);
        for (int t = 0; t < k && identity; ++t)
          if (iso.map[t] != t) identity = false;
        if (identity) continue;
        // Push the batch-B counts through the position permutation.
        std::vector<std::int64_t> pushed(counts_b[j].size());
        for (std::size_t p = 0; p < pushed.size(); ++p) {
          const auto sigma = permutation_from_lex_index(k, static_cast<int>(p));
          std::vector<int> composed(k);
          for (int t = 0; t < k; ++t) composed[t] = iso.map[sigma[t]];
          pushed[p] = counts_b[j][permutation_lex_index(composed)];
        }
        TestReport r = chi_square_two_sample(counts_a[i], pushed, seed);
        r.name = "consistency " + detail::tuple_name(subsets[i]) + " vs " +
                 detail::tuple_name(subsets[j]) + " phi=" +
                 detail::tuple_name(iso.map);
        family.tests.push_back(std::move(r));
      }
    }
  }
  apply_bonferroni(family, significance);
  return family;
}

// Uniformity battery: goodness of fit of every k-tuple distribution against
// the flat 1/k! vector, k = 2..k_max, Bonferroni-corrected.
inline FamilyReport check_uniformity(const PreparedSampler& sampler, int k_max,
                                     std::uint64_t n_draws, double significance,
                                     std::uint64_t seed, int threads = 1) {
  const Graph& g = sampler.graph;
  const auto subsets = battery_subsets(g.order(), k_max, seed);
  FamilyReport family;
  const auto counts = count_patterns(sampler, subsets, n_draws,
                                     derive_seed(seed, "uniformity"), threads,
                                     "uniformity", &family.tie_events);
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    TestReport r = gof_against_flat(counts[i], seed);
    r.name = "uniformity " + detail::tuple_name(subsets[i]);
    family.tests.push_back(std::move(r));
  }
  apply_bonferroni(family, significance);
  return family;
}

// ---------------------------------------------------------------------------
// Exchangeable-limit statistics on truncated blow-ups.

struct EmpiricalF {
  std::vector<double> sorted_samples;

  double cdf(double x) const {
    if (sorted_samples.empty()) throw std::logic_error("EmpiricalF: empty");
    const auto it = std::upper_bound(sorted_samples.begin(),
                                     sorted_samples.end(), x);
    return double(it - sorted_samples.begin()) / double(sorted_samples.size());
  }

  // Right-continuous inverse: sup{ s : F(s) <= y }. The count of samples <= s
  // stays at or below floor(y*n) until the (floor(y*n)+1)-th order statistic.
  double right_inverse(double y) const {
    if (sorted_samples.empty()) throw std::logic_error("EmpiricalF: empty");
    const std::size_t n = sorted_samples.size();
    const auto k = static_cast<std::size_t>(std::floor(y * double(n)));
    if (k >= n) return 1.0;
    return sorted_samples[k];
  }

  double mean_square() const {
    double acc = 0.0;
    for (double v : sorted_samples) acc += v * v;
    return sorted_samples.empty() ? 0.0 : acc / double(sorted_samples.size());
  }
};

struct BlowupStats {
  int template_u = 0;
  int template_v = 0;
  int draws = 0;
  int multiplicity_u = 0;
  int multiplicity_v = 0;
  std::vector<double> u_samples;  // within-block rank fractions for block v
  std::vector<double> v_uv;       // V_{u, v_i} pooled across draws
  std::vector<double> v_vu;       // V_{v, u_j} pooled across draws
  EmpiricalF f_uv;
  EmpiricalF f_vu;
};

inline BlowupStats estimate_blowup_statistics(
    const PreparedSampler& sampler, const std::vector<std::vector<int>>& blocks,
    int u, int v, int draws, std::uint64_t seed, int threads = 1) {
  if (u == v) throw std::invalid_argument("blowup stats: need distinct blocks");
  if (u < 0 || v < 0 || u >= int(blocks.size()) || v >= int(blocks.size()))
    throw std::out_of_range("blowup stats: block index out of range");
  const auto& block_u = blocks[u];
  const auto& block_v = blocks[v];
  if (block_u.size() < 20 || block_v.size() < 20)
    throw std::invalid_argument("blowup stats: multiplicity below 20");

  constexpr int kChunk = 64;
  const std::size_t n_chunks = (draws + kChunk - 1) / kChunk;
  struct ChunkOut {
    std::vector<double> u_samples, v_uv, v_vu;
  };
  std::vector<ChunkOut> partial(n_chunks);
  run_jobs(n_chunks, threads, [&](std::size_t chunk) {
    Rng rng(derive_seed(seed, "blowup", chunk));
    auto& out = partial[chunk];
    const int begin = static_cast<int>(chunk) * kChunk;
    const int end = std::min(draws, begin + kChunk);
    std::vector<int> ranks_u, ranks_v;
    for (int d = begin; d < end; ++d) {
      const SampleResult s = sampler.draw(rng);
      ranks_u.clear();
      ranks_v.clear();
      for (int w : block_u) ranks_u.push_back(s.ordering.rank[w]);
      for (int w : block_v) ranks_v.push_back(s.ordering.rank[w]);
      std::sort(ranks_u.begin(), ranks_u.end());
      std::sort(ranks_v.begin(), ranks_v.end());
      for (int w : block_v) {
        const int r = s.ordering.rank[w];
        const auto below_u = std::lower_bound(ranks_u.begin(), ranks_u.end(), r) -
                             ranks_u.begin();
        out.v_uv.push_back(double(below_u) / double(ranks_u.size()));
        // Mid-rank convention for the within-block fraction; plain r/(m-1)
        // puts lattice mass on both endpoints and biases the KS statistic.
        const auto within = std::lower_bound(ranks_v.begin(), ranks_v.end(), r) -
                            ranks_v.begin();
        out.u_samples.push_back((double(within) + 0.5) / double(ranks_v.size()));
      }
      for (int w : block_u) {
        const int r = s.ordering.rank[w];
        const auto below_v = std::lower_bound(ranks_v.begin(), ranks_v.end(), r) -
                             ranks_v.begin();
        out.v_vu.push_back(double(below_v) / double(ranks_v.size()));
      }
    }
  });

  BlowupStats stats;
  stats.template_u = u;
  stats.template_v = v;
  stats.draws = draws;
  stats.multiplicity_u = static_cast<int>(block_u.size());
  stats.multiplicity_v = static_cast<int>(block_v.size());
  for (const auto& c : partial) {
    stats.u_samples.insert(stats.u_samples.end(), c.u_samples.begin(), c.u_samples.end());
    stats.v_uv.insert(stats.v_uv.end(), c.v_uv.begin(), c.v_uv.end());
    stats.v_vu.insert(stats.v_vu.end(), c.v_vu.begin(), c.v_vu.end());
  }
  stats.f_uv.sorted_samples = stats.v_uv;
  std::sort(stats.f_uv.sorted_samples.begin(), stats.f_uv.sorted_samples.end());
  stats.f_vu.sorted_samples = stats.v_vu;
  std::sort(stats.f_vu.sorted_samples.begin(), stats.f_vu.sorted_samples.end());
  return stats;
}

// Deterministically thinned KS test; within-draw values are exchangeable but
// not independent, so the test size is capped.
inline TestReport ks_report(const std::vector<double>& samples,
                            std::size_t max_samples = 20000,
                            std::uint64_t seed = 0) {
  TestReport r;
  r.method = "ks";
  r.seed = seed;
  std::vector<double> thinned;
  const std::size_t stride = std::max<std::size_t>(1, samples.size() / max_samples);
  for (std::size_t i = 0; i < samples.size(); i += stride)
    thinned.push_back(samples[i]);
  r.sample_size_a = thinned.size();
  const double d = ks_statistic_uniform(thinned);
  r.statistic = d;
  r.p_value = ks_p_value(d, thinned.size());
  return r;
}

struct InverseFfiReport {
  double sup_distance = 0.0;       // || F_rev - F^{-1} ||_inf on a grid
  double moment_functional = 0.0;  // E X^2 + E Y^2
  bool inequality_ok = false;      // >= 2/3 - tolerance
  bool uniform_consistent = false; // within tolerance of 2/3 itself
};

inline InverseFfiReport check_inverse_and_ffi(const EmpiricalF& f,
                                              const EmpiricalF& f_rev,
                                              double tolerance,
                                              int grid = 512) {
  InverseFfiReport rep;
  for (int i = 0; i <= grid; ++i) {
    const double x = double(i) / grid;
    rep.sup_distance =
        std::max(rep.sup_distance, std::fabs(f_rev.cdf(x) - f.right_inverse(x)));
  }
  rep.moment_functional = f.mean_square() + f_rev.mean_square();
  rep.inequality_ok = rep.moment_functional >= 2.0 / 3.0 - tolerance;
  rep.uniform_consistent = std::fabs(rep.moment_functional - 2.0 / 3.0) <= tolerance;
  return rep;
}

}  // namespace ordlab
