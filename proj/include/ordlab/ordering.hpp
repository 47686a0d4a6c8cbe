#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ordlab {

// A total order of a graph's vertices: rank[v] in 0..n-1, rank 0 smallest.
struct VertexOrdering {
  std::vector<int> rank;

  int order() const { return static_cast<int>(rank.size()); }

  // Vertices listed from smallest to largest.
  std::vector<int> sequence() const {
    std::vector<int> seq(rank.size());
    for (std::size_t v = 0; v < rank.size(); ++v) seq[rank[v]] = static_cast<int>(v);
    return seq;
  }
};

// Per-vertex latent values; the ordering is the ascending sort of x with ties
// broken by vertex index. Ties have probability 0 in exact arithmetic.
struct LatentValues {
  std::vector<double> x;
};

struct SampleResult {
  VertexOrdering ordering;
  LatentValues latents;
  // Edges drawn by the mod-1 constructions (one per conditioned copy), kept
  // so the defining congruence can be re-checked on emitted samples.
  std::vector<std::pair<int, int>> conditioning_edges;
  // Exact latent collisions resolved by the index tie-break. They have
  // probability ~ n^2 * 2^-52 per draw and are surfaced in reports.
  int latent_ties = 0;
};

inline VertexOrdering ordering_from_latents(const std::vector<double>& x,
                                            int* ties = nullptr) {
  std::vector<int> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (x[a] != x[b]) return x[a] < x[b];
    return a < b;
  });
  VertexOrdering ord;
  ord.rank.resize(x.size());
  for (std::size_t pos = 0; pos < idx.size(); ++pos) {
    ord.rank[idx[pos]] = static_cast<int>(pos);
    if (ties && pos > 0 && x[idx[pos]] == x[idx[pos - 1]]) ++*ties;
  }
  return ord;
}

inline std::int64_t factorial(int k) {
  std::int64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Lexicographic index of a permutation of 0..k-1 (factorial number system).
inline int permutation_lex_index(const std::vector<int>& perm) {
  const int k = static_cast<int>(perm.size());
  int index = 0;
  for (int i = 0; i < k; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < k; ++j)
      if (perm[j] < perm[i]) ++smaller;
    index = index * (k - i) + smaller;
  }
  return index;
}

inline std::vector<int> permutation_from_lex_index(int k, int index) {
  std::vector<int> pool(k);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> perm;
  std::int64_t f = factorial(k);
  for (int i = 0; i < k; ++i) {
    f /= (k - i);
    const int pick = static_cast<int>(index / f);
    index = static_cast<int>(index % f);
    perm.push_back(pool[pick]);
    pool.erase(pool.begin() + pick);
  }
  return perm;
}

// Relative-order pattern of a tuple under an ordering: the lexicographic index
// of the permutation sigma with rank[tuple[sigma[0]]] < rank[tuple[sigma[1]]]
// < ... Tuples are capped at 8 so patterns fit comfortably in an int.
inline int pattern_index(const VertexOrdering& ord,
                         const std::vector<int>& tuple) {
  const int k = static_cast<int>(tuple.size());
  if (k > 8) throw std::invalid_argument("pattern_index: tuple size > 8");
  std::vector<int> sigma(k);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::sort(sigma.begin(), sigma.end(), [&](int a, int b) {
    return ord.rank[tuple[a]] < ord.rank[tuple[b]];
  });
  return permutation_lex_index(sigma);
}

}  // namespace ordlab
