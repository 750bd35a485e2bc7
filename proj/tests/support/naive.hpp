#pragma once

// Definition-level reference checks built on a plain set of arc pairs.
// They share no code with the library so they can act as test oracles.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "rsham/digraph.hpp"

namespace naive {

using Arc = std::pair<unsigned, unsigned>;
using ArcSet = std::set<Arc>;

inline ArcSet arcs_of(const rsham::Digraph& d) {
  ArcSet s;
  for (unsigned u = 0; u < d.order(); ++u)
    for (unsigned v = 0; v < d.order(); ++v)
      if (u != v && d.has_arc(u, v)) s.insert({u, v});
  return s;
}

inline bool has(const ArcSet& a, unsigned u, unsigned v) { return a.count({u, v}) > 0; }

inline bool rs_path(const ArcSet& a, const std::vector<unsigned>& s) {
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (!has(a, s[i], s[i + 1])) return false;
  for (std::size_t i = 0; i + 2 < s.size(); ++i)
    if (!has(a, s[i + 2], s[i])) return false;
  return true;
}

inline bool rs_cycle(const ArcSet& a, const std::vector<unsigned>& s) {
  const std::size_t k = s.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (!has(a, s[i], s[(i + 1) % k])) return false;
    if (!has(a, s[(i + 2) % k], s[i])) return false;
  }
  return true;
}

// The ten arcs of an absorber abcd of v, listed explicitly.
inline bool absorber(const ArcSet& a, unsigned x1, unsigned x2, unsigned x3, unsigned x4,
                     unsigned v) {
  const Arc need[] = {{x1, x2}, {x2, x3}, {x3, x4}, {x3, x1}, {x4, x2},
                      {x2, v},  {v, x3},  {v, x1},  {x3, x2}, {x4, v}};
  for (const auto& e : need)
    if (!a.count(e)) return false;
  return true;
}

// Counts by enumerating every 4-permutation of the other vertices.
inline std::uint64_t count_absorbers(const ArcSet& a, unsigned n, unsigned v) {
  std::vector<unsigned> others;
  for (unsigned x = 0; x < n; ++x)
    if (x != v) others.push_back(x);
  std::uint64_t count = 0;
  const std::size_t m = others.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) {
          if (i == j || i == k || i == l || j == k || j == l || k == l) continue;
          count += absorber(a, others[i], others[j], others[k], others[l], v);
        }
  return count;
}

inline std::size_t min_semi_degree(const ArcSet& a, unsigned n) {
  std::vector<std::size_t> out(n, 0), in(n, 0);
  for (auto [u, v] : a) {
    ++out[u];
    ++in[v];
  }
  std::size_t best = n;
  for (unsigned v = 0; v < n; ++v) best = std::min({best, out[v], in[v]});
  return best;
}

// Does any ordering with vertex 0 first form a reverse-square cycle?
inline bool has_rs_hamiltonian_cycle(const ArcSet& a, unsigned n) {
  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  do {
    if (rs_cycle(a, perm)) return true;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return false;
}

inline bool directed_triangle(const ArcSet& a, unsigned x, unsigned y, unsigned z) {
  return has(a, x, y) && has(a, y, z) && has(a, z, x);
}

}  // namespace naive
