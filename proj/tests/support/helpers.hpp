#pragma once

#include <initializer_list>
#include <numeric>
#include <vector>

#include "rsham/digraph.hpp"
#include "rsham/random.hpp"

namespace testing_support {

inline rsham::Digraph make(std::size_t n, std::initializer_list<rsham::ArcPair> arcs) {
  std::vector<rsham::ArcPair> v(arcs);
  return rsham::Digraph::from_arcs(n, v);
}

inline std::vector<rsham::Vertex> random_permutation(std::size_t n, rsham::Rng& rng) {
  std::vector<rsham::Vertex> p(n);
  std::iota(p.begin(), p.end(), rsham::Vertex{0});
  rng.shuffle(std::span<rsham::Vertex>(p));
  return p;
}

inline std::vector<rsham::Vertex> apply(const std::vector<rsham::Vertex>& perm,
                                        const std::vector<rsham::Vertex>& seq) {
  std::vector<rsham::Vertex> out;
  for (auto v : seq) out.push_back(perm[v]);
  return out;
}

inline std::vector<unsigned> as_unsigned(const std::vector<rsham::Vertex>& s) {
  return {s.begin(), s.end()};
}

}  // namespace testing_support
