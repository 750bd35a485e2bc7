#include "rsham/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rsham/error.hpp"
#include "rsham/random.hpp"

namespace rsham {

Digraph gen_extremal(std::size_t k) {
  if (k == 0) throw InvalidInput("gen_extremal needs k >= 1");
  const std::size_t x_size = 2 * k - 1;
  const std::size_t n = 3 * k;
  Digraph d(n);
  for (Vertex x = 0; x < x_size; ++x) {
    for (Vertex y = 0; y < n; ++y) {
      if (y == x) continue;
      d.add_arc(x, y);
      if (y >= x_size) d.add_arc(y, x);
    }
  }
  return d;
}

std::size_t required_semi_degree(std::size_t n, double delta_frac) {
  return static_cast<std::size_t>(std::ceil(delta_frac * static_cast<double>(n) - 1e-9));
}

double random_semidegree_density(std::size_t n, double delta_frac) {
  const double sd = std::sqrt(delta_frac * (1.0 - delta_frac) / static_cast<double>(n));
  const double margin = std::min(3.0 * sd, (1.0 - delta_frac) / 2.0);
  return std::min(1.0, delta_frac + margin);
}

Digraph gen_random_semidegree(std::size_t n, double delta_frac, std::uint64_t seed) {
  if (n < 3) throw InvalidInput("gen_random_semidegree needs n >= 3");
  if (!(delta_frac > 0.0) || delta_frac > 1.0)
    throw InvalidInput("delta_frac must lie in (0, 1]");
  // A fraction of exactly 1 asks for the densest possible digraph.
  if (delta_frac == 1.0) return complete_digraph(n);
  const std::size_t need = required_semi_degree(n, delta_frac);
  if (need > n - 1)
    throw Infeasible("semi-degree " + std::to_string(need) + " exceeds n - 1 = " +
                     std::to_string(n - 1));

  Rng rng(seed);
  const double p = random_semidegree_density(n, delta_frac);
  Digraph d(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v && rng.bernoulli(p)) d.add_arc(u, v);

  // Repair: adding arcs only raises degrees, so one pass per side suffices.
  for (Vertex v = 0; v < n; ++v) {
    while (d.out_degree(v) < need) {
      VertexSet cand = d.all_vertices() - d.out(v);
      cand.erase(v);
      d.add_arc(v, cand.nth(static_cast<std::size_t>(rng.below(cand.size()))));
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    while (d.in_degree(v) < need) {
      VertexSet cand = d.all_vertices() - d.in(v);
      cand.erase(v);
      d.add_arc(cand.nth(static_cast<std::size_t>(rng.below(cand.size()))), v);
    }
  }
  return d;
}

Digraph gen_random_density(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  Digraph d(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v && rng.bernoulli(p)) d.add_arc(u, v);
  return d;
}

}  // namespace rsham
