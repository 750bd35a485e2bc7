#include "rsham/digraph.hpp"

#include <algorithm>
#include <string>

#include "rsham/error.hpp"

namespace rsham {

Digraph::Digraph(std::size_t n) : out_(n, VertexSet(n)), in_(n, VertexSet(n)) {}

Digraph Digraph::from_arcs(std::size_t n, std::span<const ArcPair> arcs) {
  Digraph d(n);
  for (const auto& a : arcs) {
    if (!d.add_arc(a.tail, a.head))
      throw InvalidInput("duplicate arc " + std::to_string(a.tail) + "->" +
                         std::to_string(a.head));
  }
  return d;
}

bool Digraph::add_arc(Vertex u, Vertex v) {
  if (u >= order() || v >= order())
    throw InvalidInput("arc endpoint out of range: " + std::to_string(u) + "->" +
                       std::to_string(v) + " with n = " + std::to_string(order()));
  if (u == v) throw InvalidInput("self-loop at vertex " + std::to_string(u));
  if (out_[u].contains(v)) return false;
  out_[u].insert(v);
  in_[v].insert(u);
  ++arcs_;
  return true;
}

bool Digraph::remove_arc(Vertex u, Vertex v) {
  if (!has_arc(u, v)) return false;
  out_[u].erase(v);
  in_[v].erase(u);
  --arcs_;
  return true;
}

Digraph Digraph::reversed() const {
  Digraph r(order());
  r.out_ = in_;
  r.in_ = out_;
  r.arcs_ = arcs_;
  return r;
}

Digraph Digraph::relabeled(std::span<const Vertex> perm) const {
  if (perm.size() != order()) throw InvalidInput("permutation size mismatch");
  VertexSet seen(order());
  for (Vertex p : perm) {
    if (p >= order() || seen.contains(p)) throw InvalidInput("not a permutation");
    seen.insert(p);
  }
  Digraph r(order());
  for (Vertex u = 0; u < order(); ++u)
    out_[u].for_each([&](Vertex v) { r.add_arc(perm[u], perm[v]); });
  return r;
}

std::vector<ArcPair> Digraph::arcs() const {
  std::vector<ArcPair> out;
  out.reserve(arcs_);
  for (Vertex u = 0; u < order(); ++u)
    out_[u].for_each([&](Vertex v) { out.push_back({u, v}); });
  return out;
}

Digraph complete_digraph(std::size_t n) {
  Digraph d(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v) d.add_arc(u, v);
  return d;
}

std::size_t min_semi_degree(const Digraph& d) {
  if (d.order() == 0) throw InvalidInput("minimum semi-degree of the empty digraph");
  std::size_t best = d.order();
  for (Vertex v = 0; v < d.order(); ++v)
    best = std::min({best, d.out_degree(v), d.in_degree(v)});
  return best;
}

}  // namespace rsham
