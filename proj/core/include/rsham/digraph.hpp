#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rsham/vertex_set.hpp"

namespace rsham {

/// Ordered pair of distinct vertices; used both for arcs and for path
/// end-arcs.
struct ArcPair {
  Vertex tail = 0;
  Vertex head = 0;
  friend bool operator==(const ArcPair&, const ArcPair&) = default;
  friend auto operator<=>(const ArcPair&, const ArcPair&) = default;
};

/// Vertex sequence of a path or cycle. Paths and cycles are simple, so
/// entries are expected to be distinct; verifiers check this.
using VertexSeq = std::vector<Vertex>;

/// Simple digraph on vertices [0, n): no loops, no parallel arcs.
///
/// Both out- and in-neighbourhoods are kept as bitsets so that membership
/// is O(1) and neighbourhood intersections are word-parallel.
class Digraph {
 public:
  explicit Digraph(std::size_t n = 0);

  static Digraph from_arcs(std::size_t n, std::span<const ArcPair> arcs);

  std::size_t order() const { return out_.size(); }
  std::size_t arc_count() const { return arcs_; }

  bool has_arc(Vertex u, Vertex v) const {
    return u < order() && out_[u].contains(v);
  }
  bool has_arc(ArcPair a) const { return has_arc(a.tail, a.head); }

  /// Adds u -> v; returns false if it was already present.
  /// Throws InvalidInput on loops or out-of-range endpoints.
  bool add_arc(Vertex u, Vertex v);
  bool remove_arc(Vertex u, Vertex v);

  const VertexSet& out(Vertex v) const { return out_[v]; }
  const VertexSet& in(Vertex v) const { return in_[v]; }
  std::size_t out_degree(Vertex v) const { return out_[v].size(); }
  std::size_t in_degree(Vertex v) const { return in_[v].size(); }

  VertexSet all_vertices() const { return VertexSet::full(order()); }

  /// Every arc reversed.
  Digraph reversed() const;

  /// Image under the vertex permutation `perm` (v maps to perm[v]).
  Digraph relabeled(std::span<const Vertex> perm) const;

  /// Arcs in lexicographic (tail, head) order.
  std::vector<ArcPair> arcs() const;

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.out_ == b.out_;
  }

 private:
  std::vector<VertexSet> out_;
  std::vector<VertexSet> in_;
  std::size_t arcs_ = 0;
};

/// Complete digraph on n vertices (all n(n-1) arcs).
Digraph complete_digraph(std::size_t n);

/// min over v of min(d+(v), d-(v)). Throws InvalidInput for n = 0.
std::size_t min_semi_degree(const Digraph& d);

}  // namespace rsham
