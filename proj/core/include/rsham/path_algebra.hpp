#pragma once

#include <array>
#include <span>
#include <vector>

#include "rsham/digraph.hpp"

namespace rsham {

using Triple = std::array<Vertex, 3>;

// End-arcs of paths with 2 or 3 vertices overlap; callers that stitch paths
// must check disjointness themselves.
ArcPair first_end_arc(std::span<const Vertex> path);
ArcPair last_end_arc(std::span<const Vertex> path);

/// P followed by Q without its first two vertices. Requires the last
/// end-arc of P to equal the first end-arc of Q and V(P) n V(Q) to be
/// exactly those two vertices; throws PreconditionError otherwise.
VertexSeq concat(std::span<const Vertex> p, std::span<const Vertex> q);

/// floor(k/3) consecutive triples of a verified reverse-square cycle; each
/// is a directed triangle. Throws PreconditionError if `cycle` does not
/// pass is_rs_cycle.
std::vector<Triple> triangles_from_cycle(const Digraph& d,
                                         std::span<const Vertex> cycle);

bool is_directed_triangle(const Digraph& d, const Triple& t);

}  // namespace rsham
