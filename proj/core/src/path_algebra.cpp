#include "rsham/path_algebra.hpp"

#include <algorithm>
#include <string>

#include "rsham/error.hpp"
#include "rsham/verify.hpp"

namespace rsham {

ArcPair first_end_arc(std::span<const Vertex> path) {
  if (path.size() < 2) throw InvalidInput("end-arc of a path with < 2 vertices");
  return {path[0], path[1]};
}

ArcPair last_end_arc(std::span<const Vertex> path) {
  if (path.size() < 2) throw InvalidInput("end-arc of a path with < 2 vertices");
  return {path[path.size() - 2], path[path.size() - 1]};
}

VertexSeq concat(std::span<const Vertex> p, std::span<const Vertex> q) {
  if (p.size() < 2 || q.size() < 2)
    throw PreconditionError("concatenation needs paths with at least 2 vertices");
  if (last_end_arc(p) != first_end_arc(q))
    throw PreconditionError("last end-arc of P differs from first end-arc of Q");
  Vertex universe = 0;
  for (Vertex v : p) universe = std::max(universe, v);
  for (Vertex v : q) universe = std::max(universe, v);
  VertexSet in_p(static_cast<std::size_t>(universe) + 1);
  for (Vertex v : p) in_p.insert(v);
  for (std::size_t i = 2; i < q.size(); ++i)
    if (in_p.contains(q[i]))
      throw PreconditionError("P and Q share vertex " + std::to_string(q[i]) +
                              " outside the junction end-arc");
  VertexSeq out(p.begin(), p.end());
  out.insert(out.end(), q.begin() + 2, q.end());
  return out;
}

bool is_directed_triangle(const Digraph& d, const Triple& t) {
  return d.has_arc(t[0], t[1]) && d.has_arc(t[1], t[2]) && d.has_arc(t[2], t[0]);
}

std::vector<Triple> triangles_from_cycle(const Digraph& d,
                                         std::span<const Vertex> cycle) {
  bool ok = false;
  try {
    ok = cycle.size() >= 3 && is_rs_cycle(d, cycle);
  } catch (const InvalidInput&) {
    ok = false;
  }
  if (!ok)
    throw PreconditionError("triangle extraction needs a verified reverse-square cycle");
  std::vector<Triple> out;
  for (std::size_t i = 0; i + 3 <= cycle.size(); i += 3)
    out.push_back({cycle[i], cycle[i + 1], cycle[i + 2]});
  return out;
}

}  // namespace rsham
