#include "rsham/verify.hpp"

#include <string>

#include "rsham/error.hpp"

namespace rsham {

void require_simple(const Digraph& d, std::span<const Vertex> seq) {
  VertexSet seen(d.order());
  for (Vertex v : seq) {
    if (v >= d.order())
      throw InvalidInput("vertex " + std::to_string(v) + " out of range");
    if (seen.contains(v))
      throw InvalidInput("vertex " + std::to_string(v) + " repeated");
    seen.insert(v);
  }
}

std::optional<ArcPair> first_missing_path_arc(const Digraph& d,
                                              std::span<const Vertex> seq) {
  if (seq.size() < 2) throw InvalidInput("a path needs at least 2 vertices");
  require_simple(d, seq);
  const std::size_t k = seq.size();
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (!d.has_arc(seq[i], seq[i + 1])) return ArcPair{seq[i], seq[i + 1]};
    if (i + 2 < k && !d.has_arc(seq[i + 2], seq[i]))
      return ArcPair{seq[i + 2], seq[i]};
  }
  return std::nullopt;
}

std::optional<ArcPair> first_missing_cycle_arc(const Digraph& d,
                                               std::span<const Vertex> seq) {
  if (seq.size() < 3) throw InvalidInput("a cycle needs at least 3 vertices");
  require_simple(d, seq);
  const std::size_t k = seq.size();
  for (std::size_t i = 0; i < k; ++i) {
    Vertex cur = seq[i];
    Vertex nxt = seq[(i + 1) % k];
    Vertex two = seq[(i + 2) % k];
    if (!d.has_arc(cur, nxt)) return ArcPair{cur, nxt};
    if (!d.has_arc(two, cur)) return ArcPair{two, cur};
  }
  return std::nullopt;
}

bool is_rs_path(const Digraph& d, std::span<const Vertex> seq) {
  return !first_missing_path_arc(d, seq).has_value();
}

bool is_rs_cycle(const Digraph& d, std::span<const Vertex> seq) {
  return !first_missing_cycle_arc(d, seq).has_value();
}

std::optional<ArcPair> first_missing_absorber_arc(const Digraph& d, const Quad& t,
                                                  Vertex v) {
  const std::array<Vertex, 5> five{t[0], t[1], v, t[2], t[3]};
  require_simple(d, five);
  if (auto m = first_missing_path_arc(d, t)) return m;
  return first_missing_path_arc(d, five);
}

bool is_absorber(const Digraph& d, const Quad& t, Vertex v) {
  return !first_missing_absorber_arc(d, t, v).has_value();
}

bool is_square_cycle(const Digraph& d, std::span<const Vertex> seq) {
  if (seq.size() < 3) throw InvalidInput("a cycle needs at least 3 vertices");
  require_simple(d, seq);
  const std::size_t k = seq.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (!d.has_arc(seq[i], seq[(i + 1) % k])) return false;
    if (!d.has_arc(seq[i], seq[(i + 2) % k])) return false;
  }
  return true;
}

}  // namespace rsham
