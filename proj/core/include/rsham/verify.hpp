#pragma once

#include <array>
#include <optional>
#include <span>

#include "rsham/digraph.hpp"

namespace rsham {

/// Candidate absorber (a, b, c, d).
using Quad = std::array<Vertex, 4>;

// A sequence v1..vk is a reverse-square path when every consecutive arc
// v_i v_{i+1} and every reversed distance-two arc v_{i+2} v_i is present.
// The cycle variant takes indices modulo k.
//
// The `first_missing_*` functions name the first absent required arc in
// scan order (consecutive arc before back arc at each position) and return
// nullopt when the object is valid. All of them throw InvalidInput on
// repeated or out-of-range vertices.

std::optional<ArcPair> first_missing_path_arc(const Digraph& d,
                                              std::span<const Vertex> seq);
std::optional<ArcPair> first_missing_cycle_arc(const Digraph& d,
                                               std::span<const Vertex> seq);

/// Requires k >= 2.
bool is_rs_path(const Digraph& d, std::span<const Vertex> seq);
/// Requires k >= 3.
bool is_rs_cycle(const Digraph& d, std::span<const Vertex> seq);

/// abcd is a reverse-square 4-path and abvcd a reverse-square 5-path.
bool is_absorber(const Digraph& d, const Quad& t, Vertex v);
std::optional<ArcPair> first_missing_absorber_arc(const Digraph& d, const Quad& t,
                                                  Vertex v);

/// Plain square of a cycle: arcs v_i v_{i+1} and v_i v_{i+2}.
bool is_square_cycle(const Digraph& d, std::span<const Vertex> seq);

/// Throws InvalidInput when `seq` repeats a vertex or leaves [0, n).
void require_simple(const Digraph& d, std::span<const Vertex> seq);

}  // namespace rsham
