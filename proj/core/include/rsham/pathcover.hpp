#pragma once

#include <cstdint>
#include <vector>

#include "rsham/connecting.hpp"
#include "rsham/digraph.hpp"

namespace rsham {

struct CoverResult {
  /// Vertex-disjoint reverse-square paths, each of order >= 4.
  std::vector<VertexSeq> paths;
  /// Uncovered vertices of the covered region.
  VertexSet leftover;
  std::size_t grown = 0;      // paths grown before dissolving and merging
  std::size_t dissolved = 0;  // fragments of order < 4 sent to leftover
  std::size_t merges = 0;     // successful connector merges
};

/// Greedy cover of D[region] (all of V when region is null) by
/// reverse-square paths. Paths are grown from seeded random starts, first
/// forward while some unused w has last -> w and w -> second-to-last, then
/// backward symmetrically. Fragments of order below 4 go to the leftover,
/// and paths are then re-extended into the leftover. While there are more
/// than path_budget paths, pairs are merged by connectors whose interior
/// lies in the leftover. Throws CoverFailure if either budget still fails.
CoverResult greedy_path_cover(const Digraph& d, std::size_t path_budget,
                              std::size_t leftover_budget, std::uint64_t seed,
                              const VertexSet* region = nullptr,
                              const ConnectParams& cp = {});

}  // namespace rsham
