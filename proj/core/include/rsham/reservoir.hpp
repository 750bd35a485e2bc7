#pragma once

#include <cstdint>
#include <optional>

#include "rsham/connecting.hpp"
#include "rsham/digraph.hpp"

namespace rsham {

/// Result of checking d+_R(x) >= t and d-_R(x) >= t for every vertex x,
/// where t = (2/3 + gamma/2)(|R| + 4).
struct ReservoirCertificate {
  double threshold = 0.0;
  /// min over x and both directions of d_R(x) - threshold.
  double worst_margin = 0.0;
  Vertex worst_vertex = 0;
  bool holds = false;
};

/// Exhaustive over all n vertices.
ReservoirCertificate check_reservoir(const Digraph& d, const VertexSet& r, double gamma);

/// A vertex pool reserved for routing connectors. `used` is the part
/// already consumed by connector interiors.
struct Reservoir {
  VertexSet verts;
  VertexSet used;
  double gamma = 0.1;
  bool certified = false;
  /// Most vertices connectors may consume before further routing is refused.
  std::size_t used_budget = 0;
  /// Draws made, including the accepted one.
  std::size_t draws = 0;
  ReservoirCertificate certificate;

  std::size_t available() const { return verts.size() - used.size(); }
};

/// Uniform random `size`-subsets of V - W, redrawn until the certificate
/// holds; at most retries + 1 draws. Throws ReservoirFailure with the best
/// worst-margin seen, InvalidInput if size > n - |W| or size == 0.
Reservoir sample_reservoir(const Digraph& d, const VertexSet& w, std::size_t size,
                           double gamma, std::uint64_t seed, std::size_t retries);

/// Same draws as sample_reservoir, but when none certifies returns the draw
/// with the largest worst-margin, marked uncertified.
Reservoir sample_reservoir_best_effort(const Digraph& d, const VertexSet& w,
                                       std::size_t size, double gamma, std::uint64_t seed,
                                       std::size_t retries);

/// Connects ab to cd with every interior vertex taken from the unused part
/// of the reservoir, then marks the interior used. The order cap is
/// min(16/gamma, |R| + 4) unless p.order_cap is set. Throws
/// PreconditionError when the used budget is already exceeded or the new
/// interior would exceed it, and ConnectionFailure when no path is found.
VertexSeq reservoir_connect(const Digraph& d, Reservoir& r, ArcPair ab, ArcPair cd,
                            const ConnectParams& p);

}  // namespace rsham
