#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rsham/digraph.hpp"

namespace rsham {

/// Tunables of the cascade-based connector. Unset fields take the
/// n-dependent defaults computed by `resolve`.
struct ConnectParams {
  double gamma = 0.1;
  /// Deepest level built; default ceil(1/gamma) + 1.
  std::optional<std::size_t> level_cap;
  /// Minimum link in-degree for a vertex to be kept at level >= 2; default sqrt(n).
  std::optional<double> prune_threshold;
  /// Minimum number of witnesses for a link into level >= 3; default n^(1/4).
  std::optional<double> witness_threshold;
  /// Longest acceptable path; default min(4/gamma, n).
  std::optional<std::size_t> order_cap;
  /// Witnesses stored per link.
  std::size_t witness_cap = 8;
  /// Below this many usable vertices the exact breadth-first search is used.
  std::size_t fallback_below = 40;
  /// Node budget for witness tracing and for the breadth-first fallback.
  std::uint64_t search_nodes = 2'000'000;

  struct Resolved {
    double gamma;
    std::size_t level_cap;
    double prune_threshold;
    double witness_threshold;
    double heavy_threshold;
    std::size_t order_cap;
  };
  /// Thresholds for a host digraph of order n. Throws InvalidInput if
  /// gamma is outside (0, 1/6] or a cap is zero.
  Resolved resolve(std::size_t n) const;
};

enum class CascadeDirection { out, in };

/// One level X_j of a cascade together with the link digraph G_j from
/// X_{j-1}. Link predecessors are stored per member in the cascade's own
/// orientation: for an out-cascade they are in-neighbours in D, for an
/// in-cascade out-neighbours.
struct CascadeLevel {
  VertexSet members;
  std::vector<VertexSet> preds;  // indexed by vertex; empty for non-members
  VertexSet pruned;              // X_j^0: candidates dropped for low link degree
  std::size_t link_count = 0;
};

/// Layered witness structure rooted at an arc.
///
/// An out-cascade rooted at ab yields, for any link (x, y) of level j, a
/// reverse-square path a b ... x y of order j + 2. An in-cascade rooted at
/// cd is the same construction on the reversed digraph, rooted at dc; its
/// traced paths are reversed on output so they end with c d.
class Cascade {
 public:
  CascadeDirection direction() const { return direction_; }
  /// Root arc as given (ab for out-cascades, cd for in-cascades).
  ArcPair root() const { return root_; }
  const std::vector<CascadeLevel>& levels() const { return levels_; }
  std::size_t depth() const { return levels_.empty() ? 0 : levels_.size() - 1; }

  /// Witnesses of link (x, y) at `level`, in increasing order.
  const std::vector<Vertex>* witnesses(std::size_t level, Vertex x, Vertex y) const;

  /// Reverse-square path through link (x, y) of `level` back to the root,
  /// avoiding `avoid`; vertex-distinct or nullopt. Returned in D's
  /// orientation: starts with ab for out-cascades, ends with cd for
  /// in-cascades.
  std::optional<VertexSeq> trace(std::size_t level, Vertex x, Vertex y,
                                 const VertexSet& avoid,
                                 std::uint64_t node_budget = 1'000'000) const;

  /// Lowest level with a heavy vertex when the build stopped there.
  std::optional<std::size_t> heavy_level() const { return heavy_level_; }
  bool dead_end() const { return dead_end_; }

 private:
  friend class CascadeBuilder;

  CascadeDirection direction_ = CascadeDirection::out;
  ArcPair root_{};
  std::vector<CascadeLevel> levels_;
  // level -> (x * n + y) -> witnesses
  std::vector<std::unordered_map<std::uint64_t, std::vector<Vertex>>> witness_;
  std::size_t n_ = 0;
  std::vector<VertexSet> fwd_;  // oriented out-neighbourhoods
  std::optional<std::size_t> heavy_level_;
  bool dead_end_ = false;
};

/// Options that restrict where a cascade may grow.
struct CascadeScope {
  /// Vertices the levels may use (all when nullopt). Root vertices are
  /// always excluded from levels >= 1.
  std::optional<VertexSet> allowed;
  /// Keep building past the first heavy level (up to the level cap).
  bool stop_at_heavy = true;
};

/// Throws PreconditionError if ab is not an arc.
Cascade build_out_cascade(const Digraph& d, ArcPair ab, const ConnectParams& p,
                          const CascadeScope& scope = {});
Cascade build_in_cascade(const Digraph& d, ArcPair cd, const ConnectParams& p,
                         const CascadeScope& scope = {});

struct HeavyVertex {
  std::size_t level;
  Vertex vertex;
  friend bool operator==(const HeavyVertex&, const HeavyVertex&) = default;
};

/// First vertex, by level and then identifier, whose link in-degree is at
/// least (1/3 + gamma) n.
std::optional<HeavyVertex> find_heavy(const Cascade& c, std::size_t n, double gamma);

enum class ConnectRoute { direct, exact_search, same_pivot, split_pivot };

const char* to_string(ConnectRoute r);

/// Diagnostics for one connection attempt.
struct ConnectStats {
  std::optional<ConnectRoute> route;
  std::optional<std::size_t> out_heavy_level;
  std::optional<std::size_t> in_heavy_level;
  std::size_t out_depth = 0;
  std::size_t in_depth = 0;
  std::size_t junction_attempts = 0;
  std::size_t usable_vertices = 0;
  std::string failure;
};

struct ConnectOutcome {
  std::optional<VertexSeq> path;
  ConnectStats stats;
};

/// Connects ab to cd by a reverse-square path whose interior avoids
/// `forbidden` (endpoints exempt). Never throws on search failure; inspect
/// `path`. Throws PreconditionError on invalid arcs.
ConnectOutcome try_connect(const Digraph& d, ArcPair ab, ArcPair cd,
                           const VertexSet& forbidden, const ConnectParams& p);

/// Reverse-square path with first end-arc ab and last end-arc cd, order at
/// most the resolved order cap. Throws ConnectionFailure with diagnostics.
VertexSeq connect(const Digraph& d, ArcPair ab, ArcPair cd, const ConnectParams& p);

VertexSeq connect_avoiding(const Digraph& d, ArcPair ab, ArcPair cd,
                           const VertexSet& forbidden, const ConnectParams& p);

}  // namespace rsham
