#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "rsham/connecting.hpp"
#include "rsham/digraph.hpp"
#include "rsham/verify.hpp"

namespace rsham {

/// Up to `limit` absorbers of v, built by choosing b in N-(v), then
/// c in N-(b) n N+(b) n N+(v), a in N-(b) n N+(c) n N+(v) and finally
/// d in N+(c) n N-(b) n N-(v) with d != a.
std::vector<Quad> enumerate_absorbers(
    const Digraph& d, Vertex v,
    std::size_t limit = std::numeric_limits<std::size_t>::max());

/// Vertices outside t that t absorbs (empty if t is not a reverse-square
/// 4-path or lacks the arc cb).
VertexSet absorbed_by(const Digraph& d, const Quad& t);

struct FamilyParams {
  double gamma = 0.1;
  /// Verbatim constants: inclusion probability gamma^4 n^-3, size cap
  /// 2 gamma^4 n, coverage strictly above gamma^7 n, and removal of every
  /// overlapping tuple.
  bool paper_scale = false;
  /// Per ordered 4-tuple; overrides the default of either mode.
  std::optional<double> inclusion_prob;
  /// Desk mode: target family size as a fraction of n.
  double family_fraction = 1.0 / 20.0;
  /// Desk mode: expected draws per target member.
  double draw_multiplier = 8.0;
  std::optional<std::size_t> size_cap;
  /// Minimum |A_v n F| for every vertex outside the family.
  std::optional<std::size_t> coverage_floor;
  /// Desk default floor is max(3, coverage_fraction * n).
  double coverage_fraction = 0.0;

  struct Resolved {
    double inclusion_prob;
    std::size_t size_cap;
    std::size_t coverage_floor;
  };
  Resolved resolve(std::size_t n) const;
};

struct FamilyStats {
  std::size_t attempts = 0;
  std::size_t drawn = 0;
  std::size_t overlapping_pairs = 0;
  std::size_t dropped_non_absorbers = 0;
  std::size_t dropped_overlaps = 0;
  std::size_t min_coverage = 0;
  std::size_t min_coverage_vertex = 0;
};

/// Disjoint absorbers with per-vertex coverage counts |A_v n F|.
struct AbsorberFamily {
  std::vector<Quad> members;
  std::vector<std::size_t> coverage;
  std::size_t coverage_floor = 0;
  FamilyStats stats;
};

/// Coverage counts recomputed from scratch.
std::vector<std::size_t> family_coverage(const Digraph& d, std::span<const Quad> members);

/// One unchecked draw: random 4-tuple inclusion followed by the overlap and
/// non-absorber removal of the selected mode. Floors are not enforced.
AbsorberFamily draw_family(const Digraph& d, const FamilyParams& p, std::uint64_t seed);

/// Random 4-tuple inclusion, then removal of overlapping tuples and of
/// tuples that absorb nothing. Desk mode resolves overlaps greedily in a
/// seeded random order instead of discarding both sides. Retries with
/// derived seeds until the size cap and coverage floor hold; throws
/// FamilyFailure naming the worst-covered vertex.
AbsorberFamily sample_family(const Digraph& d, const FamilyParams& p, std::uint64_t seed,
                             std::size_t retries);

/// A reverse-square path containing every family member as four
/// consecutive vertices.
struct AbsorbingPath {
  VertexSeq path;
  std::vector<Quad> members;
  std::vector<bool> used;
  std::vector<std::size_t> connector_orders;

  /// Indices of unused members that absorb u.
  std::vector<std::size_t> free_absorbers(const Digraph& d, Vertex u) const;
};

/// Chains family members F_1 o P_1 o ... o F_f, each connector found by
/// connect_avoiding with every used or not-yet-chained vertex forbidden.
/// Connector order is capped by `connector_cap` (default min(8/gamma, n)).
/// Throws ConstructionFailure naming the failed junction.
AbsorbingPath build_absorbing_path(const Digraph& d, const AbsorberFamily& f,
                                   const ConnectParams& p,
                                   std::optional<std::size_t> connector_cap = std::nullopt);

/// Distinct free member for every u in `u_set`, or nullopt; the vertex that
/// could not be matched is reported through `unmatched`.
std::optional<std::vector<std::size_t>> absorption_assignment(
    const Digraph& d, const AbsorbingPath& a, std::span<const Vertex> u_set,
    Vertex* unmatched = nullptr);

/// Splices every u into its own free absorber (abcd becomes abucd). The
/// result keeps both end-arcs and has vertex set V(a.path) u U. Throws
/// AbsorptionFailure naming a vertex without a free absorber, and
/// PreconditionError if U meets the path.
AbsorbingPath absorb(const Digraph& d, const AbsorbingPath& a,
                     std::span<const Vertex> u_set);

}  // namespace rsham
