#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rsham/digraph.hpp"
#include "rsham/path_algebra.hpp"

namespace rsham {

/// Caps for exhaustive searches. Both must be positive.
struct SearchBudget {
  std::uint64_t max_nodes = 50'000'000;
  double time_cap_seconds = 60.0;
};

/// Exhaustion of the budget is reported separately from absence so an
/// oracle never claims non-existence it has not proven.
enum class SearchStatus { found, absent, budget_exhausted };

const char* to_string(SearchStatus s);

template <class T>
struct SearchResult {
  SearchStatus status = SearchStatus::absent;
  std::optional<T> value;
  std::uint64_t nodes = 0;

  bool found() const { return status == SearchStatus::found; }
};

/// Depth-first search for a reverse-square Hamiltonian cycle with the first
/// vertex fixed to 0. A partial ordering v1..vj extends by w only if
/// vj -> w and w -> v_{j-1} are arcs. Throws InvalidInput for n < 3.
SearchResult<VertexSeq> bf_rs_hamiltonian_cycle(const Digraph& d,
                                                const SearchBudget& budget = {});

/// Number of ordered 4-tuples (a, b, c, d) that absorb v, by exhaustive
/// scan over all ordered 4-tuples of V - {v}.
std::uint64_t bf_count_absorbers(const Digraph& d, Vertex v);

/// Shortest reverse-square path with first end-arc ab and last end-arc cd,
/// of order at most max_order, by breadth-first search over states
/// (previous vertex, current vertex, used set). Interior vertices are drawn
/// from `allowed` (all vertices when empty). Throws PreconditionError if ab
/// or cd is not an arc or the arcs share a vertex.
SearchResult<VertexSeq> bf_connect(const Digraph& d, ArcPair ab, ArcPair cd,
                                   std::size_t max_order,
                                   const VertexSet* allowed = nullptr,
                                   const SearchBudget& budget = {});

/// k vertex-disjoint directed triangles by backtracking. Requires 3k <= n.
SearchResult<std::vector<Triple>> bf_disjoint_triangles(const Digraph& d,
                                                        std::size_t k,
                                                        const SearchBudget& budget = {});

}  // namespace rsham
