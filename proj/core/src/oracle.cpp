#include "rsham/oracle.hpp"

#include <chrono>
#include <string>
#include <unordered_set>

#include "rsham/error.hpp"
#include "rsham/verify.hpp"

namespace rsham {

namespace {

class BudgetClock {
 public:
  explicit BudgetClock(const SearchBudget& b)
      : budget_(b), start_(std::chrono::steady_clock::now()) {
    if (b.max_nodes == 0 || !(b.time_cap_seconds > 0.0))
      throw InvalidInput("search budget must be positive");
  }

  /// Counts one node; false once either cap is exceeded.
  bool tick() {
    if (exhausted_) return false;
    if (++nodes_ > budget_.max_nodes) exhausted_ = true;
    if ((nodes_ & 1023U) == 0) {
      std::chrono::duration<double> el = std::chrono::steady_clock::now() - start_;
      if (el.count() > budget_.time_cap_seconds) exhausted_ = true;
    }
    return !exhausted_;
  }
  bool exhausted() const { return exhausted_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  SearchBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

class HamiltonSearch {
 public:
  HamiltonSearch(const Digraph& d, BudgetClock& clock)
      : d_(d), clock_(clock), used_(d.order()) {}

  bool run() {
    path_.push_back(0);
    used_.insert(0);
    return extend();
  }
  const VertexSeq& path() const { return path_; }

 private:
  bool extend() {
    if (!clock_.tick()) return false;
    if (path_.size() == d_.order()) return is_rs_cycle(d_, path_);
    VertexSet cand = d_.out(path_.back()) - used_;
    if (path_.size() >= 2) cand &= d_.in(path_[path_.size() - 2]);
    for (auto w = cand.first(); w; w = cand.next(w)) {
      path_.push_back(*w);
      used_.insert(*w);
      if (extend()) return true;
      used_.erase(*w);
      path_.pop_back();
      if (clock_.exhausted()) return false;
    }
    return false;
  }

  const Digraph& d_;
  BudgetClock& clock_;
  VertexSeq path_;
  VertexSet used_;
};

}  // namespace

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found:
      return "found";
    case SearchStatus::absent:
      return "absent";
    case SearchStatus::budget_exhausted:
      return "budget_exhausted";
  }
  return "unknown";
}

SearchResult<VertexSeq> bf_rs_hamiltonian_cycle(const Digraph& d,
                                                const SearchBudget& budget) {
  if (d.order() < 3) throw InvalidInput("Hamiltonian cycle search needs n >= 3");
  BudgetClock clock(budget);
  HamiltonSearch search(d, clock);
  SearchResult<VertexSeq> out;
  if (search.run()) {
    out.status = SearchStatus::found;
    out.value = search.path();
  } else {
    out.status = clock.exhausted() ? SearchStatus::budget_exhausted : SearchStatus::absent;
  }
  out.nodes = clock.nodes();
  return out;
}

std::uint64_t bf_count_absorbers(const Digraph& d, Vertex v) {
  const auto n = static_cast<Vertex>(d.order());
  if (n < 5) throw InvalidInput("absorber counting needs n >= 5");
  if (v >= n) throw InvalidInput("vertex out of range");
  std::uint64_t count = 0;
  for (Vertex a = 0; a < n; ++a) {
    if (a == v || !d.has_arc(v, a)) continue;
    for (Vertex b = 0; b < n; ++b) {
      if (b == v || b == a || !d.has_arc(a, b) || !d.has_arc(b, v)) continue;
      for (Vertex c = 0; c < n; ++c) {
        if (c == v || c == a || c == b) continue;
        if (!d.has_arc(b, c) || !d.has_arc(c, b) || !d.has_arc(c, a) ||
            !d.has_arc(v, c))
          continue;
        for (Vertex x = 0; x < n; ++x) {
          if (x == v || x == a || x == b || x == c) continue;
          if (d.has_arc(c, x) && d.has_arc(x, b) && d.has_arc(x, v)) ++count;
        }
      }
    }
  }
  return count;
}

SearchResult<VertexSeq> bf_connect(const Digraph& d, ArcPair ab, ArcPair cd,
                                   std::size_t max_order, const VertexSet* allowed,
                                   const SearchBudget& budget) {
  const Vertex a = ab.tail, b = ab.head, c = cd.tail, e = cd.head;
  if (!d.has_arc(ab) || !d.has_arc(cd))
    throw PreconditionError("bf_connect: both end-arcs must be arcs of the digraph");
  if (a == c || a == e || b == c || b == e)
    throw PreconditionError("bf_connect: end-arcs must be vertex-disjoint");

  BudgetClock clock(budget);
  SearchResult<VertexSeq> out;
  VertexSet pool = allowed ? *allowed : d.all_vertices();
  for (Vertex v : {a, b, c, e}) pool.erase(v);

  struct State {
    VertexSeq path;
    VertexSet used;
  };
  std::vector<State> frontier;
  {
    VertexSet used(d.order(), {a, b, c, e});
    frontier.push_back({{a, b}, std::move(used)});
  }
  std::unordered_set<std::string> seen;

  while (!frontier.empty()) {
    // Try to finish every state at the current length before growing.
    if (frontier.front().path.size() + 2 > max_order) break;
    for (const auto& s : frontier) {
      const Vertex x = s.path[s.path.size() - 2];
      const Vertex y = s.path.back();
      if (d.has_arc(y, c) && d.has_arc(c, x) && d.has_arc(e, y)) {
        VertexSeq p = s.path;
        p.push_back(c);
        p.push_back(e);
        out.status = SearchStatus::found;
        out.value = std::move(p);
        out.nodes = clock.nodes();
        return out;
      }
    }
    if (frontier.front().path.size() + 3 > max_order) break;
    std::vector<State> next;
    for (const auto& s : frontier) {
      const Vertex x = s.path[s.path.size() - 2];
      const Vertex y = s.path.back();
      VertexSet cand = d.out(y) & d.in(x) & pool;
      cand -= s.used;
      for (auto w = cand.first(); w; w = cand.next(w)) {
        if (!clock.tick()) {
          out.status = SearchStatus::budget_exhausted;
          out.nodes = clock.nodes();
          return out;
        }
        State t{s.path, s.used};
        t.path.push_back(*w);
        t.used.insert(*w);
        std::string key;
        key.reserve(8 + t.used.universe() / 8);
        key.append(reinterpret_cast<const char*>(&y), sizeof y);
        key.append(reinterpret_cast<const char*>(&*w), sizeof *w);
        t.used.for_each([&](Vertex u) { key.append(reinterpret_cast<const char*>(&u), sizeof u); });
        if (!seen.insert(std::move(key)).second) continue;
        next.push_back(std::move(t));
      }
    }
    frontier = std::move(next);
  }
  out.status = SearchStatus::absent;
  out.nodes = clock.nodes();
  return out;
}

namespace {

class TriangleSearch {
 public:
  TriangleSearch(const Digraph& d, std::size_t k, BudgetClock& clock)
      : d_(d), k_(k), clock_(clock), used_(d.order()) {}

  bool run() { return step(0); }
  const std::vector<Triple>& chosen() const { return chosen_; }

 private:
  // Vertices below `v` are decided; v either starts a triangle whose other
  // two vertices are larger, or is left uncovered.
  bool step(Vertex v) {
    if (!clock_.tick()) return false;
    if (chosen_.size() == k_) return true;
    if (v >= d_.order()) return false;
    const std::size_t remaining = d_.order() - v;
    if (chosen_.size() + remaining / 3 < k_) return false;
    if (used_.contains(v)) return step(v + 1);

    used_.insert(v);
    for (Vertex x = v + 1; x < d_.order(); ++x) {
      if (used_.contains(x) || !d_.has_arc(v, x)) continue;
      VertexSet closing = d_.out(x) & d_.in(v);
      closing -= used_;
      for (auto y = closing.next(v); y; y = closing.next(y)) {
        chosen_.push_back({v, x, *y});
        used_.insert(x);
        used_.insert(*y);
        if (step(v + 1)) return true;
        used_.erase(x);
        used_.erase(*y);
        chosen_.pop_back();
        if (clock_.exhausted()) return false;
      }
    }
    used_.erase(v);
    return step(v + 1);
  }

  const Digraph& d_;
  std::size_t k_;
  BudgetClock& clock_;
  VertexSet used_;
  std::vector<Triple> chosen_;
};

}  // namespace

SearchResult<std::vector<Triple>> bf_disjoint_triangles(const Digraph& d, std::size_t k,
                                                        const SearchBudget& budget) {
  if (3 * k > d.order()) throw InvalidInput("need 3k <= n");
  BudgetClock clock(budget);
  TriangleSearch search(d, k, clock);
  SearchResult<std::vector<Triple>> out;
  if (search.run()) {
    out.status = SearchStatus::found;
    out.value = search.chosen();
  } else {
    out.status = clock.exhausted() ? SearchStatus::budget_exhausted : SearchStatus::absent;
  }
  out.nodes = clock.nodes();
  return out;
}

}  // namespace rsham
