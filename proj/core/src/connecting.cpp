#include "rsham/connecting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rsham/error.hpp"
#include "rsham/oracle.hpp"
#include "rsham/verify.hpp"

namespace rsham {

ConnectParams::Resolved ConnectParams::resolve(std::size_t n) const {
  if (!(gamma > 0.0) || gamma > 1.0 / 6.0 + 1e-12)
    throw InvalidInput("connect: gamma must lie in (0, 1/6]");
  Resolved r{};
  r.gamma = gamma;
  const double nd = static_cast<double>(n);
  r.level_cap = level_cap.value_or(static_cast<std::size_t>(std::ceil(1.0 / gamma - 1e-9)) + 1);
  if (r.level_cap < 2) throw InvalidInput("connect: level cap must be at least 2");
  r.prune_threshold = prune_threshold.value_or(std::sqrt(nd));
  r.witness_threshold = witness_threshold.value_or(std::pow(nd, 0.25));
  r.heavy_threshold = (1.0 / 3.0 + gamma) * nd;
  r.order_cap = order_cap.value_or(
      std::min(static_cast<std::size_t>(std::floor(4.0 / gamma + 1e-9)), n));
  if (r.order_cap == 0 || witness_cap == 0)
    throw InvalidInput("connect: caps must be positive");
  return r;
}

const char* to_string(ConnectRoute r) {
  switch (r) {
    case ConnectRoute::direct:
      return "direct";
    case ConnectRoute::exact_search:
      return "exact_search";
    case ConnectRoute::same_pivot:
      return "same_pivot";
    case ConnectRoute::split_pivot:
      return "split_pivot";
  }
  return "unknown";
}

const std::vector<Vertex>* Cascade::witnesses(std::size_t level, Vertex x,
                                              Vertex y) const {
  if (level >= witness_.size()) return nullptr;
  auto it = witness_[level].find(static_cast<std::uint64_t>(x) * n_ + y);
  return it == witness_[level].end() ? nullptr : &it->second;
}

namespace {

class Tracer {
 public:
  Tracer(const Cascade& c, VertexSet used, std::uint64_t budget)
      : c_(c), used_(std::move(used)), budget_(budget) {}

  // Builds the oriented path backwards: `rev` holds y, x, w, ... .
  bool run(std::size_t level, Vertex x, Vertex y) {
    rev_ = {y, x};
    return rec(level, x, y);
  }
  VertexSeq oriented_path() const { return VertexSeq(rev_.rbegin(), rev_.rend()); }

 private:
  bool rec(std::size_t level, Vertex x, Vertex y) {
    if (level == 0) return true;
    if (budget_ == 0) return false;
    --budget_;
    const auto* ws = c_.witnesses(level, x, y);
    if (ws == nullptr) return false;
    for (Vertex w : *ws) {
      if (used_.contains(w)) continue;
      used_.insert(w);
      rev_.push_back(w);
      if (rec(level - 1, w, x)) return true;
      rev_.pop_back();
      used_.erase(w);
    }
    return false;
  }

  const Cascade& c_;
  VertexSet used_;
  std::uint64_t budget_;
  VertexSeq rev_;
};

}  // namespace

std::optional<VertexSeq> Cascade::trace(std::size_t level, Vertex x, Vertex y,
                                        const VertexSet& avoid,
                                        std::uint64_t node_budget) const {
  if (level == 0 || level >= levels_.size()) return std::nullopt;
  if (!levels_[level].members.contains(y) || !levels_[level].preds[y].contains(x))
    return std::nullopt;
  if (avoid.contains(x) || avoid.contains(y)) return std::nullopt;
  VertexSet used = avoid;
  used.insert(x);
  used.insert(y);
  Tracer t(*this, std::move(used), node_budget);
  if (!t.run(level, x, y)) return std::nullopt;
  VertexSeq p = t.oriented_path();
  if (direction_ == CascadeDirection::in) std::reverse(p.begin(), p.end());
  return p;
}

class CascadeBuilder {
 public:
  CascadeBuilder(const Digraph& d, CascadeDirection dir, ArcPair root,
                 const ConnectParams& p, const CascadeScope& scope)
      : d_(d), dir_(dir), root_(root), p_(p), scope_(scope) {}

  Cascade build() {
    if (!d_.has_arc(root_))
      throw PreconditionError("cascade root " + std::to_string(root_.tail) + "->" +
                              std::to_string(root_.head) + " is not an arc");
    const std::size_t n = d_.order();
    VertexSet pool = scope_.allowed ? *scope_.allowed : d_.all_vertices();
    if (pool.universe() != n) throw InvalidInput("cascade scope universe mismatch");
    const auto r = p_.resolve(pool.size());

    Cascade c;
    c.direction_ = dir_;
    c.root_ = root_;
    c.n_ = n;
    const bool out = dir_ == CascadeDirection::out;
    c.fwd_.reserve(n);
    for (Vertex v = 0; v < n; ++v) c.fwd_.push_back(out ? d_.out(v) : d_.in(v));

    // Oriented root: anchor -> start.
    const Vertex anchor = out ? root_.tail : root_.head;
    const Vertex start = out ? root_.head : root_.tail;
    pool.erase(anchor);
    pool.erase(start);

    CascadeLevel zero{VertexSet(n), std::vector<VertexSet>(n), VertexSet(n), 1};
    zero.members.insert(start);
    zero.preds[start] = VertexSet(n, {anchor});
    c.levels_.push_back(std::move(zero));
    c.witness_.emplace_back();

    for (std::size_t j = 0; j < r.level_cap; ++j) {
      const CascadeLevel& cur = c.levels_[j];
      const std::size_t next = j + 1;
      const double need = next <= 2 ? 1.0 : std::max(1.0, r.witness_threshold);

      CascadeLevel lvl{VertexSet(n), std::vector<VertexSet>(n), VertexSet(n), 0};
      std::unordered_map<std::uint64_t, std::vector<Vertex>> wit;
      cur.members.for_each([&](Vertex y) {
        const VertexSet& preds = cur.preds[y];
        VertexSet cand = c.fwd_[y] & pool;
        cand.for_each([&](Vertex z) {
          VertexSet w = preds & c.fwd_[z];
          const auto cnt = w.size();
          if (static_cast<double>(cnt) < need) return;
          if (lvl.preds[z].universe() == 0) lvl.preds[z] = VertexSet(n);
          lvl.preds[z].insert(y);
          std::vector<Vertex> keep;
          keep.reserve(std::min(cnt, p_.witness_cap));
          for (auto v = w.first(); v && keep.size() < p_.witness_cap; v = w.next(v))
            keep.push_back(*v);
          wit.emplace(static_cast<std::uint64_t>(y) * n + z, std::move(keep));
        });
      });

      for (Vertex z = 0; z < n; ++z) {
        if (lvl.preds[z].universe() == 0) continue;
        const auto deg = lvl.preds[z].size();
        if (next >= 2 && static_cast<double>(deg) < r.prune_threshold) {
          lvl.pruned.insert(z);
          lvl.preds[z] = VertexSet();
          continue;
        }
        lvl.members.insert(z);
        lvl.link_count += deg;
      }
      if (lvl.members.empty()) {
        c.dead_end_ = true;
        break;
      }
      bool heavy = false;
      lvl.members.for_each([&](Vertex z) {
        if (static_cast<double>(lvl.preds[z].size()) >= r.heavy_threshold) heavy = true;
      });
      c.levels_.push_back(std::move(lvl));
      c.witness_.push_back(std::move(wit));
      if (heavy && !c.heavy_level_) c.heavy_level_ = next;
      if (heavy && scope_.stop_at_heavy) break;
    }
    return c;
  }

 private:
  const Digraph& d_;
  CascadeDirection dir_;
  ArcPair root_;
  const ConnectParams& p_;
  const CascadeScope& scope_;
};

Cascade build_out_cascade(const Digraph& d, ArcPair ab, const ConnectParams& p,
                          const CascadeScope& scope) {
  return CascadeBuilder(d, CascadeDirection::out, ab, p, scope).build();
}

Cascade build_in_cascade(const Digraph& d, ArcPair cd, const ConnectParams& p,
                         const CascadeScope& scope) {
  return CascadeBuilder(d, CascadeDirection::in, cd, p, scope).build();
}

std::optional<HeavyVertex> find_heavy(const Cascade& c, std::size_t n, double gamma) {
  const double threshold = (1.0 / 3.0 + gamma) * static_cast<double>(n);
  const auto& levels = c.levels();
  for (std::size_t j = 1; j < levels.size(); ++j) {
    for (auto v = levels[j].members.first(); v; v = levels[j].members.next(v))
      if (static_cast<double>(levels[j].preds[*v].size()) >= threshold)
        return HeavyVertex{j, *v};
  }
  return std::nullopt;
}

namespace {

struct Candidate {
  std::size_t level;
  Vertex vertex;
  bool heavy;
};

std::vector<Candidate> candidates(const Cascade& c, double heavy_threshold,
                                  std::size_t others_cap) {
  std::vector<Candidate> heavy;
  std::vector<Candidate> rest;
  const auto& levels = c.levels();
  for (std::size_t j = 1; j < levels.size(); ++j) {
    levels[j].members.for_each([&](Vertex v) {
      if (static_cast<double>(levels[j].preds[v].size()) >= heavy_threshold)
        heavy.push_back({j, v, true});
      else
        rest.push_back({j, v, false});
    });
  }
  // Within the non-heavy tail prefer vertices with many link predecessors.
  std::stable_sort(rest.begin(), rest.end(), [&](const Candidate& x, const Candidate& y) {
    if (x.level != y.level) return x.level < y.level;
    return levels[x.level].preds[x.vertex].size() > levels[y.level].preds[y.vertex].size();
  });
  if (rest.size() > others_cap) rest.resize(others_cap);
  heavy.insert(heavy.end(), rest.begin(), rest.end());
  return heavy;
}

class Junction {
 public:
  Junction(const Digraph& d, const Cascade& out, const Cascade& in, ArcPair ab,
           ArcPair cd, const VertexSet& avail, const ConnectParams& p,
           const ConnectParams::Resolved& r, ConnectStats& stats)
      : d_(d), out_(out), in_(in), ab_(ab), cd_(cd), avail_(avail), p_(p), r_(r),
        stats_(stats) {}

  std::optional<VertexSeq> search() {
    auto oc = candidates(out_, r_.heavy_threshold, 48);
    auto ic = candidates(in_, r_.heavy_threshold, 48);
    for (const auto& o : oc) {
      for (const auto& i : ic) {
        if (o.level + i.level + 3 > r_.order_cap) continue;
        if (++stats_.junction_attempts > kMaxPairs) return std::nullopt;
        auto got = o.vertex == i.vertex ? same_pivot(o, i) : split_pivot(o, i);
        if (got) return got;
      }
    }
    return std::nullopt;
  }

 private:
  static constexpr std::size_t kMaxPairs = 4000;
  static constexpr std::size_t kMaxTraces = 64;

  VertexSet set_of(std::initializer_list<Vertex> vs) const {
    VertexSet s(d_.order());
    for (Vertex v : vs) s.insert(v);
    return s;
  }

  bool accept(const VertexSeq& p) const {
    if (p.size() > r_.order_cap) return false;
    if (!is_rs_path(d_, p) || first_end_arc(p) != ab_ || last_end_arc(p) != cd_)
      throw std::logic_error("connect: junction produced an invalid path");
    return true;
  }

  static ArcPair first_end_arc(const VertexSeq& p) { return {p[0], p[1]}; }
  static ArcPair last_end_arc(const VertexSeq& p) {
    return {p[p.size() - 2], p[p.size() - 1]};
  }

  // b1 = b2 = v: ... a1 v a2 ... with a2 -> a1.
  std::optional<VertexSeq> same_pivot(const Candidate& o, const Candidate& i) {
    const Vertex v = o.vertex;
    const VertexSet& p1 = out_.levels()[o.level].preds[v];
    const VertexSet& p2 = in_.levels()[i.level].preds[v];
    std::size_t traces = 0;
    for (auto a1 = p1.first(); a1; a1 = p1.next(a1)) {
      VertexSet a2s = p2 & d_.in(*a1);
      a2s.erase(*a1);
      for (auto a2 = a2s.first(); a2; a2 = a2s.next(a2)) {
        if (++traces > kMaxTraces) return std::nullopt;
        auto head = out_.trace(o.level, *a1, v, set_of({cd_.tail, cd_.head, *a2}),
                               p_.search_nodes);
        if (!head) continue;
        VertexSet avoid = set_of({});
        for (Vertex u : *head) avoid.insert(u);
        avoid.erase(v);
        auto tail = in_.trace(i.level, *a2, v, avoid, p_.search_nodes);
        if (!tail) continue;
        VertexSeq path = *head;
        path.insert(path.end(), tail->begin() + 1, tail->end());
        if (accept(path)) {
          stats_.route = ConnectRoute::same_pivot;
          return path;
        }
      }
    }
    return std::nullopt;
  }

  // b1 != b2: ... a1 b1 u1 w u2 b2 a2 ... with w -> b1, b2 -> w, u2 -> u1,
  // u1 -> a1 and a2 -> u2.
  std::optional<VertexSeq> split_pivot(const Candidate& o, const Candidate& i) {
    const Vertex b1 = o.vertex;
    const Vertex b2 = i.vertex;
    const VertexSet& p1 = out_.levels()[o.level].preds[b1];
    const VertexSet& p2 = in_.levels()[i.level].preds[b2];
    VertexSet mids = d_.in(b1) & d_.out(b2) & avail_;
    mids.erase(b1);
    mids.erase(b2);
    std::size_t traces = 0;
    for (auto w = mids.first(); w; w = mids.next(w)) {
      VertexSet u1s = d_.out(b1) & d_.in(*w) & avail_;
      VertexSet u2s = d_.out(*w) & d_.in(b2) & avail_;
      for (Vertex x : {b1, b2, *w}) {
        u1s.erase(x);
        u2s.erase(x);
      }
      for (auto u1 = u1s.first(); u1; u1 = u1s.next(u1)) {
        VertexSet a1s = p1 & d_.out(*u1);
        for (Vertex x : {*w, b2, *u1}) a1s.erase(x);
        if (a1s.empty()) continue;
        VertexSet u2c = u2s & d_.in(*u1);
        u2c.erase(*u1);
        for (auto u2 = u2c.first(); u2; u2 = u2c.next(u2)) {
          VertexSet a2s = p2 & d_.in(*u2);
          for (Vertex x : {*w, b1, *u1, *u2}) a2s.erase(x);
          if (a2s.empty()) continue;
          VertexSet a1c = a1s;
          a1c.erase(*u2);
          for (auto a1 = a1c.first(); a1; a1 = a1c.next(a1)) {
            for (auto a2 = a2s.first(); a2; a2 = a2s.next(a2)) {
              if (*a2 == *a1) continue;
              if (++traces > kMaxTraces) return std::nullopt;
              auto head = out_.trace(
                  o.level, *a1, b1,
                  set_of({cd_.tail, cd_.head, *u1, *w, *u2, b2, *a2}), p_.search_nodes);
              if (!head) continue;
              VertexSet avoid = set_of({*u1, *w, *u2});
              for (Vertex u : *head) avoid.insert(u);
              auto tail = in_.trace(i.level, *a2, b2, avoid, p_.search_nodes);
              if (!tail) continue;
              VertexSeq path = *head;
              path.push_back(*u1);
              path.push_back(*w);
              path.push_back(*u2);
              path.insert(path.end(), tail->begin(), tail->end());
              if (accept(path)) {
                stats_.route = ConnectRoute::split_pivot;
                return path;
              }
            }
          }
        }
      }
    }
    return std::nullopt;
  }

  const Digraph& d_;
  const Cascade& out_;
  const Cascade& in_;
  ArcPair ab_;
  ArcPair cd_;
  const VertexSet& avail_;
  const ConnectParams& p_;
  const ConnectParams::Resolved& r_;
  ConnectStats& stats_;
};

}  // namespace

ConnectOutcome try_connect(const Digraph& d, ArcPair ab, ArcPair cd,
                           const VertexSet& forbidden, const ConnectParams& p) {
  const Vertex a = ab.tail, b = ab.head, c = cd.tail, e = cd.head;
  if (!d.has_arc(ab) || !d.has_arc(cd))
    throw PreconditionError("connect: both end-arcs must be arcs of the digraph");
  if (a == c || a == e || b == c || b == e)
    throw PreconditionError("connect: end-arcs must be vertex-disjoint");
  if (forbidden.universe() != d.order())
    throw InvalidInput("connect: forbidden set universe mismatch");

  ConnectOutcome res;
  ConnectStats& st = res.stats;
  VertexSet usable = d.all_vertices() - forbidden;
  for (Vertex v : {a, b, c, e}) usable.insert(v);
  st.usable_vertices = usable.size();
  const auto r = p.resolve(usable.size());

  if (d.has_arc(b, c) && d.has_arc(c, a) && d.has_arc(e, b) && r.order_cap >= 4) {
    res.path = VertexSeq{a, b, c, e};
    st.route = ConnectRoute::direct;
    return res;
  }

  if (usable.size() < p.fallback_below) {
    auto bf = bf_connect(d, ab, cd, r.order_cap, &usable,
                         SearchBudget{p.search_nodes, 60.0});
    if (bf.found()) {
      res.path = std::move(bf.value);
      st.route = ConnectRoute::exact_search;
      return res;
    }
    if (bf.status == SearchStatus::absent) {
      st.failure = "exact search: no reverse-square path of order <= " +
                   std::to_string(r.order_cap);
      return res;
    }
  }

  VertexSet avail = usable;
  for (Vertex v : {a, b, c, e}) avail.erase(v);
  CascadeScope out_scope{usable, true};
  out_scope.allowed->erase(c);
  out_scope.allowed->erase(e);
  CascadeScope in_scope{usable, true};
  in_scope.allowed->erase(a);
  in_scope.allowed->erase(b);

  for (bool stop_at_heavy : {true, false}) {
    out_scope.stop_at_heavy = stop_at_heavy;
    in_scope.stop_at_heavy = stop_at_heavy;
    Cascade oc = build_out_cascade(d, ab, p, out_scope);
    Cascade ic = build_in_cascade(d, cd, p, in_scope);
    if (stop_at_heavy) {
      st.out_heavy_level = oc.heavy_level();
      st.in_heavy_level = ic.heavy_level();
    } else if (oc.depth() <= st.out_depth && ic.depth() <= st.in_depth) {
      break;  // nothing new to search
    }
    st.out_depth = oc.depth();
    st.in_depth = ic.depth();
    Junction j(d, oc, ic, ab, cd, avail, p, r, st);
    if (auto path = j.search()) {
      res.path = std::move(path);
      return res;
    }
  }
  st.failure = "cascade junction not found (out depth " + std::to_string(st.out_depth) +
               ", in depth " + std::to_string(st.in_depth) + ", attempts " +
               std::to_string(st.junction_attempts) + ")";
  return res;
}

VertexSeq connect_avoiding(const Digraph& d, ArcPair ab, ArcPair cd,
                           const VertexSet& forbidden, const ConnectParams& p) {
  auto res = try_connect(d, ab, cd, forbidden, p);
  if (!res.path)
    throw ConnectionFailure("cannot connect " + std::to_string(ab.tail) + "->" +
                            std::to_string(ab.head) + " to " + std::to_string(cd.tail) +
                            "->" + std::to_string(cd.head) + ": " + res.stats.failure);
  return std::move(*res.path);
}

VertexSeq connect(const Digraph& d, ArcPair ab, ArcPair cd, const ConnectParams& p) {
  return connect_avoiding(d, ab, cd, VertexSet(d.order()), p);
}

}  // namespace rsham
