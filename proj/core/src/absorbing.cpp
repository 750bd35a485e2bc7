#include "rsham/absorbing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>

#include "rsham/error.hpp"
#include "rsham/path_algebra.hpp"
#include "rsham/random.hpp"

namespace rsham {

std::vector<Quad> enumerate_absorbers(const Digraph& d, Vertex v, std::size_t limit) {
  if (d.order() < 5) throw InvalidInput("absorber enumeration needs n >= 5");
  if (v >= d.order()) throw InvalidInput("vertex out of range");
  std::vector<Quad> out;
  if (limit == 0) return out;
  const VertexSet& vin = d.in(v);
  const VertexSet& vout = d.out(v);
  for (auto b = vin.first(); b; b = vin.next(b)) {
    VertexSet cs = d.in(*b) & d.out(*b) & vout;
    for (auto c = cs.first(); c; c = cs.next(c)) {
      VertexSet as = d.in(*b) & d.out(*c) & vout;
      VertexSet ds = d.out(*c) & d.in(*b) & vin;
      for (auto a = as.first(); a; a = as.next(a)) {
        for (auto x = ds.first(); x; x = ds.next(x)) {
          if (*x == *a) continue;
          out.push_back({*a, *b, *c, *x});
          if (out.size() >= limit) return out;
        }
      }
    }
  }
  return out;
}

VertexSet absorbed_by(const Digraph& d, const Quad& t) {
  const auto [a, b, c, x] = t;
  VertexSet out(d.order());
  if (!d.has_arc(a, b) || !d.has_arc(b, c) || !d.has_arc(c, x) || !d.has_arc(c, a) ||
      !d.has_arc(x, b) || !d.has_arc(c, b))
    return out;
  out = d.out(b) & d.in(c) & d.in(a) & d.out(x);
  for (Vertex v : t) out.erase(v);
  return out;
}

FamilyParams::Resolved FamilyParams::resolve(std::size_t n) const {
  if (!(gamma > 0.0)) throw InvalidInput("family: gamma must be positive");
  const double nd = static_cast<double>(n);
  const double tuples = nd * (nd - 1) * (nd - 2) * (nd - 3);
  Resolved r{};
  if (paper_scale) {
    r.inclusion_prob = inclusion_prob.value_or(std::pow(gamma, 4) / std::pow(nd, 3));
    r.size_cap = size_cap.value_or(static_cast<std::size_t>(std::floor(2 * std::pow(gamma, 4) * nd)));
    // strictly more than gamma^7 n
    r.coverage_floor = coverage_floor.value_or(
        static_cast<std::size_t>(std::floor(std::pow(gamma, 7) * nd)) + 1);
  } else {
    const double target = std::max(1.0, std::ceil(family_fraction * nd));
    r.inclusion_prob = inclusion_prob.value_or(
        tuples > 0 ? std::min(1.0, draw_multiplier * target / tuples) : 0.0);
    r.size_cap = size_cap.value_or(static_cast<std::size_t>(target));
    r.coverage_floor = coverage_floor.value_or(std::max<std::size_t>(
        3, static_cast<std::size_t>(std::ceil(coverage_fraction * nd))));
  }
  if (!(r.inclusion_prob >= 0.0) || r.inclusion_prob > 1.0)
    throw InvalidInput("family: inclusion probability must lie in [0, 1]");
  return r;
}

std::vector<std::size_t> family_coverage(const Digraph& d, std::span<const Quad> members) {
  std::vector<std::size_t> cov(d.order(), 0);
  for (const auto& t : members) absorbed_by(d, t).for_each([&](Vertex v) { ++cov[v]; });
  return cov;
}

namespace {

// Ordered 4-tuple of distinct vertices with the given lexicographic rank.
Quad decode_tuple(std::uint64_t idx, std::uint64_t n) {
  std::array<std::uint64_t, 4> radix{(n - 1) * (n - 2) * (n - 3), (n - 2) * (n - 3), n - 3, 1};
  Quad t{};
  for (std::size_t i = 0; i < 4; ++i) {
    std::uint64_t digit = idx / radix[i];
    idx %= radix[i];
    // digit-th vertex not among t[0..i)
    std::array<Vertex, 3> taken{};
    for (std::size_t j = 0; j < i; ++j) taken[j] = t[j];
    std::sort(taken.begin(), taken.begin() + static_cast<std::ptrdiff_t>(i));
    std::uint64_t v = digit;
    for (std::size_t j = 0; j < i; ++j)
      if (taken[j] <= v) ++v;
    t[i] = static_cast<Vertex>(v);
  }
  return t;
}

std::vector<Quad> draw_tuples(std::size_t n, double q, Rng& rng) {
  std::vector<Quad> out;
  if (n < 4 || q <= 0.0) return out;
  const auto nn = static_cast<std::uint64_t>(n);
  const std::uint64_t total = nn * (nn - 1) * (nn - 2) * (nn - 3);
  if (q >= 1.0 || total <= 1'000'000) {
    for (std::uint64_t i = 0; i < total; ++i)
      if (rng.bernoulli(q)) out.push_back(decode_tuple(i, nn));
    return out;
  }
  // Geometric gaps between selected ranks.
  const double log_miss = std::log1p(-q);
  std::uint64_t idx = 0;
  while (true) {
    const double gap = std::floor(std::log1p(-rng.unit()) / log_miss);
    if (gap >= static_cast<double>(total - idx)) break;
    idx += static_cast<std::uint64_t>(gap);
    out.push_back(decode_tuple(idx, nn));
    if (++idx >= total) break;
  }
  return out;
}

std::size_t count_overlapping_pairs(std::size_t n, const std::vector<Quad>& tuples) {
  std::vector<std::vector<std::size_t>> by_vertex(n);
  for (std::size_t i = 0; i < tuples.size(); ++i)
    for (Vertex v : tuples[i]) by_vertex[v].push_back(i);
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& ids : by_vertex)
    for (std::size_t x = 0; x < ids.size(); ++x)
      for (std::size_t y = x + 1; y < ids.size(); ++y) pairs.insert({ids[x], ids[y]});
  return pairs.size();
}

}  // namespace

AbsorberFamily draw_family(const Digraph& d, const FamilyParams& p, std::uint64_t seed) {
  const std::size_t n = d.order();
  if (n < 5) throw InvalidInput("absorber family needs n >= 5");
  const auto r = p.resolve(n);
  Rng rng(seed);
  AbsorberFamily fam;
  fam.coverage_floor = r.coverage_floor;
  fam.stats.attempts = 1;
  std::vector<Quad> drawn = draw_tuples(n, r.inclusion_prob, rng);
  fam.stats.drawn = drawn.size();
  fam.stats.overlapping_pairs = count_overlapping_pairs(n, drawn);

  if (p.paper_scale) {
    std::vector<std::size_t> hits(n, 0);
    for (const auto& t : drawn)
      for (Vertex v : t) ++hits[v];
    for (const auto& t : drawn) {
      bool overlaps = std::any_of(t.begin(), t.end(), [&](Vertex v) { return hits[v] > 1; });
      if (overlaps) {
        ++fam.stats.dropped_overlaps;
      } else if (absorbed_by(d, t).empty()) {
        ++fam.stats.dropped_non_absorbers;
      } else {
        fam.members.push_back(t);
      }
    }
  } else {
    rng.shuffle(std::span<Quad>(drawn));
    VertexSet taken(n);
    for (const auto& t : drawn) {
      if (absorbed_by(d, t).empty()) {
        ++fam.stats.dropped_non_absorbers;
        continue;
      }
      if (std::any_of(t.begin(), t.end(), [&](Vertex v) { return taken.contains(v); }) ||
          fam.members.size() >= r.size_cap) {
        ++fam.stats.dropped_overlaps;
        continue;
      }
      for (Vertex v : t) taken.insert(v);
      fam.members.push_back(t);
    }
  }

  fam.coverage = family_coverage(d, fam.members);
  VertexSet inside(n);
  for (const auto& t : fam.members)
    for (Vertex v : t) inside.insert(v);
  fam.stats.min_coverage = std::numeric_limits<std::size_t>::max();
  for (Vertex v = 0; v < n; ++v) {
    if (inside.contains(v)) continue;
    if (fam.coverage[v] < fam.stats.min_coverage) {
      fam.stats.min_coverage = fam.coverage[v];
      fam.stats.min_coverage_vertex = v;
    }
  }
  if (fam.stats.min_coverage == std::numeric_limits<std::size_t>::max())
    fam.stats.min_coverage = 0;
  return fam;
}

AbsorberFamily sample_family(const Digraph& d, const FamilyParams& p, std::uint64_t seed,
                             std::size_t retries) {
  const auto r = p.resolve(d.order());
  std::optional<AbsorberFamily> best;
  for (std::size_t attempt = 0; attempt <= retries; ++attempt) {
    AbsorberFamily fam = draw_family(d, p, Rng::derive(seed, attempt));
    fam.stats.attempts = attempt + 1;
    const bool ok = !fam.members.empty() && fam.members.size() <= r.size_cap &&
                    fam.stats.min_coverage >= r.coverage_floor;
    if (ok) return fam;
    if (!best || fam.stats.min_coverage > best->stats.min_coverage) best = std::move(fam);
  }
  throw FamilyFailure("absorber family: coverage floor " + std::to_string(r.coverage_floor) +
                          " not met after " + std::to_string(retries + 1) +
                          " attempts; best minimum " +
                          std::to_string(best->stats.min_coverage) + " at vertex " +
                          std::to_string(best->stats.min_coverage_vertex) + " with " +
                          std::to_string(best->members.size()) + " members",
                      best->stats.min_coverage_vertex, best->stats.min_coverage);
}

std::vector<std::size_t> AbsorbingPath::free_absorbers(const Digraph& d, Vertex u) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (used[i]) continue;
    const auto& t = members[i];
    if (std::find(t.begin(), t.end(), u) != t.end()) continue;
    if (absorbed_by(d, t).contains(u)) out.push_back(i);
  }
  return out;
}

AbsorbingPath build_absorbing_path(const Digraph& d, const AbsorberFamily& f,
                                   const ConnectParams& p,
                                   std::optional<std::size_t> connector_cap) {
  if (f.members.empty()) throw PreconditionError("absorbing path needs a nonempty family");
  const std::size_t n = d.order();
  ConnectParams cp = p;
  cp.order_cap = connector_cap.value_or(
      std::min(static_cast<std::size_t>(std::floor(8.0 / p.gamma + 1e-9)), n));

  AbsorbingPath out;
  out.members = f.members;
  out.used.assign(f.members.size(), false);
  out.path.assign(f.members[0].begin(), f.members[0].end());
  if (!is_rs_path(d, out.path))
    throw ConstructionFailure("absorbing path: member 0 is not a reverse-square 4-path");

  for (std::size_t i = 1; i < f.members.size(); ++i) {
    VertexSet forbidden(n);
    for (Vertex v : out.path) forbidden.insert(v);
    for (std::size_t j = i; j < f.members.size(); ++j)
      for (Vertex v : f.members[j]) forbidden.insert(v);
    const ArcPair ab = last_end_arc(out.path);
    const Quad& next = f.members[i];
    const ArcPair cd{next[0], next[1]};
    auto res = try_connect(d, ab, cd, forbidden, cp);
    if (!res.path)
      throw ConstructionFailure("absorbing path: junction " + std::to_string(i) + " of " +
                                std::to_string(f.members.size() - 1) + " failed: " +
                                res.stats.failure);
    out.connector_orders.push_back(res.path->size());
    out.path = concat(concat(out.path, *res.path), next);
  }
  if (!is_rs_path(d, out.path))
    throw std::logic_error("absorbing path failed verification");
  return out;
}

std::optional<std::vector<std::size_t>> absorption_assignment(
    const Digraph& d, const AbsorbingPath& a, std::span<const Vertex> u_set,
    Vertex* unmatched) {
  const std::size_t m = a.members.size();
  std::vector<std::vector<std::size_t>> options;
  options.reserve(u_set.size());
  for (Vertex u : u_set) options.push_back(a.free_absorbers(d, u));

  // Kuhn's augmenting paths, vertices of U on the left.
  std::vector<std::ptrdiff_t> owner(m, -1);
  std::vector<std::size_t> match(u_set.size(), 0);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) {
    for (std::size_t mem : options[i]) {
      if (seen[mem]) continue;
      seen[mem] = 1;
      if (owner[mem] < 0 || augment(static_cast<std::size_t>(owner[mem]))) {
        owner[mem] = static_cast<std::ptrdiff_t>(i);
        match[i] = mem;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < u_set.size(); ++i) {
    seen.assign(m, 0);
    if (!augment(i)) {
      if (unmatched) *unmatched = u_set[i];
      return std::nullopt;
    }
  }
  return match;
}

AbsorbingPath absorb(const Digraph& d, const AbsorbingPath& a, std::span<const Vertex> u_set) {
  VertexSet on_path(d.order());
  for (Vertex v : a.path) on_path.insert(v);
  VertexSet seen(d.order());
  for (Vertex u : u_set) {
    if (u >= d.order()) throw InvalidInput("absorb: vertex out of range");
    if (on_path.contains(u))
      throw PreconditionError("absorb: vertex " + std::to_string(u) + " already on the path");
    if (seen.contains(u)) throw InvalidInput("absorb: vertex " + std::to_string(u) + " repeated");
    seen.insert(u);
  }
  Vertex bad = 0;
  auto assignment = absorption_assignment(d, a, u_set, &bad);
  if (!assignment)
    throw AbsorptionFailure("absorb: no free absorber left for vertex " + std::to_string(bad),
                            bad);

  AbsorbingPath out = a;
  // Insert after the second vertex of each assigned member.
  std::vector<std::ptrdiff_t> insert_after(d.order(), -1);
  for (std::size_t i = 0; i < u_set.size(); ++i) {
    const Quad& t = a.members[(*assignment)[i]];
    insert_after[t[1]] = static_cast<std::ptrdiff_t>(u_set[i]);
    out.used[(*assignment)[i]] = true;
  }
  VertexSeq spliced;
  spliced.reserve(a.path.size() + u_set.size());
  for (Vertex v : a.path) {
    spliced.push_back(v);
    if (insert_after[v] >= 0) spliced.push_back(static_cast<Vertex>(insert_after[v]));
  }
  out.path = std::move(spliced);
  if (!is_rs_path(d, out.path) || first_end_arc(out.path) != first_end_arc(a.path) ||
      last_end_arc(out.path) != last_end_arc(a.path))
    throw std::logic_error("absorb produced an invalid path");
  return out;
}

}  // namespace rsham
