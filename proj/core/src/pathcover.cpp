#include "rsham/pathcover.hpp"

#include <deque>
#include <string>

#include "rsham/error.hpp"
#include "rsham/path_algebra.hpp"
#include "rsham/random.hpp"
#include "rsham/verify.hpp"

namespace rsham {

namespace {

std::optional<Vertex> pick(const VertexSet& s, Rng& rng) {
  if (s.empty()) return std::nullopt;
  return s.nth(static_cast<std::size_t>(rng.below(s.size())));
}

// Extends p at both ends with vertices of `free`, removing them from it.
void extend(const Digraph& d, std::deque<Vertex>& p, VertexSet& free, Rng& rng) {
  while (p.size() >= 2) {
    VertexSet cand = d.out(p.back()) & d.in(p[p.size() - 2]) & free;
    auto w = pick(cand, rng);
    if (!w) break;
    p.push_back(*w);
    free.erase(*w);
  }
  while (p.size() >= 2) {
    VertexSet cand = d.in(p.front()) & d.out(p[1]) & free;
    auto w = pick(cand, rng);
    if (!w) break;
    p.push_front(*w);
    free.erase(*w);
  }
}

}  // namespace

CoverResult greedy_path_cover(const Digraph& d, std::size_t path_budget,
                              std::size_t leftover_budget, std::uint64_t seed,
                              const VertexSet* region, const ConnectParams& cp) {
  const std::size_t n = d.order();
  if (n < 4) throw InvalidInput("path cover needs n >= 4");
  const VertexSet pool = region ? *region : d.all_vertices();
  if (pool.universe() != n) throw InvalidInput("path cover: region has the wrong universe");

  Rng rng(seed);
  CoverResult res;
  res.leftover = VertexSet(n);
  VertexSet free = pool;
  std::vector<Vertex> starts = pool.to_vector();
  rng.shuffle(std::span<Vertex>(starts));

  std::vector<std::deque<Vertex>> grown;
  for (Vertex u : starts) {
    if (!free.contains(u)) continue;
    auto v = pick(d.out(u) & free, rng);
    if (!v) continue;
    std::deque<Vertex> p{u, *v};
    free.erase(u);
    free.erase(*v);
    extend(d, p, free, rng);
    grown.push_back(std::move(p));
  }
  res.grown = grown.size();

  // Short fragments and isolated starts join the leftover.
  res.leftover = free;
  std::vector<std::deque<Vertex>> kept;
  for (auto& p : grown) {
    if (p.size() >= 4) {
      kept.push_back(std::move(p));
    } else {
      ++res.dissolved;
      for (Vertex v : p) res.leftover.insert(v);
    }
  }
  for (auto& p : kept) extend(d, p, res.leftover, rng);
  for (auto& p : kept) res.paths.emplace_back(p.begin(), p.end());

  // Merge pairs through the leftover until within the path budget.
  bool progress = true;
  while (res.paths.size() > path_budget && progress) {
    progress = false;
    const VertexSet forbidden = d.all_vertices() - res.leftover;
    for (std::size_t i = 0; i < res.paths.size() && !progress; ++i) {
      for (std::size_t j = 0; j < res.paths.size() && !progress; ++j) {
        if (i == j) continue;
        auto out = try_connect(d, last_end_arc(res.paths[i]), first_end_arc(res.paths[j]),
                               forbidden, cp);
        if (!out.path) continue;
        VertexSeq merged = concat(concat(res.paths[i], *out.path), res.paths[j]);
        for (std::size_t k = 2; k + 2 < out.path->size(); ++k)
          res.leftover.erase((*out.path)[k]);
        const std::size_t hi = std::max(i, j), lo = std::min(i, j);
        res.paths.erase(res.paths.begin() + static_cast<std::ptrdiff_t>(hi));
        res.paths.erase(res.paths.begin() + static_cast<std::ptrdiff_t>(lo));
        res.paths.push_back(std::move(merged));
        ++res.merges;
        progress = true;
      }
    }
  }

  for (const auto& p : res.paths)
    if (!is_rs_path(d, p)) throw std::logic_error("path cover produced an invalid path");

  if (res.paths.size() > path_budget || res.leftover.size() > leftover_budget)
    throw CoverFailure("path cover: " + std::to_string(res.paths.size()) + " paths (budget " +
                           std::to_string(path_budget) + "), leftover " +
                           std::to_string(res.leftover.size()) + " (budget " +
                           std::to_string(leftover_budget) + ")",
                       res.paths.size(), res.leftover.size());
  return res;
}

}  // namespace rsham
