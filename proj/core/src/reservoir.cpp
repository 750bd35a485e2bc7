#include "rsham/reservoir.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "rsham/error.hpp"
#include "rsham/random.hpp"
#include "rsham/verify.hpp"

namespace rsham {

ReservoirCertificate check_reservoir(const Digraph& d, const VertexSet& r, double gamma) {
  ReservoirCertificate cert;
  cert.threshold = (2.0 / 3.0 + gamma / 2.0) * (static_cast<double>(r.size()) + 4.0);
  cert.worst_margin = std::numeric_limits<double>::infinity();
  for (Vertex x = 0; x < d.order(); ++x) {
    const auto lo = std::min(d.out(x).intersection_size(r), d.in(x).intersection_size(r));
    const double margin = static_cast<double>(lo) - cert.threshold;
    if (margin < cert.worst_margin) {
      cert.worst_margin = margin;
      cert.worst_vertex = x;
    }
  }
  cert.holds = cert.worst_margin >= 0.0;
  return cert;
}

namespace {

struct Draws {
  Reservoir best;
  bool certified = false;
};

Draws draw_reservoirs(const Digraph& d, const VertexSet& w, std::size_t size, double gamma,
                      std::uint64_t seed, std::size_t retries) {
  const std::size_t n = d.order();
  if (w.universe() != n) throw InvalidInput("reservoir: W has the wrong universe");
  if (!(gamma > 0.0)) throw InvalidInput("reservoir: gamma must be positive");
  std::vector<Vertex> pool = (d.all_vertices() - w).to_vector();
  if (size == 0 || size > pool.size())
    throw InvalidInput("reservoir: size must lie in [1, n - |W|]");

  Draws out;
  bool have = false;
  for (std::size_t attempt = 0; attempt <= retries; ++attempt) {
    Rng rng(Rng::derive(seed, attempt));
    std::vector<Vertex> order = pool;
    // Partial Fisher-Yates: the first `size` entries form a uniform subset.
    for (std::size_t i = 0; i < size; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(order.size() - i));
      std::swap(order[i], order[j]);
    }
    VertexSet r(n);
    for (std::size_t i = 0; i < size; ++i) r.insert(order[i]);
    auto cert = check_reservoir(d, r, gamma);
    if (!have || cert.worst_margin > out.best.certificate.worst_margin) {
      have = true;
      out.best.verts = r;
      out.best.certificate = cert;
    }
    out.best.draws = attempt + 1;
    if (cert.holds) {
      out.best.verts = std::move(r);
      out.best.certificate = cert;
      out.certified = true;
      break;
    }
  }
  out.best.used = VertexSet(n);
  out.best.gamma = gamma;
  out.best.certified = out.certified;
  out.best.used_budget = out.best.verts.size();
  return out;
}

}  // namespace

Reservoir sample_reservoir(const Digraph& d, const VertexSet& w, std::size_t size,
                           double gamma, std::uint64_t seed, std::size_t retries) {
  auto res = draw_reservoirs(d, w, size, gamma, seed, retries);
  if (!res.certified) {
    const auto& c = res.best.certificate;
    throw ReservoirFailure("reservoir: certificate failed in " + std::to_string(retries + 1) +
                               " draws; best worst-margin " + std::to_string(c.worst_margin) +
                               " at vertex " + std::to_string(c.worst_vertex) +
                               " (threshold " + std::to_string(c.threshold) + ")",
                           c.worst_margin);
  }
  return std::move(res.best);
}

Reservoir sample_reservoir_best_effort(const Digraph& d, const VertexSet& w,
                                       std::size_t size, double gamma, std::uint64_t seed,
                                       std::size_t retries) {
  return std::move(draw_reservoirs(d, w, size, gamma, seed, retries).best);
}

VertexSeq reservoir_connect(const Digraph& d, Reservoir& r, ArcPair ab, ArcPair cd,
                            const ConnectParams& p) {
  if (r.used.size() > r.used_budget)
    throw PreconditionError("reservoir_connect: used budget " + std::to_string(r.used_budget) +
                            " already exceeded");
  VertexSet allowed = r.verts - r.used;
  for (Vertex v : {ab.tail, ab.head, cd.tail, cd.head}) allowed.insert(v);
  ConnectParams cp = p;
  if (!cp.order_cap) {
    const auto cap16 = static_cast<std::size_t>(std::floor(16.0 / p.gamma + 1e-9));
    cp.order_cap = std::min(cap16, r.verts.size() + 4);
  }
  VertexSeq path = connect_avoiding(d, ab, cd, d.all_vertices() - allowed, cp);
  if (path.size() > 4 && r.used.size() + (path.size() - 4) > r.used_budget)
    throw PreconditionError("reservoir_connect: connector would exceed the used budget");
  for (std::size_t i = 2; i + 2 < path.size(); ++i) r.used.insert(path[i]);
  return path;
}

}  // namespace rsham
