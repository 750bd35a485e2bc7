#include <doctest.h>

#include "rsham/error.hpp"
#include "rsham/generators.hpp"
#include "rsham/pathcover.hpp"
#include "rsham/random.hpp"
#include "rsham/verify.hpp"

using namespace rsham;

namespace {
void check_partition(const Digraph& d, const CoverResult& c, const VertexSet& region) {
  VertexSet seen(d.order());
  for (const auto& p : c.paths) {
    CHECK(p.size() >= 4);
    CHECK(is_rs_path(d, p));
    for (auto v : p) {
      CHECK_FALSE(seen.contains(v));
      seen.insert(v);
    }
  }
  CHECK_FALSE(seen.intersects(c.leftover));
  CHECK((seen | c.leftover) == region);
}
}  // namespace

TEST_CASE("complete digraph is covered by one path") {
  Digraph k = complete_digraph(30);
  auto c = greedy_path_cover(k, 1, 0, 5);
  CHECK(c.paths.size() == 1);
  CHECK(c.paths[0].size() == 30);
  check_partition(k, c, k.all_vertices());
}

TEST_CASE("arcless digraph leaves everything over") {
  Digraph e(12);
  auto c = greedy_path_cover(e, 1, 12, 5);
  CHECK(c.paths.empty());
  CHECK(c.leftover.size() == 12);
  try {
    greedy_path_cover(e, 1, 3, 5);
    FAIL("expected CoverFailure");
  } catch (const CoverFailure& f) {
    CHECK(f.paths == 0);
    CHECK(f.leftover == 12);
  }
  CHECK_THROWS_AS(greedy_path_cover(Digraph(3), 1, 3, 1), InvalidInput);
}

TEST_CASE("random dense digraphs meet the desk budgets") {
  Rng rng(10);
  for (int i = 0; i < 10; ++i) {
    Digraph d = gen_random_semidegree(300, 0.77, rng.next());
    auto c = greedy_path_cover(d, 10, 6, rng.next());
    CHECK(c.paths.size() <= 10);
    CHECK(c.leftover.size() <= 6);
    check_partition(d, c, d.all_vertices());
  }
}

TEST_CASE("cover is deterministic and respects the region") {
  Digraph d = gen_random_semidegree(120, 0.8, 2);
  VertexSet region = d.all_vertices();
  for (Vertex v = 0; v < 40; ++v) region.erase(v);
  auto a = greedy_path_cover(d, 5, 10, 7, &region);
  auto b = greedy_path_cover(d, 5, 10, 7, &region);
  CHECK(a.paths == b.paths);
  CHECK(a.leftover == b.leftover);
  check_partition(d, a, region);
}

TEST_CASE("merging reduces the path count") {
  // Two dense blocks joined by all arcs in both directions except a few,
  // with a tight path budget forcing connector merges.
  Digraph d = gen_random_semidegree(80, 0.6, 4);
  auto loose = greedy_path_cover(d, 1000, 80, 3);
  if (loose.paths.size() > 1) {
    auto tight = greedy_path_cover(d, 1, 80, 3);
    CHECK(tight.paths.size() == 1);
    CHECK(tight.merges >= 1);
    check_partition(d, tight, d.all_vertices());
  }
}
