#include <doctest.h>

#include "../support/helpers.hpp"
#include "../support/properties.hpp"
#include "rsham/error.hpp"
#include "rsham/oracle.hpp"
#include "rsham/path_algebra.hpp"
#include "rsham/verify.hpp"

using namespace rsham;

TEST_CASE("end-arcs") {
  VertexSeq p{4, 2, 7, 1};
  CHECK(first_end_arc(p) == ArcPair{4, 2});
  CHECK(last_end_arc(p) == ArcPair{7, 1});
  VertexSeq two{3, 5};
  CHECK(first_end_arc(two) == last_end_arc(two));
  CHECK_THROWS_AS(first_end_arc(VertexSeq{1}), InvalidInput);
}

TEST_CASE("concat examples") {
  Digraph k = complete_digraph(6);
  // a b c d e f = 0 1 2 3 4 5
  CHECK(concat(VertexSeq{0, 1, 2, 3}, VertexSeq{2, 3, 4, 5}) == VertexSeq{0, 1, 2, 3, 4, 5});
  CHECK(is_rs_path(k, concat(VertexSeq{0, 1, 2, 3}, VertexSeq{2, 3, 4, 5})));
  CHECK_THROWS_AS(concat(VertexSeq{0, 1, 2, 3}, VertexSeq{2, 3, 1, 5}), PreconditionError);
  CHECK_THROWS_AS(concat(VertexSeq{0, 1, 2, 3}, VertexSeq{3, 2, 4, 5}), PreconditionError);
  CHECK(concat(VertexSeq{0, 1}, VertexSeq{0, 1}) == VertexSeq{0, 1});
}

TEST_CASE("concatenation closure property") {
  auto t = properties::concat_closure(300, 5);
  CHECK(t.cases == 300);
  CHECK(t.failures == 0);
}

TEST_CASE("triangles_from_cycle") {
  Digraph k9 = complete_digraph(9);
  VertexSeq c9{0, 1, 2, 3, 4, 5, 6, 7, 8};
  auto t = triangles_from_cycle(k9, c9);
  CHECK(t.size() == 3);
  VertexSet seen(9);
  for (const auto& tri : t) {
    CHECK(is_directed_triangle(k9, tri));
    for (auto v : tri) {
      CHECK_FALSE(seen.contains(v));
      seen.insert(v);
    }
  }
  Digraph k10 = complete_digraph(10);
  auto t10 = triangles_from_cycle(k10, VertexSeq{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(t10.size() == 3);

  Digraph sparse = testing_support::make(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK_THROWS_AS(triangles_from_cycle(sparse, VertexSeq{0, 1, 2, 3}), PreconditionError);
}

TEST_CASE("triangles of oracle cycles are directed triangles") {
  Rng rng(8);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = 6 + rng.below(4);
    Digraph d = gen_random_density(n, 0.85, rng.next());
    auto r = bf_rs_hamiltonian_cycle(d);
    if (!r.found()) continue;
    ++checked;
    auto tris = triangles_from_cycle(d, *r.value);
    CHECK(tris.size() == n / 3);
    for (const auto& tri : tris) CHECK(is_directed_triangle(d, tri));
  }
  CHECK(checked > 10);
}
