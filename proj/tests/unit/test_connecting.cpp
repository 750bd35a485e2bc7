#include <doctest.h>

#include "../support/helpers.hpp"
#include "rsham/connecting.hpp"
#include "rsham/error.hpp"
#include "rsham/generators.hpp"
#include "rsham/oracle.hpp"
#include "rsham/path_algebra.hpp"
#include "rsham/verify.hpp"

using namespace rsham;
using testing_support::make;

TEST_CASE("resolved defaults") {
  ConnectParams p;
  auto r = p.resolve(200);
  CHECK(r.level_cap == 11);
  CHECK(r.order_cap == 40);
  CHECK(r.prune_threshold == doctest::Approx(std::sqrt(200.0)));
  CHECK(r.witness_threshold == doctest::Approx(std::pow(200.0, 0.25)));
  CHECK(p.resolve(30).order_cap == 30);
  p.gamma = 0.2;
  CHECK_THROWS_AS(p.resolve(10), InvalidInput);
  p.gamma = 0.0;
  CHECK_THROWS_AS(p.resolve(10), InvalidInput);
}

TEST_CASE("out-cascade on the complete digraph") {
  const std::size_t n = 12;
  Digraph k = complete_digraph(n);
  ConnectParams p;
  Cascade c = build_out_cascade(k, {3, 5}, p);
  REQUIRE(c.depth() >= 1);
  VertexSet expect = k.all_vertices();
  expect.erase(3);
  expect.erase(5);
  CHECK(c.levels()[1].members == expect);
  // Each level-1 vertex has the single link predecessor b, so the first
  // heavy vertex is at level 2 and is the smallest identifier there.
  auto h = find_heavy(c, n, p.gamma);
  REQUIRE(h.has_value());
  CHECK(h->level == 2);
  CHECK(h->vertex == 0);
  CHECK(c.heavy_level() == 2u);
}

TEST_CASE("dead-end cascade") {
  // a = 0 has in-neighbour b = 1 only.
  Digraph d = make(5, {{0, 1}, {1, 0}, {1, 2}, {2, 3}, {3, 1}, {0, 4}, {4, 2}});
  ConnectParams p;
  Cascade c = build_out_cascade(d, {0, 1}, p);
  CHECK(c.dead_end());
  CHECK(c.depth() == 0);
  CHECK_FALSE(find_heavy(c, 5, p.gamma).has_value());
  CHECK_THROWS_AS(build_out_cascade(d, {2, 0}, p), PreconditionError);
}

TEST_CASE("in-cascade is the out-cascade of the reversed digraph") {
  Rng rng(9);
  for (int i = 0; i < 10; ++i) {
    Digraph d = gen_random_semidegree(60, 0.77, rng.next());
    ArcPair cd{0, d.out(0).first().value()};
    ConnectParams p;
    Cascade in = build_in_cascade(d, cd, p);
    Cascade out = build_out_cascade(d.reversed(), {cd.head, cd.tail}, p);
    REQUIRE(in.levels().size() == out.levels().size());
    for (std::size_t j = 0; j < in.levels().size(); ++j) {
      CHECK(in.levels()[j].members == out.levels()[j].members);
      CHECK(in.levels()[j].link_count == out.levels()[j].link_count);
    }
    CHECK(in.heavy_level() == out.heavy_level());
  }
}

TEST_CASE("level-1 size bound") {
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 40 + rng.below(60);
    Digraph d = gen_random_semidegree(n, 0.7, rng.next());
    const auto delta = min_semi_degree(d);
    const Vertex a = static_cast<Vertex>(rng.below(n));
    ArcPair ab{a, d.out(a).nth(rng.below(d.out(a).size()))};
    Cascade c = build_out_cascade(d, ab, ConnectParams{});
    REQUIRE(c.depth() >= 1);
    CHECK(static_cast<long>(c.levels()[1].members.size()) >= 2 * static_cast<long>(delta) - static_cast<long>(n));
  }
}

TEST_CASE("cascade witness soundness") {
  Rng rng(31);
  for (int i = 0; i < 6; ++i) {
    const std::size_t n = 24 + rng.below(7);
    Digraph d = gen_random_semidegree(n, 0.77, rng.next());
    ConnectParams p;
    p.prune_threshold = 1.0;
    p.witness_threshold = 1.0;
    const Vertex a = static_cast<Vertex>(rng.below(n));
    ArcPair ab{a, d.out(a).nth(rng.below(d.out(a).size()))};
    for (auto dir : {CascadeDirection::out, CascadeDirection::in}) {
      CascadeScope scope;
      scope.stop_at_heavy = false;
      Cascade c = dir == CascadeDirection::out ? build_out_cascade(d, ab, p, scope)
                                               : build_in_cascade(d, ab, p, scope);
      for (std::size_t j = 1; j < c.levels().size(); ++j) {
        c.levels()[j].members.for_each([&](Vertex y) {
          bool traced = false;
          c.levels()[j].preds[y].for_each([&](Vertex x) {
            auto path = c.trace(j, x, y, VertexSet(n));
            if (!path) return;
            traced = true;
            CHECK(path->size() == j + 2);
            CHECK(is_rs_path(d, *path));
            if (dir == CascadeDirection::out) {
              CHECK(first_end_arc(*path) == ab);
              CHECK(last_end_arc(*path) == ArcPair{x, y});
            } else {
              CHECK(last_end_arc(*path) == ab);
              CHECK(first_end_arc(*path) == ArcPair{y, x});
            }
          });
          CHECK(traced);
        });
      }
    }
  }
}

TEST_CASE("connect examples") {
  Digraph k = complete_digraph(50);
  ConnectParams p;
  CHECK(connect(k, {0, 1}, {2, 3}, p) == VertexSeq{0, 1, 2, 3});
  VertexSet forbid = k.all_vertices();
  CHECK(connect_avoiding(k, {0, 1}, {2, 3}, forbid, p) == VertexSeq{0, 1, 2, 3});
  CHECK_THROWS_AS(connect(k, {0, 1}, {1, 3}, p), PreconditionError);

  Digraph d = k;
  d.remove_arc(2, 0);  // direct abcd impossible
  CHECK_THROWS_AS(connect_avoiding(d, {0, 1}, {2, 3}, forbid, p), ConnectionFailure);
  auto path = connect(d, {0, 1}, {2, 3}, p);
  CHECK(is_rs_path(d, path));
  // the cascade route need not be shortest; the exact search finds order 5
  CHECK(path.size() >= 5);
  CHECK(path.size() <= p.resolve(50).order_cap);
  auto exact = bf_connect(d, {0, 1}, {2, 3}, 5);
  REQUIRE(exact.found());
  CHECK(exact.value->size() == 5);
}

TEST_CASE("connect on random dense digraphs") {
  Rng rng(77);
  ConnectParams p;
  int done = 0;
  for (int g = 0; g < 5; ++g) {
    Digraph d = gen_random_semidegree(200, 0.77, rng.next());
    for (int i = 0; i < 20; ++i) {
      const Vertex a = static_cast<Vertex>(rng.below(200));
      ArcPair ab{a, d.out(a).nth(rng.below(d.out(a).size()))};
      Vertex c = static_cast<Vertex>(rng.below(200));
      if (c == ab.tail || c == ab.head) continue;
      VertexSet outs = d.out(c);
      outs.erase(ab.tail);
      outs.erase(ab.head);
      ArcPair cd{c, outs.nth(rng.below(outs.size()))};
      auto res = try_connect(d, ab, cd, VertexSet(200), p);
      REQUIRE(res.path.has_value());
      CHECK(is_rs_path(d, *res.path));
      CHECK(first_end_arc(*res.path) == ab);
      CHECK(last_end_arc(*res.path) == cd);
      CHECK(res.path->size() <= 40);
      CHECK(try_connect(d, ab, cd, VertexSet(200), p).path == res.path);
      ++done;
    }
  }
  CHECK(done > 80);
}

TEST_CASE("connect_avoiding respects the forbidden set") {
  Rng rng(5);
  ConnectParams p;
  for (int i = 0; i < 30; ++i) {
    Digraph d = gen_random_semidegree(120, 0.77, rng.next());
    VertexSet forbidden(120);
    for (int k = 0; k < 20; ++k) forbidden.insert(static_cast<Vertex>(rng.below(120)));
    const Vertex a = 0, c = 1;
    VertexSet oa = d.out(a) - VertexSet(120, {1});
    VertexSet oc = d.out(c) - VertexSet(120, {0});
    ArcPair ab{a, oa.nth(rng.below(oa.size()))};
    oc.erase(ab.head);
    ArcPair cd{c, oc.nth(rng.below(oc.size()))};
    auto res = try_connect(d, ab, cd, forbidden, p);
    REQUIRE(res.path.has_value());
    CHECK(is_rs_path(d, *res.path));
    for (std::size_t k = 2; k + 2 < res.path->size(); ++k)
      CHECK_FALSE(forbidden.contains((*res.path)[k]));
  }
}

TEST_CASE("small instances use the exact search") {
  Digraph d = gen_random_semidegree(25, 0.75, 3);
  Digraph e = d;
  // make abcd impossible so the router has to search
  e.remove_arc(2, 0);
  e.add_arc(0, 1);
  e.add_arc(2, 3);
  auto res = try_connect(e, {0, 1}, {2, 3}, VertexSet(25), ConnectParams{});
  REQUIRE(res.path.has_value());
  CHECK(res.stats.route == ConnectRoute::exact_search);
  CHECK(is_rs_path(e, *res.path));
}
