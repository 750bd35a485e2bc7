#include <doctest.h>

#include <sstream>

#include "../support/helpers.hpp"
#include "../support/naive.hpp"
#include "rsham/error.hpp"
#include "rsham/generators.hpp"
#include "rsham/graph_io.hpp"

using namespace rsham;
using testing_support::make;

TEST_CASE("vertex set basics") {
  VertexSet s(130, {0, 63, 64, 129});
  CHECK(s.size() == 4);
  CHECK(s.contains(63));
  CHECK_FALSE(s.contains(62));
  CHECK_FALSE(s.contains(500));
  CHECK(s.first() == 0u);
  CHECK(s.next(0) == 63u);
  CHECK(s.next(64) == 129u);
  CHECK_FALSE(s.next(129).has_value());
  CHECK(s.nth(2) == 64u);
  CHECK(s.to_vector() == std::vector<Vertex>{0, 63, 64, 129});
  VertexSet t(130, {63, 100});
  CHECK((s & t).to_vector() == std::vector<Vertex>{63});
  CHECK((s | t).size() == 5);
  CHECK((s - t).size() == 3);
  CHECK(s.intersection_size(t) == 1);
  CHECK(VertexSet::full(130).size() == 130);
  s.erase(63);
  CHECK_FALSE(s.intersects(t));
}

TEST_CASE("digraph invariants") {
  Digraph d(4);
  CHECK(d.add_arc(0, 1));
  CHECK_FALSE(d.add_arc(0, 1));
  CHECK_THROWS_AS(d.add_arc(2, 2), InvalidInput);
  CHECK_THROWS_AS(d.add_arc(0, 4), InvalidInput);
  CHECK(d.arc_count() == 1);
  CHECK(d.in(1).contains(0));
  CHECK(d.remove_arc(0, 1));
  CHECK(d.arc_count() == 0);
  std::vector<ArcPair> dup{{0, 1}, {0, 1}};
  CHECK_THROWS_AS(Digraph::from_arcs(3, dup), InvalidInput);
}

TEST_CASE("reversal and relabeling") {
  Digraph d = make(3, {{0, 1}, {1, 2}});
  Digraph r = d.reversed();
  CHECK(r.has_arc(1, 0));
  CHECK(r.has_arc(2, 1));
  CHECK(r.arc_count() == 2);
  std::vector<Vertex> perm{2, 0, 1};
  Digraph p = d.relabeled(perm);
  CHECK(p.has_arc(2, 0));
  CHECK(p.has_arc(0, 1));
  CHECK(r.reversed() == d);
}

TEST_CASE("min_semi_degree examples") {
  CHECK(min_semi_degree(complete_digraph(3)) == 2);
  CHECK(min_semi_degree(gen_extremal(2)) == 3);
  CHECK(min_semi_degree(make(2, {{0, 1}})) == 0);
  CHECK_THROWS_AS(min_semi_degree(Digraph(0)), InvalidInput);
}

TEST_CASE("min_semi_degree agrees with the naive count") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Digraph d = gen_random_density(12, 0.6, seed);
    CHECK(min_semi_degree(d) == naive::min_semi_degree(naive::arcs_of(d), 12));
  }
}

TEST_CASE("gen_extremal matches the construction") {
  Digraph d = gen_extremal(2);
  CHECK(d.order() == 6);
  CHECK(d.arc_count() == 24);
  // X = {0,1,2} complete, Y = {3,4,5} independent, X <-> Y complete
  for (Vertex x = 0; x < 3; ++x) {
    CHECK(d.out_degree(x) == 5);
    for (Vertex y = 3; y < 6; ++y) CHECK((d.has_arc(x, y) && d.has_arc(y, x)));
  }
  for (Vertex y = 3; y < 6; ++y) CHECK(d.out_degree(y) == 3);
  for (std::size_t k = 1; k <= 10; ++k) {
    Digraph e = gen_extremal(k);
    CHECK(e.order() == 3 * k);
    CHECK(min_semi_degree(e) == 2 * k - 1);
  }
  CHECK_THROWS_AS(gen_extremal(0), InvalidInput);
}

TEST_CASE("gen_random_semidegree postconditions") {
  Digraph d = gen_random_semidegree(30, 0.8, 1);
  CHECK(min_semi_degree(d) >= 24);
  CHECK(gen_random_semidegree(30, 0.8, 1) == d);
  CHECK_FALSE(gen_random_semidegree(30, 0.8, 2) == d);
  CHECK(gen_random_semidegree(3, 1.0, 9) == complete_digraph(3));
  CHECK(gen_random_semidegree(12, 1.0, 4) == complete_digraph(12));
  CHECK_THROWS_AS(gen_random_semidegree(3, 0.9, 9), Infeasible);
  CHECK(gen_random_semidegree(3, 2.0 / 3.0, 9) == complete_digraph(3));
  CHECK_THROWS_AS(gen_random_semidegree(30, 0.99, 1), Infeasible);
  CHECK_THROWS_AS(gen_random_semidegree(2, 0.5, 1), InvalidInput);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 20 + seed * 7;
    Digraph g = gen_random_semidegree(n, 0.77, seed);
    CHECK(min_semi_degree(g) >= required_semi_degree(n, 0.77));
  }
}

TEST_CASE("edge-list round trip") {
  Digraph d = gen_random_semidegree(25, 0.7, 5);
  std::stringstream ss;
  write_edge_list(ss, d);
  CHECK(read_edge_list(ss) == d);
  std::stringstream again;
  write_edge_list(again, d);
  std::stringstream first;
  write_edge_list(first, d);
  CHECK(again.str() == first.str());
}

TEST_CASE("edge-list parse errors") {
  auto parse = [](const std::string& s) {
    std::istringstream is(s);
    return read_edge_list(is);
  };
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("3 2\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse("3 1\n0 3\n"), ParseError);
  CHECK_THROWS_AS(parse("3 1\n1 1\n"), ParseError);
  CHECK_THROWS_AS(parse("3 2\n0 1\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse("3 1\n0 1\n7\n"), ParseError);
  CHECK(parse("3 1\n0 1\n").has_arc(0, 1));
}

TEST_CASE("structured graph format round trip") {
  Digraph d = gen_extremal(3);
  GraphMeta meta{"extremal", std::uint64_t{7}, "k=3"};
  const std::string text = to_graph_json(d, meta);
  GraphDocument doc = from_graph_json(text);
  CHECK(doc.graph == d);
  CHECK(doc.meta == meta);
  CHECK(to_graph_json(doc.graph, doc.meta) == text);
  CHECK_THROWS_AS(from_graph_json("{\"format\": \"other\"}"), ParseError);
  CHECK_THROWS_AS(from_graph_json("not json"), ParseError);
}
