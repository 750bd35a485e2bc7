#include <doctest.h>

#include "../support/helpers.hpp"
#include "../support/naive.hpp"
#include "rsham/error.hpp"
#include "rsham/generators.hpp"
#include "rsham/oracle.hpp"
#include "rsham/verify.hpp"

using namespace rsham;
using testing_support::make;

TEST_CASE("hamiltonian oracle examples") {
  Digraph tri = make(3, {{0, 1}, {1, 2}, {2, 0}});
  auto r = bf_rs_hamiltonian_cycle(tri);
  REQUIRE(r.found());
  CHECK(*r.value == VertexSeq{0, 1, 2});

  auto ex = bf_rs_hamiltonian_cycle(gen_extremal(2));
  CHECK(ex.status == SearchStatus::absent);

  auto k8 = bf_rs_hamiltonian_cycle(complete_digraph(8));
  REQUIRE(k8.found());
  CHECK(is_rs_cycle(complete_digraph(8), *k8.value));

  CHECK_THROWS_AS(bf_rs_hamiltonian_cycle(complete_digraph(2)), InvalidInput);
  CHECK_THROWS_AS(bf_rs_hamiltonian_cycle(tri, SearchBudget{0, 1.0}), InvalidInput);
}

TEST_CASE("budget exhaustion is reported distinctly") {
  Digraph d = gen_random_density(12, 0.5, 4);
  auto r = bf_rs_hamiltonian_cycle(d, SearchBudget{3, 10.0});
  CHECK(r.status == SearchStatus::budget_exhausted);
  CHECK_FALSE(r.value.has_value());
}

TEST_CASE("hamiltonian oracle agrees with permutation enumeration") {
  Rng rng(21);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = 3 + rng.below(5);
    Digraph d = gen_random_density(n, 0.55 + 0.4 * rng.unit(), rng.next());
    auto r = bf_rs_hamiltonian_cycle(d);
    const bool truth = naive::has_rs_hamiltonian_cycle(naive::arcs_of(d), static_cast<unsigned>(n));
    CHECK(r.found() == truth);
    if (r.found()) CHECK(is_rs_cycle(d, *r.value));
  }
}

TEST_CASE("absence is invariant under relabeling") {
  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = 5 + rng.below(3);
    Digraph d = gen_random_density(n, 0.7, rng.next());
    auto perm = testing_support::random_permutation(n, rng);
    CHECK(bf_rs_hamiltonian_cycle(d).found() ==
          bf_rs_hamiltonian_cycle(d.relabeled(perm)).found());
  }
}

TEST_CASE("absorber count examples") {
  // complete digraph on m + 1 vertices: m(m-1)(m-2)(m-3)
  for (std::size_t m = 4; m <= 7; ++m)
    CHECK(bf_count_absorbers(complete_digraph(m + 1), 0) == m * (m - 1) * (m - 2) * (m - 3));
  Digraph ten = make(5, {{0, 1}, {1, 2}, {2, 3}, {2, 0}, {3, 1},
                         {1, 4}, {4, 2}, {4, 0}, {2, 1}, {3, 4}});
  // Regression fixture; the naive enumeration below confirms it.
  CHECK(bf_count_absorbers(ten, 4) == 1);
  CHECK(naive::count_absorbers(naive::arcs_of(ten), 5, 4) == 1);
  CHECK_THROWS_AS(bf_count_absorbers(complete_digraph(4), 0), InvalidInput);
}

TEST_CASE("absorber count double implementation") {
  Rng rng(13);
  for (int i = 0; i < 25; ++i) {
    const std::size_t n = 5 + rng.below(5);
    Digraph d = gen_random_density(n, 0.6 + 0.35 * rng.unit(), rng.next());
    const auto arcs = naive::arcs_of(d);
    for (Vertex v = 0; v < n; ++v)
      CHECK(bf_count_absorbers(d, v) == naive::count_absorbers(arcs, static_cast<unsigned>(n), v));
  }
}

TEST_CASE("bf_connect examples") {
  Digraph k = complete_digraph(8);
  auto r = bf_connect(k, {0, 1}, {2, 3}, 10);
  REQUIRE(r.found());
  CHECK(*r.value == VertexSeq{0, 1, 2, 3});

  // Nothing leaves {a, b} except b -> a.
  Digraph trap = make(6, {{0, 1}, {1, 0}, {2, 3}, {3, 4}, {4, 2}, {5, 0}, {2, 5}});
  auto none = bf_connect(trap, {0, 1}, {2, 3}, 6);
  CHECK(none.status == SearchStatus::absent);

  CHECK_THROWS_AS(bf_connect(trap, {1, 2}, {2, 3}, 6), PreconditionError);
  CHECK_THROWS_AS(bf_connect(k, {0, 1}, {1, 2}, 6), PreconditionError);
}

TEST_CASE("bf_connect returns shortest verified paths") {
  Rng rng(17);
  int found = 0;
  for (int i = 0; i < 40; ++i) {
    Digraph d = gen_random_density(20, 0.45, rng.next());
    auto arcs = d.arcs();
    ArcPair ab = arcs[rng.below(arcs.size())];
    ArcPair cd = arcs[rng.below(arcs.size())];
    if (cd.tail == ab.tail || cd.tail == ab.head || cd.head == ab.tail || cd.head == ab.head)
      continue;
    auto r = bf_connect(d, ab, cd, 8);
    if (!r.found()) continue;
    ++found;
    CHECK(is_rs_path(d, *r.value));
    CHECK(first_end_arc(*r.value) == ab);
    CHECK(last_end_arc(*r.value) == cd);
    if (r.value->size() > 4) {
      auto shorter = bf_connect(d, ab, cd, r.value->size() - 1);
      CHECK(shorter.status == SearchStatus::absent);
    }
  }
  CHECK(found > 5);
}

TEST_CASE("disjoint triangles") {
  CHECK(bf_disjoint_triangles(gen_extremal(2), 2).status == SearchStatus::absent);
  CHECK(bf_disjoint_triangles(gen_extremal(3), 3).status == SearchStatus::absent);
  auto one = bf_disjoint_triangles(gen_extremal(2), 1);
  REQUIRE(one.found());
  CHECK(is_directed_triangle(gen_extremal(2), one.value->front()));
  auto k9 = bf_disjoint_triangles(complete_digraph(9), 3);
  REQUIRE(k9.found());
  CHECK(k9.value->size() == 3);
  CHECK_THROWS_AS(bf_disjoint_triangles(complete_digraph(5), 2), InvalidInput);
}
