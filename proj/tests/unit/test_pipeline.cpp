#include <doctest.h>

#include "rsham/error.hpp"
#include "rsham/generators.hpp"
#include "rsham/oracle.hpp"
#include "rsham/path_algebra.hpp"
#include "rsham/pipeline.hpp"
#include "rsham/verify.hpp"

using namespace rsham;

TEST_CASE("complete digraph n=60") {
  Digraph k = complete_digraph(60);
  PipelineConfig cfg;
  cfg.seed = 3;
  auto r = find_rs_hamiltonian(k, cfg);
  REQUIRE(r.cycle.has_value());
  CHECK(validate_run(k, *r.cycle));
  CHECK(r.report.success);
  CHECK(r.report.cycle_order == 60);
  CHECK(r.report.cycle_verified);
  CHECK(r.report.vertex_set_complete);
}

TEST_CASE("random dense digraphs") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    Digraph d = gen_random_semidegree(120, 0.8, 100 + s);
    PipelineConfig cfg;
    cfg.seed = s;
    auto r = find_rs_hamiltonian(d, cfg);
    REQUIRE(r.cycle.has_value());
    CHECK(validate_run(d, *r.cycle));
    CHECK(r.report.reservoir_used <= r.report.reservoir_used_budget);
    CHECK(r.report.leftover_u <= r.report.absorbing_capacity);
    CHECK(triangles_from_cycle(d, *r.cycle).size() == 40);
  }
}

TEST_CASE("determinism") {
  Digraph d = gen_random_semidegree(90, 0.8, 5);
  PipelineConfig cfg;
  cfg.seed = 77;
  auto a = find_rs_hamiltonian(d, cfg);
  auto b = find_rs_hamiltonian(d, cfg);
  CHECK(a.cycle == b.cycle);
  CHECK(to_json(a.report, false) == to_json(b.report, false));
}

TEST_CASE("extremal digraphs yield a failure report") {
  PipelineConfig cfg;
  auto small = find_rs_hamiltonian(gen_extremal(2), cfg);
  CHECK_FALSE(small.cycle.has_value());
  CHECK(small.report.failure_stage == "precondition");
  CHECK(bf_rs_hamiltonian_cycle(gen_extremal(2)).status == SearchStatus::absent);

  cfg.global_retries = 1;
  Digraph e = gen_extremal(12);
  auto big = find_rs_hamiltonian(e, cfg);
  if (big.cycle) {
    CHECK(validate_run(e, *big.cycle));
  } else {
    CHECK_FALSE(big.report.failure_stage.empty());
    CHECK(big.report.failed_attempts.size() == 2);
  }
}

TEST_CASE("verbatim asymptotic constants fail honestly at small n") {
  Digraph d = gen_random_semidegree(60, 0.85, 1);
  PipelineConfig cfg;
  cfg.paper_scale = true;
  cfg.global_retries = 0;
  auto r = find_rs_hamiltonian(d, cfg);
  CHECK_FALSE(r.cycle.has_value());
  CHECK(r.report.failure_stage == "absorbing");
  CHECK(r.report.paper.at("reservoir_size") == 1.0);
}

TEST_CASE("configuration validation") {
  PipelineConfig cfg;
  cfg.gamma = 0.5;
  CHECK_THROWS_AS(find_rs_hamiltonian(complete_digraph(40), cfg), InvalidInput);
  cfg.gamma = 0.1;
  cfg.path_budget = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);
}

TEST_CASE("validate_run examples") {
  Digraph k = complete_digraph(9);
  VertexSeq c{0, 1, 2, 3, 4, 5, 6, 7, 8};
  CHECK(validate_run(k, c));
  CHECK_FALSE(validate_run(k, VertexSeq{0, 1, 2, 3, 4, 5, 6, 7}));
  CHECK_FALSE(validate_run(k, VertexSeq{0, 1, 2, 3, 4, 5, 6, 7, 7}));
  Digraph m = k;
  m.remove_arc(2, 0);  // a distance-two back arc of c
  CHECK_FALSE(validate_run(m, c));
}

TEST_CASE("report round trip") {
  Digraph d = gen_random_semidegree(60, 0.8, 9);
  PipelineConfig cfg;
  auto r = find_rs_hamiltonian(d, cfg);
  const std::string text = to_json(r.report);
  CHECK(to_json(run_report_from_json(text)) == text);
  CHECK(to_json(run_report_from_json(to_json(r.report, false)), false) == to_json(r.report, false));
  CHECK_THROWS_AS(run_report_from_json("{}"), ParseError);
  CHECK(text.find("\"version\": 1") != std::string::npos);
  CHECK(r.report.paper.count("reservoir_forbidden") == 1);
  CHECK(r.report.effective.count("reservoir_size") == 1);
}
