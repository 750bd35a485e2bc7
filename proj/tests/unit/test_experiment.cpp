#include <doctest.h>

#include <sstream>

#include "rsham/error.hpp"
#include "rsham/experiment.hpp"

using namespace rsham;

namespace {
std::string render(const ExperimentReport& r) {
  std::ostringstream os;
  write_report(os, r);
  return os.str();
}
}  // namespace

TEST_CASE("target names") {
  for (auto t : {ExperimentTarget::connect, ExperimentTarget::absorber_count,
                 ExperimentTarget::reservoir, ExperimentTarget::cover,
                 ExperimentTarget::pipeline})
    CHECK(parse_experiment_target(to_string(t)) == t);
  CHECK_THROWS_AS(parse_experiment_target("nope"), InvalidInput);
}

TEST_CASE("spec validation") {
  ExperimentSpec s;
  s.trials = 0;
  CHECK_THROWS_AS(s.validate(), InvalidInput);
  s.trials = 1;
  s.jobs = 0;
  CHECK_THROWS_AS(s.validate(), InvalidInput);
}

TEST_CASE("connect experiment rows and round trip") {
  ExperimentSpec s;
  s.n = 80;
  s.trials = 3;
  s.pairs = 4;
  auto r = run_experiment(s);
  CHECK(r.rows.size() == 12);
  REQUIRE(r.aggregate("success_rate").has_value());
  CHECK(*r.aggregate("success_rate") == "1");

  const std::string text = render(r);
  CHECK(text.rfind("#rsham-experiment v1", 0) == 0);
  std::istringstream is(text);
  auto back = read_report(is);
  CHECK(back.columns == r.columns);
  CHECK(back.rows == r.rows);
  CHECK(render(back) == text);

  std::istringstream bad("not a report\n");
  CHECK_THROWS_AS(read_report(bad), ParseError);
}

TEST_CASE("rows do not depend on the job count") {
  ExperimentSpec s;
  s.target = ExperimentTarget::cover;
  s.n = 100;
  s.trials = 4;
  auto one = run_experiment(s);
  s.jobs = 3;
  auto three = run_experiment(s);
  CHECK(one.rows == three.rows);
}

TEST_CASE("absorber counts on small dense digraphs") {
  ExperimentSpec s;
  s.target = ExperimentTarget::absorber_count;
  s.n = 30;
  s.delta = 22.0 / 30.0;
  s.gamma = 0.05;
  s.trials = 3;
  auto r = run_experiment(s);
  REQUIRE(r.rows.size() == 3);
  CHECK(*r.aggregate("pass_rate") == "1");
}

TEST_CASE("reservoir and pipeline targets") {
  ExperimentSpec s;
  s.target = ExperimentTarget::reservoir;
  s.n = 100;
  s.trials = 2;
  auto r = run_experiment(s);
  CHECK(r.rows.size() == 2);
  s.target = ExperimentTarget::pipeline;
  s.n = 60;
  s.delta = 0.8;
  auto p = run_experiment(s);
  CHECK(p.rows.size() == 2);
  CHECK(*p.aggregate("success_rate") == "1");
}
