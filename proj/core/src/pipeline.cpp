#include "rsham/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <json.hpp>
#include <string>

#include "rsham/error.hpp"
#include "rsham/path_algebra.hpp"
#include "rsham/pathcover.hpp"
#include "rsham/random.hpp"
#include "rsham/reservoir.hpp"
#include "rsham/verify.hpp"

namespace rsham {

using nlohmann::json;

void PipelineConfig::validate() const {
  if (!(gamma > 0.0) || gamma > 1.0 / 6.0)
    throw InvalidInput("pipeline: gamma must lie in (0, 1/6]");
  if (!(family_fraction > 0.0) || !(reservoir_fraction > 0.0) || !(draw_multiplier > 0.0))
    throw InvalidInput("pipeline: fractions must be positive");
  auto positive = [](const std::optional<std::size_t>& v, const char* name) {
    if (v && *v == 0) throw InvalidInput(std::string("pipeline: ") + name + " must be positive");
  };
  positive(coverage_floor, "coverage floor");
  positive(absorbing_connector_cap, "absorbing connector cap");
  positive(reservoir_used_budget, "reservoir used budget");
  positive(reservoir_connector_cap, "reservoir connector cap");
  positive(path_budget, "path budget");
  positive(leftover_budget, "leftover budget");
  if (reservoir_min == 0) throw InvalidInput("pipeline: reservoir minimum must be positive");
  (void)connect.resolve(64);
}

std::map<std::string, double> paper_constants(std::size_t n, double gamma) {
  const double nd = static_cast<double>(n);
  const double g = gamma;
  return {
      {"reservoir_size", std::ceil(std::pow(g, 7) * nd / 2.0)},
      {"absorbing_path_order", 20.0 * std::pow(g, 3) * nd},
      {"family_inclusion_prob", std::pow(g, 4) / std::pow(nd, 3)},
      {"family_size_cap", 2.0 * std::pow(g, 4) * nd},
      {"absorbing_capacity", std::pow(g, 7) * nd},
      {"absorbing_connector_order", 8.0 / g},
      {"reservoir_connector_order", 16.0 / g},
      {"reservoir_forbidden", std::pow(g, 8) * nd},
      {"cover_leftover", std::pow(g, 7) * nd / 2.0},
      {"cover_paths", std::pow(g, 10) * nd},
      {"connector_order", 4.0 / g},
  };
}

bool validate_run(const Digraph& d, const VertexSeq& c) {
  if (c.size() != d.order() || c.size() < 3) return false;
  VertexSet seen(d.order());
  for (Vertex v : c) {
    if (v >= d.order() || seen.contains(v)) return false;
    seen.insert(v);
  }
  return is_rs_cycle(d, c);
}

namespace {

struct StageError {
  std::string stage;
  std::string message;
};

struct Effective {
  FamilyParams family;
  std::size_t absorbing_connector_cap;
  std::size_t reservoir_size;
  std::size_t reservoir_used_budget;
  std::optional<std::size_t> reservoir_connector_cap;
  std::size_t path_budget;
  std::size_t leftover_budget;
};

Effective effective_params(const PipelineConfig& cfg, std::size_t n) {
  const auto paper = paper_constants(n, cfg.gamma);
  const double nd = static_cast<double>(n);
  Effective e;
  e.family.gamma = cfg.gamma;
  e.family.paper_scale = cfg.paper_scale;
  e.family.inclusion_prob = cfg.inclusion_prob;
  e.family.family_fraction = cfg.family_fraction;
  e.family.draw_multiplier = cfg.draw_multiplier;
  e.family.coverage_floor = cfg.coverage_floor;
  e.absorbing_connector_cap = cfg.absorbing_connector_cap.value_or(std::min<std::size_t>(
      static_cast<std::size_t>(std::floor(paper.at("absorbing_connector_order") + 1e-9)), n));
  e.reservoir_connector_cap = cfg.reservoir_connector_cap;
  if (cfg.paper_scale) {
    e.reservoir_size = static_cast<std::size_t>(paper.at("reservoir_size"));
    e.reservoir_used_budget = cfg.reservoir_used_budget.value_or(
        static_cast<std::size_t>(std::floor(paper.at("reservoir_forbidden"))));
    e.path_budget = cfg.path_budget.value_or(
        static_cast<std::size_t>(std::floor(paper.at("cover_paths"))));
    e.leftover_budget = cfg.leftover_budget.value_or(
        static_cast<std::size_t>(std::floor(paper.at("cover_leftover"))));
  } else {
    e.reservoir_size = std::max(cfg.reservoir_min, static_cast<std::size_t>(
                                                       std::ceil(cfg.reservoir_fraction * nd)));
    e.reservoir_used_budget = cfg.reservoir_used_budget.value_or(e.reservoir_size);
    e.path_budget = cfg.path_budget.value_or(
        std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(0.05 * nd))));
    e.leftover_budget = cfg.leftover_budget.value_or(e.family.resolve(n).size_cap);
  }
  return e;
}

class Timer {
 public:
  explicit Timer(std::vector<StageTiming>& out, std::string stage)
      : out_(out), stage_(std::move(stage)), start_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    std::chrono::duration<double> el = std::chrono::steady_clock::now() - start_;
    out_.push_back({stage_, el.count()});
  }
  Timer(const Timer&) = delete;
  Timer& operator=(const Timer&) = delete;

 private:
  std::vector<StageTiming>& out_;
  std::string stage_;
  std::chrono::steady_clock::time_point start_;
};

template <class F>
auto run_stage(const char* stage, RunReport& rep, F&& f) -> decltype(f()) {
  Timer t(rep.timings, stage);
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError{stage, e.what()};
  }
}

// One attempt of the six-step assembly; throws StageError on failure.
VertexSeq assemble(const Digraph& d, const PipelineConfig& cfg, const Effective& eff,
                   std::uint64_t seed, RunReport& rep) {
  const std::size_t n = d.order();
  ConnectParams cp = cfg.connect;
  cp.gamma = cfg.gamma;

  // (1) absorbing family and path
  AbsorbingPath pa = run_stage("absorbing", rep, [&] {
    AbsorberFamily fam = sample_family(d, eff.family, Rng::derive(seed, 1), cfg.family_retries);
    rep.family_size = fam.members.size();
    rep.family_drawn = fam.stats.drawn;
    rep.family_min_coverage = fam.stats.min_coverage;
    rep.family_coverage_floor = fam.coverage_floor;
    rep.family_attempts = fam.stats.attempts;
    AbsorbingPath p = build_absorbing_path(d, fam, cp, eff.absorbing_connector_cap);
    rep.absorbing_order = p.path.size();
    rep.absorbing_connector_orders = p.connector_orders;
    return p;
  });

  // (2) reservoir outside V(P_A)
  VertexSet w(n);
  for (Vertex v : pa.path) w.insert(v);
  Reservoir res = run_stage("reservoir", rep, [&] {
    if (eff.reservoir_size == 0 || eff.reservoir_size > n - w.size())
      throw PreconditionError("reservoir size " + std::to_string(eff.reservoir_size) +
                              " does not fit outside the absorbing path");
    const auto rseed = Rng::derive(seed, 2);
    Reservoir r = cfg.paper_scale
                      ? sample_reservoir(d, w, eff.reservoir_size, cfg.gamma, rseed,
                                         cfg.reservoir_retries)
                      : sample_reservoir_best_effort(d, w, eff.reservoir_size, cfg.gamma,
                                                     rseed, cfg.reservoir_retries);
    r.used_budget = eff.reservoir_used_budget;
    rep.reservoir_size = r.verts.size();
    rep.reservoir_draws = r.draws;
    rep.reservoir_certified = r.certified;
    rep.reservoir_threshold = r.certificate.threshold;
    rep.reservoir_worst_margin = r.certificate.worst_margin;
    rep.reservoir_used_budget = r.used_budget;
    return r;
  });

  // (3) cover D - (V(P_A) u R)
  CoverResult cover = run_stage("cover", rep, [&] {
    VertexSet region = d.all_vertices() - w - res.verts;
    if (region.size() < 4) {
      CoverResult c;
      c.leftover = region;
      return c;
    }
    CoverResult c = greedy_path_cover(d, eff.path_budget, eff.leftover_budget,
                                      Rng::derive(seed, 3), &region, cp);
    rep.cover_paths = c.paths.size();
    rep.cover_leftover = c.leftover.size();
    rep.cover_merges = c.merges;
    rep.cover_dissolved = c.dissolved;
    return c;
  });

  // (4) stitch P_1 ... P_p, then P_A last; (5) close through R
  VertexSeq cycle = run_stage("stitch", rep, [&] {
    std::vector<const VertexSeq*> order;
    for (const auto& p : cover.paths) order.push_back(&p);
    order.push_back(&pa.path);
    VertexSeq l = *order.front();
    for (std::size_t i = 1; i < order.size(); ++i) {
      VertexSeq q = reservoir_connect(d, res, last_end_arc(l), first_end_arc(*order[i]), cp);
      rep.connector_orders.push_back(q.size());
      l = concat(concat(l, q), *order[i]);
      if (!is_rs_path(d, l)) throw std::logic_error("stitched path failed verification");
    }
    VertexSeq q = reservoir_connect(d, res, last_end_arc(l), first_end_arc(l), cp);
    rep.connector_orders.push_back(q.size());
    rep.reservoir_used = res.used.size();
    VertexSeq c = l;
    c.insert(c.end(), q.begin() + 2, q.end() - 2);
    if (!is_rs_cycle(d, c)) throw std::logic_error("closed cycle failed verification");
    return c;
  });

  // (6) absorb U = T u (R - V(C)) into P_A and substitute it back
  return run_stage("absorb", rep, [&] {
    VertexSet on_cycle(n);
    for (Vertex v : cycle) on_cycle.insert(v);
    VertexSet u = cover.leftover | (res.verts - on_cycle);
    u -= on_cycle;
    std::vector<Vertex> uv = u.to_vector();
    rep.leftover_u = uv.size();
    rep.absorbing_capacity = pa.members.size();
    Vertex unmatched = 0;
    if (!absorption_assignment(d, pa, uv, &unmatched))
      throw StageError{"absorb", "capacity check failed: |U| = " + std::to_string(uv.size()) +
                                     ", " + std::to_string(pa.members.size()) +
                                     " absorbers, vertex " + std::to_string(unmatched) +
                                     " unmatched"};
    AbsorbingPath full = absorb(d, pa, uv);
    // P_A is the suffix of the stitched path, so it sits just before the
    // closing connector's interior.
    const std::size_t start = cycle.size() - (rep.connector_orders.back() - 4) - pa.path.size();
    VertexSeq out(cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(start));
    out.insert(out.end(), full.path.begin(), full.path.end());
    out.insert(out.end(), cycle.begin() + static_cast<std::ptrdiff_t>(start + pa.path.size()),
               cycle.end());
    return out;
  });
}

}  // namespace

PipelineResult find_rs_hamiltonian(const Digraph& d, const PipelineConfig& cfg) {
  cfg.validate();
  PipelineResult out;
  RunReport& rep = out.report;
  const std::size_t n = d.order();
  rep.n = n;
  rep.seed = cfg.seed;
  rep.gamma = cfg.gamma;
  rep.paper_scale = cfg.paper_scale;

  if (n < std::max<std::size_t>(cfg.min_order, 5)) {
    rep.failure_stage = "precondition";
    rep.failure_message = "digraph order " + std::to_string(n) + " is below the minimum " +
                          std::to_string(std::max<std::size_t>(cfg.min_order, 5));
    return out;
  }

  const Effective eff = effective_params(cfg, n);
  rep.paper = paper_constants(n, cfg.gamma);
  {
    const auto fr = eff.family.resolve(n);
    rep.effective = {
        {"family_inclusion_prob", fr.inclusion_prob},
        {"family_size_cap", static_cast<double>(fr.size_cap)},
        {"coverage_floor", static_cast<double>(fr.coverage_floor)},
        {"absorbing_connector_order", static_cast<double>(eff.absorbing_connector_cap)},
        {"reservoir_size", static_cast<double>(eff.reservoir_size)},
        {"reservoir_forbidden", static_cast<double>(eff.reservoir_used_budget)},
        {"reservoir_connector_order",
         static_cast<double>(eff.reservoir_connector_cap.value_or(std::min<std::size_t>(
             static_cast<std::size_t>(std::floor(16.0 / cfg.gamma + 1e-9)),
             eff.reservoir_size + 4)))},
        {"cover_paths", static_cast<double>(eff.path_budget)},
        {"cover_leftover", static_cast<double>(eff.leftover_budget)},
        {"global_retries", static_cast<double>(cfg.global_retries)},
    };
  }

  const RunReport base = rep;
  for (std::size_t attempt = 0; attempt <= cfg.global_retries; ++attempt) {
    RunReport trial = base;
    trial.failed_attempts = rep.failed_attempts;
    trial.attempts = attempt + 1;
    const std::uint64_t seed = attempt == 0 ? cfg.seed : Rng::derive(cfg.seed, attempt);
    try {
      VertexSeq c = assemble(d, cfg, eff, seed, trial);
      trial.cycle_order = c.size();
      trial.cycle_verified = is_rs_cycle(d, c);
      VertexSet seen(n);
      for (Vertex v : c) seen.insert(v);
      trial.vertex_set_complete = seen.size() == n && c.size() == n;
      if (!validate_run(d, c)) {
        throw StageError{"validate", "assembled cycle failed validation (order " +
                                         std::to_string(c.size()) + ")"};
      }
      trial.success = true;
      trial.failure_stage.clear();
      trial.failure_message.clear();
      rep = std::move(trial);
      out.cycle = std::move(c);
      return out;
    } catch (const StageError& e) {
      trial.failed_attempts.push_back({attempt, e.stage, e.message});
      trial.failure_stage = e.stage;
      trial.failure_message = e.message;
      rep = std::move(trial);
    }
  }
  return out;
}

std::string to_json(const RunReport& r, bool include_timings) {
  json j;
  j["format"] = "rsham-run-report";
  j["version"] = RunReport::schema_version;
  j["n"] = r.n;
  j["seed"] = r.seed;
  j["gamma"] = r.gamma;
  j["paper_scale"] = r.paper_scale;
  j["success"] = r.success;
  j["failure_stage"] = r.failure_stage;
  j["failure_message"] = r.failure_message;
  j["attempts"] = r.attempts;
  j["failed_attempts"] = json::array();
  for (const auto& f : r.failed_attempts)
    j["failed_attempts"].push_back(
        {{"attempt", f.attempt}, {"stage", f.stage}, {"message", f.message}});
  j["constants"] = {{"paper", r.paper}, {"effective", r.effective}};
  j["family"] = {{"size", r.family_size},
                 {"drawn", r.family_drawn},
                 {"min_coverage", r.family_min_coverage},
                 {"coverage_floor", r.family_coverage_floor},
                 {"attempts", r.family_attempts}};
  j["absorbing_path"] = {{"order", r.absorbing_order},
                         {"connector_orders", r.absorbing_connector_orders}};
  j["reservoir"] = {{"size", r.reservoir_size},
                    {"draws", r.reservoir_draws},
                    {"certified", r.reservoir_certified},
                    {"threshold", r.reservoir_threshold},
                    {"worst_margin", r.reservoir_worst_margin},
                    {"used", r.reservoir_used},
                    {"used_budget", r.reservoir_used_budget}};
  j["cover"] = {{"paths", r.cover_paths},
                {"leftover", r.cover_leftover},
                {"merges", r.cover_merges},
                {"dissolved", r.cover_dissolved}};
  j["connector_orders"] = r.connector_orders;
  j["absorption"] = {{"leftover_u", r.leftover_u}, {"capacity", r.absorbing_capacity}};
  j["cycle"] = {{"order", r.cycle_order},
                {"verified", r.cycle_verified},
                {"vertex_set_complete", r.vertex_set_complete}};
  if (include_timings) {
    j["timings"] = json::array();
    for (const auto& t : r.timings) j["timings"].push_back({{"stage", t.stage}, {"seconds", t.seconds}});
  }
  return j.dump(2);
}

RunReport run_report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.at("format") != "rsham-run-report") throw ParseError("not a run report");
    if (j.at("version").get<int>() != RunReport::schema_version)
      throw ParseError("unsupported run report version");
    RunReport r;
    r.n = j.at("n");
    r.seed = j.at("seed");
    r.gamma = j.at("gamma");
    r.paper_scale = j.at("paper_scale");
    r.success = j.at("success");
    r.failure_stage = j.at("failure_stage");
    r.failure_message = j.at("failure_message");
    r.attempts = j.at("attempts");
    for (const auto& f : j.at("failed_attempts"))
      r.failed_attempts.push_back({f.at("attempt"), f.at("stage"), f.at("message")});
    r.paper = j.at("constants").at("paper").get<std::map<std::string, double>>();
    r.effective = j.at("constants").at("effective").get<std::map<std::string, double>>();
    const auto& fam = j.at("family");
    r.family_size = fam.at("size");
    r.family_drawn = fam.at("drawn");
    r.family_min_coverage = fam.at("min_coverage");
    r.family_coverage_floor = fam.at("coverage_floor");
    r.family_attempts = fam.at("attempts");
    r.absorbing_order = j.at("absorbing_path").at("order");
    r.absorbing_connector_orders =
        j.at("absorbing_path").at("connector_orders").get<std::vector<std::size_t>>();
    const auto& res = j.at("reservoir");
    r.reservoir_size = res.at("size");
    r.reservoir_draws = res.at("draws");
    r.reservoir_certified = res.at("certified");
    r.reservoir_threshold = res.at("threshold");
    r.reservoir_worst_margin = res.at("worst_margin");
    r.reservoir_used = res.at("used");
    r.reservoir_used_budget = res.at("used_budget");
    const auto& cov = j.at("cover");
    r.cover_paths = cov.at("paths");
    r.cover_leftover = cov.at("leftover");
    r.cover_merges = cov.at("merges");
    r.cover_dissolved = cov.at("dissolved");
    r.connector_orders = j.at("connector_orders").get<std::vector<std::size_t>>();
    r.leftover_u = j.at("absorption").at("leftover_u");
    r.absorbing_capacity = j.at("absorption").at("capacity");
    r.cycle_order = j.at("cycle").at("order");
    r.cycle_verified = j.at("cycle").at("verified");
    r.vertex_set_complete = j.at("cycle").at("vertex_set_complete");
    if (j.contains("timings"))
      for (const auto& t : j.at("timings")) r.timings.push_back({t.at("stage"), t.at("seconds")});
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("run report: ") + e.what());
  }
}

}  // namespace rsham
