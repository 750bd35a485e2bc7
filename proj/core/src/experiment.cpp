#include "rsham/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "rsham/error.hpp"
#include "rsham/generators.hpp"
#include "rsham/oracle.hpp"
#include "rsham/pathcover.hpp"
#include "rsham/random.hpp"
#include "rsham/reservoir.hpp"
#include "rsham/verify.hpp"

namespace rsham {

const char* to_string(ExperimentTarget t) {
  switch (t) {
    case ExperimentTarget::connect:
      return "connect";
    case ExperimentTarget::absorber_count:
      return "absorber-count";
    case ExperimentTarget::reservoir:
      return "reservoir";
    case ExperimentTarget::cover:
      return "cover";
    case ExperimentTarget::pipeline:
      return "pipeline";
  }
  return "unknown";
}

ExperimentTarget parse_experiment_target(const std::string& s) {
  for (auto t : {ExperimentTarget::connect, ExperimentTarget::absorber_count,
                 ExperimentTarget::reservoir, ExperimentTarget::cover,
                 ExperimentTarget::pipeline})
    if (s == to_string(t)) return t;
  throw InvalidInput("unknown experiment target '" + s + "'");
}

void ExperimentSpec::validate() const {
  if (trials == 0) throw InvalidInput("experiment: trial count must be at least 1");
  if (jobs == 0) throw InvalidInput("experiment: jobs must be at least 1");
  if (pairs == 0) throw InvalidInput("experiment: pairs must be at least 1");
  if (!extremal_k && n < 5) throw InvalidInput("experiment: n must be at least 5");
  if (extremal_k && *extremal_k == 0) throw InvalidInput("experiment: k must be positive");
  if (!(gamma > 0.0) || gamma > 1.0 / 6.0)
    throw InvalidInput("experiment: gamma must lie in (0, 1/6]");
}

std::optional<std::string> ExperimentReport::aggregate(const std::string& key) const {
  for (const auto& [k, v] : aggregates)
    if (k == key) return v;
  return std::nullopt;
}

namespace {

using Row = std::vector<std::string>;

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}
template <class T>
std::string str(T x) {
  return std::to_string(x);
}
std::string flag(bool b) { return b ? "1" : "0"; }
std::string opt(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "-"; }

Digraph instance(const ExperimentSpec& s, std::uint64_t seed) {
  if (s.extremal_k) return gen_extremal(*s.extremal_k);
  return gen_random_semidegree(s.n, s.delta, seed);
}

std::optional<ArcPair> random_arc(const Digraph& d, const VertexSet& avoid, Rng& rng) {
  for (int tries = 0; tries < 1000; ++tries) {
    const auto a = static_cast<Vertex>(rng.below(d.order()));
    if (avoid.contains(a)) continue;
    VertexSet outs = d.out(a) - avoid;
    if (outs.empty()) continue;
    return ArcPair{a, outs.nth(static_cast<std::size_t>(rng.below(outs.size())))};
  }
  return std::nullopt;
}

std::vector<std::string> columns_for(ExperimentTarget t) {
  switch (t) {
    case ExperimentTarget::connect:
      return {"trial", "seed",   "pair",      "success",  "order",     "verified",
              "route", "out_heavy", "in_heavy", "out_depth", "in_depth"};
    case ExperimentTarget::absorber_count:
      return {"trial", "seed", "min_count", "argmin", "bound", "pass"};
    case ExperimentTarget::reservoir:
      return {"trial", "seed", "size", "draws", "certified", "threshold", "worst_margin"};
    case ExperimentTarget::cover:
      return {"trial", "seed", "success", "paths", "leftover", "merges", "verified"};
    case ExperimentTarget::pipeline:
      return {"trial", "seed", "success", "failure_stage", "attempts", "cycle_order",
              "verified", "reservoir_certified", "leftover_u"};
  }
  return {};
}

std::vector<Row> run_trial(const ExperimentSpec& s, std::size_t trial) {
  const std::uint64_t seed = Rng::derive(s.seed, trial);
  const Digraph d = instance(s, seed);
  const std::size_t n = d.order();
  std::vector<Row> rows;
  switch (s.target) {
    case ExperimentTarget::connect: {
      Rng rng(Rng::derive(seed, 0xC0));
      ConnectParams p;
      p.gamma = s.gamma;
      for (std::size_t k = 0; k < s.pairs; ++k) {
        VertexSet none(n);
        auto ab = random_arc(d, none, rng);
        std::optional<ArcPair> cd;
        if (ab) cd = random_arc(d, VertexSet(n, {ab->tail, ab->head}), rng);
        if (!ab || !cd) {
          rows.push_back({str(trial), str(seed), str(k), "0", "-", "0", "-", "-", "-", "-", "-"});
          continue;
        }
        auto res = try_connect(d, *ab, *cd, VertexSet(n), p);
        const bool ok = res.path.has_value();
        const bool verified = ok && is_rs_path(d, *res.path) &&
                              first_end_arc(*res.path) == *ab && last_end_arc(*res.path) == *cd;
        rows.push_back({str(trial), str(seed), str(k), flag(ok),
                        ok ? str(res.path->size()) : "-", flag(verified),
                        res.stats.route ? to_string(*res.stats.route) : "-",
                        opt(res.stats.out_heavy_level), opt(res.stats.in_heavy_level),
                        str(res.stats.out_depth), str(res.stats.in_depth)});
      }
      break;
    }
    case ExperimentTarget::absorber_count: {
      std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
      Vertex arg = 0;
      for (Vertex v = 0; v < n; ++v) {
        const auto c = bf_count_absorbers(d, v);
        if (c < best) {
          best = c;
          arg = v;
        }
      }
      const double bound = 6.0 * std::pow(s.gamma, 3) * std::pow(static_cast<double>(n), 4);
      rows.push_back({str(trial), str(seed), str(best), str(arg), fmt(bound),
                      flag(static_cast<double>(best) >= bound)});
      break;
    }
    case ExperimentTarget::reservoir: {
      const auto size = std::max<std::size_t>(
          1, static_cast<std::size_t>(std::ceil(s.reservoir_fraction * static_cast<double>(n))));
      Reservoir r = sample_reservoir_best_effort(d, VertexSet(n), size, s.gamma,
                                                 Rng::derive(seed, 2), s.reservoir_retries);
      rows.push_back({str(trial), str(seed), str(size), str(r.draws), flag(r.certified),
                      fmt(r.certificate.threshold), fmt(r.certificate.worst_margin)});
      break;
    }
    case ExperimentTarget::cover: {
      const std::size_t pb = s.path_budget.value_or(std::max<std::size_t>(1, n / 20));
      const std::size_t lb = s.leftover_budget.value_or(n / 50);
      ConnectParams p;
      p.gamma = s.gamma;
      try {
        auto c = greedy_path_cover(d, pb, lb, Rng::derive(seed, 3), nullptr, p);
        bool verified = true;
        for (const auto& path : c.paths) verified = verified && is_rs_path(d, path);
        rows.push_back({str(trial), str(seed), "1", str(c.paths.size()), str(c.leftover.size()),
                        str(c.merges), flag(verified)});
      } catch (const CoverFailure& e) {
        rows.push_back(
            {str(trial), str(seed), "0", str(e.paths), str(e.leftover), "-", "-"});
      }
      break;
    }
    case ExperimentTarget::pipeline: {
      PipelineConfig cfg = s.pipeline;
      cfg.gamma = s.gamma;
      cfg.seed = Rng::derive(seed, 9);
      auto res = find_rs_hamiltonian(d, cfg);
      const bool ok = res.cycle.has_value();
      rows.push_back({str(trial), str(seed), flag(ok),
                      ok ? "-" : res.report.failure_stage, str(res.report.attempts),
                      ok ? str(res.cycle->size()) : "-",
                      flag(ok && validate_run(d, *res.cycle)),
                      flag(res.report.reservoir_certified), str(res.report.leftover_u)});
      break;
    }
  }
  return rows;
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())));
  return v[std::min(v.size() - 1, idx == 0 ? 0 : idx - 1)];
}

void aggregate(const ExperimentSpec& s, ExperimentReport& r) {
  const auto col = [&](const std::string& name) {
    return static_cast<std::size_t>(
        std::find(r.columns.begin(), r.columns.end(), name) - r.columns.begin());
  };
  const auto rate = [&](const std::string& name) {
    std::size_t ones = 0;
    for (const auto& row : r.rows) ones += row[col(name)] == "1";
    return r.rows.empty() ? 0.0 : static_cast<double>(ones) / static_cast<double>(r.rows.size());
  };
  const auto numbers = [&](const std::string& name) {
    std::vector<double> out;
    for (const auto& row : r.rows)
      if (row[col(name)] != "-") out.push_back(std::stod(row[col(name)]));
    return out;
  };
  auto& a = r.aggregates;
  a.emplace_back("rows", str(r.rows.size()));
  switch (s.target) {
    case ExperimentTarget::connect: {
      a.emplace_back("success_rate", fmt(rate("success")));
      a.emplace_back("verified_rate", fmt(rate("verified")));
      auto orders = numbers("order");
      for (double q : {0.5, 0.9, 0.99, 1.0})
        a.emplace_back("order_q" + fmt(q), fmt(quantile(orders, q)));
      auto heavy = numbers("out_heavy");
      auto in = numbers("in_heavy");
      heavy.insert(heavy.end(), in.begin(), in.end());
      a.emplace_back("cascades_with_heavy", str(heavy.size()));
      for (double q : {0.5, 0.9, 1.0})
        a.emplace_back("heavy_level_q" + fmt(q), fmt(quantile(heavy, q)));
      break;
    }
    case ExperimentTarget::absorber_count: {
      auto mins = numbers("min_count");
      a.emplace_back("min_count", fmt(mins.empty() ? 0 : *std::min_element(mins.begin(), mins.end())));
      a.emplace_back("bound", r.rows.empty() ? "-" : r.rows.front()[col("bound")]);
      a.emplace_back("pass_rate", fmt(rate("pass")));
      break;
    }
    case ExperimentTarget::reservoir: {
      a.emplace_back("certified_rate", fmt(rate("certified")));
      auto draws = numbers("draws");
      a.emplace_back("draws_q0.5", fmt(quantile(draws, 0.5)));
      a.emplace_back("draws_q1", fmt(quantile(draws, 1.0)));
      auto m = numbers("worst_margin");
      a.emplace_back("worst_margin_q0.5", fmt(quantile(m, 0.5)));
      a.emplace_back("worst_margin_min", fmt(quantile(m, 0.0)));
      break;
    }
    case ExperimentTarget::cover: {
      a.emplace_back("success_rate", fmt(rate("success")));
      auto p = numbers("paths");
      auto l = numbers("leftover");
      a.emplace_back("paths_q1", fmt(quantile(p, 1.0)));
      a.emplace_back("leftover_q1", fmt(quantile(l, 1.0)));
      break;
    }
    case ExperimentTarget::pipeline: {
      a.emplace_back("success_rate", fmt(rate("success")));
      a.emplace_back("verified_rate", fmt(rate("verified")));
      std::vector<std::pair<std::string, std::size_t>> stages;
      for (const auto& row : r.rows) {
        const auto& st = row[col("failure_stage")];
        if (st == "-") continue;
        auto it = std::find_if(stages.begin(), stages.end(),
                               [&](const auto& e) { return e.first == st; });
        if (it == stages.end())
          stages.emplace_back(st, 1);
        else
          ++it->second;
      }
      std::sort(stages.begin(), stages.end());
      for (const auto& [st, c] : stages) a.emplace_back("failures_" + st, str(c));
      break;
    }
  }
}

}  // namespace

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentReport r;
  r.spec = {{"target", to_string(spec.target)},
            {"family", spec.extremal_k ? "extremal" : "random"},
            {"n", spec.extremal_k ? str(3 * *spec.extremal_k) : str(spec.n)},
            {"delta", fmt(spec.delta)},
            {"trials", str(spec.trials)},
            {"seed", str(spec.seed)},
            {"gamma", fmt(spec.gamma)}};
  if (spec.extremal_k) r.spec.emplace_back("k", str(*spec.extremal_k));
  r.columns = columns_for(spec.target);

  std::vector<std::vector<Row>> per_trial(spec.trials);
  std::vector<std::string> errors(spec.trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < spec.trials; i = next++) {
      try {
        per_trial[i] = run_trial(spec, i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const std::size_t jobs = std::min(spec.jobs, spec.trials);
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < spec.trials; ++i)
    if (!errors[i].empty()) throw Error("experiment trial " + str(i) + ": " + errors[i]);
  for (auto& rows : per_trial)
    for (auto& row : rows) r.rows.push_back(std::move(row));
  aggregate(spec, r);
  return r;
}

void write_report(std::ostream& os, const ExperimentReport& r) {
  os << "#rsham-experiment v" << ExperimentReport::schema_version << '\n';
  os << "#spec";
  for (const auto& [k, v] : r.spec) os << ' ' << k << '=' << v;
  os << '\n';
  for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "\t" : "") << r.columns[i];
  os << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "\t" : "") << row[i];
    os << '\n';
  }
  for (const auto& [k, v] : r.aggregates) os << "#aggregate " << k << '=' << v << '\n';
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

std::pair<std::string, std::string> key_value(const std::string& tok) {
  const auto eq = tok.find('=');
  if (eq == std::string::npos || eq == 0) throw ParseError("report: malformed pair '" + tok + "'");
  return {tok.substr(0, eq), tok.substr(eq + 1)};
}

}  // namespace

ExperimentReport read_report(std::istream& is) {
  ExperimentReport r;
  std::string line;
  if (!std::getline(is, line) ||
      line != "#rsham-experiment v" + std::to_string(ExperimentReport::schema_version))
    throw ParseError("report: missing or unsupported header");
  if (!std::getline(is, line) || line.rfind("#spec", 0) != 0)
    throw ParseError("report: missing #spec line");
  {
    auto toks = split(line.substr(5), ' ');
    for (const auto& t : toks)
      if (!t.empty()) r.spec.push_back(key_value(t));
  }
  if (!std::getline(is, line) || line.empty()) throw ParseError("report: missing column header");
  r.columns = split(line, '\t');
  while (std::getline(is, line)) {
    if (line.rfind("#aggregate ", 0) == 0) {
      r.aggregates.push_back(key_value(line.substr(11)));
      continue;
    }
    if (!r.aggregates.empty()) throw ParseError("report: row after aggregates");
    auto row = split(line, '\t');
    if (row.size() != r.columns.size())
      throw ParseError("report: row has " + std::to_string(row.size()) + " fields, expected " +
                       std::to_string(r.columns.size()));
    r.rows.push_back(std::move(row));
  }
  return r;
}

}  // namespace rsham
