#include "commands.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "rsham/connecting.hpp"
#include "rsham/error.hpp"
#include "rsham/experiment.hpp"
#include "rsham/generators.hpp"
#include "rsham/graph_io.hpp"
#include "rsham/oracle.hpp"
#include "rsham/verify.hpp"

namespace rsham::cli {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write '" + path + "'");
  f << text;
}

std::vector<Vertex> parse_sequence(const std::string& s) {
  std::vector<Vertex> out;
  std::string tok;
  std::istringstream is(s);
  while (is >> tok) {
    for (char& c : tok)
      if (c == ',') c = ' ';
    std::istringstream ts(tok);
    long long v;
    while (ts >> v) {
      if (v < 0) throw InvalidInput("negative vertex in sequence");
      out.push_back(static_cast<Vertex>(v));
    }
    if (!ts.eof()) throw InvalidInput("malformed sequence '" + s + "'");
  }
  return out;
}

ArcPair parse_arc(const std::string& s) {
  auto v = parse_sequence(s);
  if (v.size() != 2) throw InvalidInput("an arc needs exactly two vertices: '" + s + "'");
  return {v[0], v[1]};
}

std::string join(const std::vector<Vertex>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

std::string arc_name(ArcPair a) {
  return std::to_string(a.tail) + "->" + std::to_string(a.head);
}

struct Common {
  std::string graph;
  std::uint64_t seed = 0;
  double gamma = 0.1;
  std::string config;
  std::string out;
  bool paper_scale = false;
};

PipelineConfig build_config(const Common& c, bool seed_set, bool gamma_set) {
  PipelineConfig cfg;
  if (!c.config.empty()) cfg = pipeline_config_from_json(read_file(c.config), cfg);
  if (seed_set) cfg.seed = c.seed;
  if (gamma_set) cfg.gamma = c.gamma;
  if (c.paper_scale) cfg.paper_scale = true;
  return cfg;
}

}  // namespace

PipelineConfig pipeline_config_from_json(const std::string& text, PipelineConfig cfg) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw InvalidInput("config: expected a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "gamma") cfg.gamma = v.get<double>();
      else if (key == "paper_scale") cfg.paper_scale = v.get<bool>();
      else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (key == "min_order") cfg.min_order = v.get<std::size_t>();
      else if (key == "family_fraction") cfg.family_fraction = v.get<double>();
      else if (key == "draw_multiplier") cfg.draw_multiplier = v.get<double>();
      else if (key == "inclusion_prob") cfg.inclusion_prob = v.get<double>();
      else if (key == "coverage_floor") cfg.coverage_floor = v.get<std::size_t>();
      else if (key == "family_retries") cfg.family_retries = v.get<std::size_t>();
      else if (key == "absorbing_connector_cap") cfg.absorbing_connector_cap = v.get<std::size_t>();
      else if (key == "reservoir_fraction") cfg.reservoir_fraction = v.get<double>();
      else if (key == "reservoir_min") cfg.reservoir_min = v.get<std::size_t>();
      else if (key == "reservoir_retries") cfg.reservoir_retries = v.get<std::size_t>();
      else if (key == "reservoir_used_budget") cfg.reservoir_used_budget = v.get<std::size_t>();
      else if (key == "reservoir_connector_cap") cfg.reservoir_connector_cap = v.get<std::size_t>();
      else if (key == "path_budget") cfg.path_budget = v.get<std::size_t>();
      else if (key == "leftover_budget") cfg.leftover_budget = v.get<std::size_t>();
      else if (key == "global_retries") cfg.global_retries = v.get<std::size_t>();
      else if (key == "connect_order_cap") cfg.connect.order_cap = v.get<std::size_t>();
      else if (key == "connect_level_cap") cfg.connect.level_cap = v.get<std::size_t>();
      else if (key == "connect_search_nodes") cfg.connect.search_nodes = v.get<std::uint64_t>();
      else throw InvalidInput("config: unknown key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reverse-square Hamiltonian cycles in dense digraphs", "rsham"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a digraph");
  std::string kind;
  std::size_t k = 0, n = 0;
  double delta = 0.77, density = 0.5;
  Common gc;
  gen->add_option("kind", kind, "extremal | random | complete | density")
      ->required()
      ->check(CLI::IsMember({"extremal", "random", "complete", "density"}));
  gen->add_option("--k", k, "extremal parameter (n = 3k)");
  gen->add_option("--n", n, "order");
  gen->add_option("--delta", delta, "minimum semi-degree as a fraction of n");
  gen->add_option("--p", density, "arc probability for the density kind");
  gen->add_option("--seed", gc.seed, "random seed");
  gen->add_option("--out", gc.out, "output file (.json selects the structured format)");

  // verify
  auto* ver = app.add_subcommand("verify", "Check a path, cycle or absorber");
  std::string vkind = "cycle", seq;
  std::optional<std::size_t> absorbed;
  Common vc;
  ver->add_option("--graph", vc.graph, "graph file")->required();
  ver->add_option("--kind", vkind, "path | cycle | absorber")
      ->check(CLI::IsMember({"path", "cycle", "absorber"}));
  ver->add_option("--seq", seq, "vertex sequence, space or comma separated")->required();
  ver->add_option("--vertex", absorbed, "absorbed vertex (absorber kind)");

  // find
  auto* find = app.add_subcommand("find", "Search for a reverse-square Hamiltonian cycle");
  std::string method = "pipeline";
  std::uint64_t max_nodes = 50'000'000;
  double time_cap = 60.0;
  std::string report_path;
  Common fc;
  find->add_option("--graph", fc.graph, "graph file")->required();
  find->add_option("--method", method, "oracle | pipeline")
      ->check(CLI::IsMember({"oracle", "pipeline"}));
  auto* f_seed = find->add_option("--seed", fc.seed, "pipeline seed");
  auto* f_gamma = find->add_option("--gamma", fc.gamma, "gamma");
  find->add_option("--config", fc.config, "JSON pipeline configuration");
  find->add_flag("--paper-scale", fc.paper_scale, "use the verbatim asymptotic constants");
  find->add_option("--out", fc.out, "write the cycle here instead of stdout");
  find->add_option("--report", report_path, "write the JSON run report here");
  find->add_option("--max-nodes", max_nodes, "oracle node budget");
  find->add_option("--time-cap", time_cap, "oracle time budget in seconds");

  // connect
  auto* con = app.add_subcommand("connect", "Connect two arcs by a reverse-square path");
  std::string ab_s, cd_s;
  Common cc;
  std::optional<std::size_t> order_cap;
  con->add_option("--graph", cc.graph, "graph file")->required();
  con->add_option("--ab", ab_s, "first end-arc, e.g. \"0 1\"")->required();
  con->add_option("--cd", cd_s, "last end-arc")->required();
  con->add_option("--gamma", cc.gamma, "gamma");
  con->add_option("--order-cap", order_cap, "longest acceptable path");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Monte Carlo audit of one construction step");
  ExperimentSpec spec;
  std::string target = "connect";
  std::optional<std::size_t> ek;
  Common ec;
  exp->add_option("--target", target, "connect | absorber-count | reservoir | cover | pipeline")
      ->check(CLI::IsMember({"connect", "absorber-count", "reservoir", "cover", "pipeline"}));
  exp->add_option("--n", spec.n, "order of random instances");
  exp->add_option("--delta", spec.delta, "semi-degree fraction of random instances");
  exp->add_option("--k", ek, "use gen_extremal(k) instances");
  exp->add_option("--trials", spec.trials, "trial count");
  exp->add_option("--seed", spec.seed, "base seed");
  exp->add_option("--gamma", spec.gamma, "gamma");
  exp->add_option("--jobs", spec.jobs, "worker threads");
  exp->add_option("--pairs", spec.pairs, "arc pairs per instance (connect)");
  exp->add_option("--reservoir-fraction", spec.reservoir_fraction, "reservoir size / n");
  exp->add_option("--reservoir-retries", spec.reservoir_retries, "reservoir redraws");
  exp->add_option("--config", ec.config, "JSON pipeline configuration (pipeline)");
  exp->add_flag("--paper-scale", ec.paper_scale, "verbatim constants (pipeline)");
  exp->add_option("--out", ec.out, "report file (stdout by default)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ExitCode::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ExitCode::ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return ExitCode::usage;
  }

  try {
    if (*gen) {
      Digraph d(0);
      GraphMeta meta;
      meta.generator = kind;
      if (kind == "extremal") {
        if (k == 0) throw InvalidInput("gen extremal needs --k >= 1");
        d = gen_extremal(k);
        meta.params = "k=" + std::to_string(k);
      } else if (kind == "complete") {
        d = complete_digraph(n);
        meta.params = "n=" + std::to_string(n);
      } else if (kind == "random") {
        d = gen_random_semidegree(n, delta, gc.seed);
        meta.seed = gc.seed;
        std::ostringstream ps;
        ps << "n=" << n << " delta=" << delta;
        meta.params = ps.str();
      } else {
        d = gen_random_density(n, density, gc.seed);
        meta.seed = gc.seed;
        std::ostringstream ps;
        ps << "n=" << n << " p=" << density;
        meta.params = ps.str();
      }
      if (gc.out.empty() || gc.out == "-") {
        write_edge_list(out, d);
      } else {
        save_graph(gc.out, d, meta);
        err << "wrote " << gc.out << ": n=" << d.order() << " arcs=" << d.arc_count()
            << " semi-degree=" << (d.order() ? min_semi_degree(d) : 0) << "\n";
      }
      return ExitCode::ok;
    }

    if (*ver) {
      const Digraph d = load_graph(vc.graph).graph;
      const auto s = parse_sequence(seq);
      std::optional<ArcPair> missing;
      if (vkind == "path") {
        if (s.size() < 2) throw InvalidInput("a path needs at least two vertices");
        missing = first_missing_path_arc(d, s);
      } else if (vkind == "cycle") {
        if (s.size() < 3) throw InvalidInput("a cycle needs at least three vertices");
        missing = first_missing_cycle_arc(d, s);
      } else {
        if (s.size() != 4 || !absorbed)
          throw InvalidInput("absorber kind needs four vertices and --vertex");
        missing = first_missing_absorber_arc(d, {s[0], s[1], s[2], s[3]},
                                             static_cast<Vertex>(*absorbed));
      }
      if (missing) {
        out << "FAIL missing arc " << arc_name(*missing) << "\n";
        return ExitCode::fail;
      }
      out << "PASS\n";
      return ExitCode::ok;
    }

    if (*find) {
      const Digraph d = load_graph(fc.graph).graph;
      if (method == "oracle") {
        auto r = bf_rs_hamiltonian_cycle(d, SearchBudget{max_nodes, time_cap});
        if (r.status == SearchStatus::budget_exhausted) {
          out << "BUDGET_EXHAUSTED after " << r.nodes << " nodes\n";
          return ExitCode::budget;
        }
        if (!r.found()) {
          out << "ABSENT (exhaustive, " << r.nodes << " nodes)\n";
          return ExitCode::fail;
        }
        write_text(fc.out, join(*r.value) + "\n", out);
        const bool v = validate_run(d, *r.value);
        out << "FOUND order " << r.value->size() << "\nvalidate_run " << (v ? "PASS" : "FAIL")
            << "\n";
        return v ? ExitCode::ok : ExitCode::fail;
      }
      const PipelineConfig cfg = build_config(fc, f_seed->count() > 0, f_gamma->count() > 0);
      auto res = find_rs_hamiltonian(d, cfg);
      if (!report_path.empty()) write_text(report_path, to_json(res.report) + "\n", out);
      if (!res.cycle) {
        out << "NOT_FOUND stage " << res.report.failure_stage << ": "
            << res.report.failure_message << "\n";
        return ExitCode::fail;
      }
      write_text(fc.out, join(*res.cycle) + "\n", out);
      const bool v = validate_run(d, *res.cycle);
      out << "FOUND order " << res.cycle->size() << " attempts " << res.report.attempts
          << "\nvalidate_run " << (v ? "PASS" : "FAIL") << "\n";
      return v ? ExitCode::ok : ExitCode::fail;
    }

    if (*con) {
      const Digraph d = load_graph(cc.graph).graph;
      ConnectParams p;
      p.gamma = cc.gamma;
      p.order_cap = order_cap;
      const ArcPair ab = parse_arc(ab_s), cd = parse_arc(cd_s);
      for (Vertex v : {ab.tail, ab.head, cd.tail, cd.head})
        if (v >= d.order()) throw InvalidInput("arc vertex out of range");
      auto r = try_connect(d, ab, cd, VertexSet(d.order()), p);
      if (!r.path) {
        out << "NOT_FOUND " << r.stats.failure << "\n";
        return ExitCode::fail;
      }
      out << join(*r.path) << "\n"
          << "order " << r.path->size() << " route " << to_string(*r.stats.route)
          << "\nis_rs_path " << (is_rs_path(d, *r.path) ? "PASS" : "FAIL") << "\n";
      return is_rs_path(d, *r.path) ? ExitCode::ok : ExitCode::fail;
    }

    if (*exp) {
      spec.target = parse_experiment_target(target);
      spec.extremal_k = ek;
      if (spec.target == ExperimentTarget::pipeline) {
        spec.pipeline = build_config(ec, false, false);
      }
      const auto report = run_experiment(spec);
      std::ostringstream os;
      write_report(os, report);
      write_text(ec.out, os.str(), out);
      return ExitCode::ok;
    }
  } catch (const InvalidInput& e) {
    err << "usage error: " << e.what() << "\n";
    return ExitCode::usage;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return ExitCode::usage;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << "\n";
    return ExitCode::usage;
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << "\n";
    return ExitCode::usage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::fail;
  }
  return ExitCode::usage;
}

}  // namespace rsham::cli
