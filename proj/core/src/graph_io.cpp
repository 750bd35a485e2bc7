#include "rsham/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "rsham/error.hpp"

namespace rsham {

using nlohmann::json;

void write_edge_list(std::ostream& os, const Digraph& d) {
  os << d.order() << ' ' << d.arc_count() << '\n';
  for (const auto& a : d.arcs()) os << a.tail << ' ' << a.head << '\n';
}

Digraph read_edge_list(std::istream& is) {
  long long n = -1;
  long long m = -1;
  if (!(is >> n >> m) || n < 0 || m < 0)
    throw ParseError("edge list: expected header \"n m\"");
  std::vector<ArcPair> arcs;
  arcs.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long t = -1;
    long long h = -1;
    if (!(is >> t >> h))
      throw ParseError("edge list: expected " + std::to_string(m) + " arcs, got " +
                       std::to_string(i));
    if (t < 0 || h < 0 || t >= n || h >= n)
      throw ParseError("edge list: arc " + std::to_string(t) + " " + std::to_string(h) +
                       " out of range");
    arcs.push_back({static_cast<Vertex>(t), static_cast<Vertex>(h)});
  }
  std::string extra;
  if (is >> extra) throw ParseError("edge list: trailing content '" + extra + "'");
  try {
    return Digraph::from_arcs(static_cast<std::size_t>(n), arcs);
  } catch (const InvalidInput& e) {
    throw ParseError(std::string("edge list: ") + e.what());
  }
}

std::string to_graph_json(const Digraph& d, const GraphMeta& meta) {
  json arcs = json::array();
  for (const auto& a : d.arcs()) arcs.push_back({a.tail, a.head});
  json m = {{"generator", meta.generator}, {"params", meta.params}};
  m["seed"] = meta.seed ? json(*meta.seed) : json(nullptr);
  json doc = {{"format", "rsham-digraph"},
              {"version", 1},
              {"n", d.order()},
              {"arcs", std::move(arcs)},
              {"meta", std::move(m)}};
  return doc.dump(1) + "\n";
}

GraphDocument from_graph_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("graph json: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != "rsham-digraph")
      throw ParseError("graph json: unexpected format tag");
    if (doc.at("version").get<int>() != 1)
      throw ParseError("graph json: unsupported version");
    auto n = doc.at("n").get<std::size_t>();
    std::vector<ArcPair> arcs;
    for (const auto& a : doc.at("arcs")) {
      auto t = a.at(0).get<long long>();
      auto h = a.at(1).get<long long>();
      if (a.size() != 2 || t < 0 || h < 0 || t >= static_cast<long long>(n) ||
          h >= static_cast<long long>(n))
        throw ParseError("graph json: malformed arc");
      arcs.push_back({static_cast<Vertex>(t), static_cast<Vertex>(h)});
    }
    GraphDocument out{Digraph::from_arcs(n, arcs), {}};
    if (doc.contains("meta")) {
      const auto& m = doc.at("meta");
      out.meta.generator = m.value("generator", std::string{});
      out.meta.params = m.value("params", std::string{});
      if (m.contains("seed") && !m.at("seed").is_null())
        out.meta.seed = m.at("seed").get<std::uint64_t>();
    }
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("graph json: ") + e.what());
  } catch (const InvalidInput& e) {
    throw ParseError(std::string("graph json: ") + e.what());
  }
}

GraphDocument load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  if (path.extension() == ".json") {
    std::stringstream ss;
    ss << in.rdbuf();
    return from_graph_json(ss.str());
  }
  return {read_edge_list(in), {}};
}

void save_graph(const std::filesystem::path& path, const Digraph& d,
                const GraphMeta& meta) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  if (path.extension() == ".json")
    out << to_graph_json(d, meta);
  else
    write_edge_list(out, d);
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace rsham
