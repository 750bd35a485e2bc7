#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "rsham/digraph.hpp"

namespace rsham {

/// Provenance carried by the structured graph format.
struct GraphMeta {
  std::string generator;
  std::optional<std::uint64_t> seed;
  std::string params;
  friend bool operator==(const GraphMeta&, const GraphMeta&) = default;
};

struct GraphDocument {
  Digraph graph;
  GraphMeta meta;
};

// Edge-list format: header "n m", then m lines "tail head", 0-indexed.
// Arcs are written in lexicographic order so output is canonical.
void write_edge_list(std::ostream& os, const Digraph& d);
Digraph read_edge_list(std::istream& is);

// Structured format: a JSON object
//   {"format": "rsham-digraph", "version": 1, "n": ..., "arcs": [[t, h], ...],
//    "meta": {"generator": ..., "seed": ..., "params": ...}}
std::string to_graph_json(const Digraph& d, const GraphMeta& meta);
GraphDocument from_graph_json(const std::string& text);

/// Dispatches on extension: ".json" selects the structured format.
GraphDocument load_graph(const std::filesystem::path& path);
void save_graph(const std::filesystem::path& path, const Digraph& d,
                const GraphMeta& meta = {});

}  // namespace rsham
