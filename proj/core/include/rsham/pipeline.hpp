#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rsham/absorbing.hpp"
#include "rsham/connecting.hpp"
#include "rsham/digraph.hpp"

namespace rsham {

/// Every tunable of an assembly run. Unset optionals take the desk default
/// or, with paper_scale, the verbatim formula; both are reported.
struct PipelineConfig {
  double gamma = 0.1;
  bool paper_scale = false;
  std::uint64_t seed = 0;
  /// Smaller digraphs are rejected with a failure report.
  std::size_t min_order = 30;

  // absorbing family and path
  double family_fraction = 0.15;
  double draw_multiplier = 8.0;
  std::optional<double> inclusion_prob;
  std::optional<std::size_t> coverage_floor;
  std::size_t family_retries = 4;
  std::optional<std::size_t> absorbing_connector_cap;

  // reservoir
  double reservoir_fraction = 0.03;
  std::size_t reservoir_min = 5;
  std::size_t reservoir_retries = 3;
  std::optional<std::size_t> reservoir_used_budget;
  std::optional<std::size_t> reservoir_connector_cap;

  // path cover
  std::optional<std::size_t> path_budget;
  std::optional<std::size_t> leftover_budget;

  /// Whole-run retries with derived seeds after a stage failure.
  std::size_t global_retries = 10;

  ConnectParams connect;

  /// Throws InvalidInput if gamma is outside (0, 1/6] or a budget is zero.
  void validate() const;
};

/// Paper formulas and the values actually used, evaluated at order n.
std::map<std::string, double> paper_constants(std::size_t n, double gamma);

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct AttemptFailure {
  std::size_t attempt = 0;
  std::string stage;
  std::string message;
};

/// Diagnostics of one assembly run. Stage fields describe the last attempt.
struct RunReport {
  static constexpr int schema_version = 1;

  std::size_t n = 0;
  std::uint64_t seed = 0;
  double gamma = 0.0;
  bool paper_scale = false;

  bool success = false;
  std::string failure_stage;
  std::string failure_message;
  std::size_t attempts = 0;
  std::vector<AttemptFailure> failed_attempts;

  std::map<std::string, double> paper;
  std::map<std::string, double> effective;

  std::size_t family_size = 0;
  std::size_t family_drawn = 0;
  std::size_t family_min_coverage = 0;
  std::size_t family_coverage_floor = 0;
  std::size_t family_attempts = 0;
  std::size_t absorbing_order = 0;
  std::vector<std::size_t> absorbing_connector_orders;

  std::size_t reservoir_size = 0;
  std::size_t reservoir_draws = 0;
  bool reservoir_certified = false;
  double reservoir_threshold = 0.0;
  double reservoir_worst_margin = 0.0;
  std::size_t reservoir_used = 0;
  std::size_t reservoir_used_budget = 0;

  std::size_t cover_paths = 0;
  std::size_t cover_leftover = 0;
  std::size_t cover_merges = 0;
  std::size_t cover_dissolved = 0;

  std::vector<std::size_t> connector_orders;
  std::size_t leftover_u = 0;
  std::size_t absorbing_capacity = 0;

  std::size_t cycle_order = 0;
  bool cycle_verified = false;
  bool vertex_set_complete = false;

  std::vector<StageTiming> timings;
};

/// Versioned JSON document; timings are omitted when include_timings is
/// false so two runs can be compared byte for byte.
std::string to_json(const RunReport& r, bool include_timings = true);
RunReport run_report_from_json(const std::string& text);

struct PipelineResult {
  std::optional<VertexSeq> cycle;
  RunReport report;
};

/// Assembles a reverse-square Hamiltonian cycle: absorbing path P_A,
/// reservoir R outside it, greedy cover of the rest, stitching of the cover
/// paths followed by P_A through R, closure through R, and absorption of
/// the leftover and unused reservoir vertices into P_A. A cycle is returned
/// only after validate_run accepts it; otherwise the report names the
/// failing stage. Throws InvalidInput only for an invalid configuration.
PipelineResult find_rs_hamiltonian(const Digraph& d, const PipelineConfig& cfg);

/// True iff c is a reverse-square cycle through every vertex of D exactly once.
bool validate_run(const Digraph& d, const VertexSeq& c);

}  // namespace rsham
