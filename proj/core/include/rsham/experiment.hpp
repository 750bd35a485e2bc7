#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rsham/pipeline.hpp"

namespace rsham {

enum class ExperimentTarget { connect, absorber_count, reservoir, cover, pipeline };

const char* to_string(ExperimentTarget t);
/// Throws InvalidInput for an unknown name.
ExperimentTarget parse_experiment_target(const std::string& s);

struct ExperimentSpec {
  ExperimentTarget target = ExperimentTarget::connect;
  /// Instances: gen_extremal(k) when set, otherwise random digraphs of
  /// order n with semi-degree at least delta * n.
  std::optional<std::size_t> extremal_k;
  std::size_t n = 200;
  double delta = 0.77;
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  double gamma = 0.1;
  std::size_t jobs = 1;

  /// connect: arc pairs per instance.
  std::size_t pairs = 1;
  /// reservoir: size as a fraction of n, and retries.
  double reservoir_fraction = 0.05;
  std::size_t reservoir_retries = 3;
  /// cover: path and leftover budgets (defaults n/20 and n/50).
  std::optional<std::size_t> path_budget;
  std::optional<std::size_t> leftover_budget;
  /// pipeline: base configuration; gamma and seed are overridden per trial.
  PipelineConfig pipeline;

  /// Throws InvalidInput when trials, jobs or n are out of range.
  void validate() const;
};

/// Line-oriented report: a versioned header, one "#spec" line, a
/// tab-separated column header, one row per trial in trial order and
/// "#aggregate key=value" lines.
struct ExperimentReport {
  static constexpr int schema_version = 1;
  std::vector<std::pair<std::string, std::string>> spec;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> aggregates;

  /// Value of an aggregate, or nullopt.
  std::optional<std::string> aggregate(const std::string& key) const;
};

/// Runs every trial, `jobs` at a time. Trial i uses the instance seed
/// derive(seed, i), so rows do not depend on the job count.
ExperimentReport run_experiment(const ExperimentSpec& spec);

void write_report(std::ostream& os, const ExperimentReport& r);
/// Throws ParseError on malformed input.
ExperimentReport read_report(std::istream& is);

}  // namespace rsham
