#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tlink/eval.hpp"
#include "tlink/graph.hpp"
#include "tlink/records.hpp"
#include "tlink/similarity.hpp"
#include "tlink/synthetic.hpp"
#include "tlink/temporal.hpp"

namespace tlink {

// Everything a pipeline run needs. Read from a flat JSON object whose keys
// match the field names below (see README for the full list).
struct PipelineConfig {
  // "files" reads records/ground truth from disk, "synthetic" generates them
  // in memory from `synthetic`.
  std::string source = "files";
  std::filesystem::path output_dir = ".";
  std::optional<std::filesystem::path> records_path;
  std::optional<std::filesystem::path> truth_path;
  std::optional<std::filesystem::path> graph_path;
  std::optional<std::filesystem::path> clustering_path;
  char delimiter = ',';
  Schema schema = standard_schema();

  bool has_synthetic_section = false;
  SyntheticConfig synthetic;

  std::string profile = "all";
  bool weighted = true;
  MissingPolicy missing = MissingPolicy::kZero;
  int year_max_diff = 10;

  LshParams lsh;
  double s_build = 0.7;
  bool temporal_build = false;

  bool temporal = true;
  TemporalConstraint constraint;

  ClustererSpec clusterer;
  double threshold = 0.7;  // s_min for `cluster`

  std::vector<double> thresholds = default_thresholds();
  std::vector<std::string> sweep_profiles;  // empty: {profile}
  std::vector<bool> sweep_weighted;         // empty: {weighted}
  std::vector<ClustererSpec> sweep_clusterers;  // empty: {clusterer}
  std::vector<bool> sweep_temporal = {false, true};
  bool plot_data = false;

  std::filesystem::path records_file() const;
  std::filesystem::path truth_file() const;
  std::filesystem::path graph_file() const;
  std::filesystem::path clustering_file() const;

  ComparisonProfile comparison_profile() const;
  std::optional<TemporalConstraint> clustering_constraint() const;
};

// Parses the flat JSON config text, then applies `overrides` (key, value)
// in order. Override values are parsed as JSON when possible and taken as
// strings otherwise. Throws Error naming the offending key.
PipelineConfig parse_config(
    const std::string& json_text,
    const std::vector<std::pair<std::string, std::string>>& overrides = {});
PipelineConfig load_config(
    const std::optional<std::filesystem::path>& path,
    const std::vector<std::pair<std::string, std::string>>& overrides = {});

// Parses "star/<sort>/<resolve>" or "greedy/<select>[/retry]".
ClustererSpec parse_clusterer(std::string_view text);

// Each command writes its files (creating output_dir) and returns the paths
// written.
std::vector<std::filesystem::path> cmd_generate(const PipelineConfig& config);
std::vector<std::filesystem::path> cmd_build_graph(const PipelineConfig& config);
std::vector<std::filesystem::path> cmd_cluster(const PipelineConfig& config);
std::vector<std::filesystem::path> cmd_evaluate(const PipelineConfig& config);
std::vector<std::filesystem::path> cmd_sweep(const PipelineConfig& config);

}  // namespace tlink
