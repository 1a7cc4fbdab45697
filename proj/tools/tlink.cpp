// Command-line front end: generate, build-graph, cluster, evaluate, sweep.

#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "tlink/error.hpp"
#include "tlink/pipeline.hpp"

namespace {

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> output_dir;
  std::optional<std::string> seed;
  std::optional<std::string> threshold;
  std::optional<std::string> temporal;
  std::optional<std::string> clusterer;
  std::optional<std::string> sort_method;
  std::optional<std::string> resolve_method;
  std::optional<std::string> select_method;
  std::vector<std::string> sets;
  bool plot_data = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "Path to a flat JSON config file");
  cmd->add_option("--output-dir", f.output_dir, "Directory for output files");
  cmd->add_option("--seed", f.seed, "Seed for generation and hashing");
  cmd->add_option("--set", f.sets, "Override any config key: key=value")
      ->type_name("KEY=VALUE");
}

void add_clustering(CLI::App* cmd, Flags& f) {
  cmd->add_option("--threshold", f.threshold, "Minimum edge similarity s_min");
  cmd->add_option("--temporal", f.temporal, "Temporal constraint")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--clusterer", f.clusterer,
                  "star, greedy, star/<sort>/<resolve> or greedy/<select>");
  cmd->add_option("--sort-method", f.sort_method,
                  "avr-sim-first, degree-first or comb");
  cmd->add_option("--resolve-method", f.resolve_method,
                  "avr-all, avr-high or edge-ratio");
  cmd->add_option("--select-method", f.select_method,
                  "next, max-sim or avr-sim");
}

std::vector<std::pair<std::string, std::string>> overrides(const Flags& f) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& s : f.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw tlink::Error("--set expects key=value, got '" + s + "'");
    }
    out.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  auto add = [&](const char* key, const std::optional<std::string>& v,
                 bool as_string) {
    if (!v) return;
    // Quote string values so that e.g. "on" is never read as JSON.
    out.emplace_back(key, as_string ? "\"" + *v + "\"" : *v);
  };
  add("output_dir", f.output_dir, true);
  add("seed", f.seed, false);
  add("threshold", f.threshold, false);
  add("temporal", f.temporal, true);
  add("clusterer", f.clusterer, true);
  add("sort_method", f.sort_method, true);
  add("resolve_method", f.resolve_method, true);
  add("select_method", f.select_method, true);
  if (f.plot_data) out.emplace_back("plot_data", "true");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal record linkage of birth registrations"};
  app.require_subcommand(1);

  Flags f;
  auto* generate = app.add_subcommand(
      "generate", "Write synthetic records and ground truth");
  auto* build = app.add_subcommand("build-graph",
                                   "Block, compare and write the similarity graph");
  auto* cluster = app.add_subcommand("cluster", "Cluster the similarity graph");
  auto* evaluate = app.add_subcommand(
      "evaluate", "Score a clustering against the ground truth");
  auto* sweep = app.add_subcommand(
      "sweep", "Precision/recall over a grid of thresholds and methods");

  for (auto* cmd : {generate, build, cluster, evaluate, sweep}) {
    add_common(cmd, f);
  }
  add_clustering(cluster, f);
  add_clustering(evaluate, f);
  add_clustering(sweep, f);
  sweep->add_flag("--plot-data", f.plot_data,
                  "Also write the flat PR-curve table (sweep.csv)");

  CLI11_PARSE(app, argc, argv);

  try {
    std::optional<std::filesystem::path> config_path;
    if (f.config) config_path = *f.config;
    const auto config = tlink::load_config(config_path, overrides(f));

    std::vector<std::filesystem::path> written;
    if (generate->parsed()) {
      written = tlink::cmd_generate(config);
    } else if (build->parsed()) {
      written = tlink::cmd_build_graph(config);
    } else if (cluster->parsed()) {
      written = tlink::cmd_cluster(config);
    } else if (evaluate->parsed()) {
      written = tlink::cmd_evaluate(config);
    } else {
      written = tlink::cmd_sweep(config);
    }
    for (const auto& p : written) std::cout << p.string() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "tlink: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
