#include "tlink/pipeline.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "tlink/error.hpp"

namespace tlink {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using Setter = std::function<void(PipelineConfig&, const json&)>;

template <typename T>
T as(const json& v, std::string_view key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw Error("config key '" + std::string(key) + "' has the wrong type");
  }
}

bool on_off(const json& v, std::string_view key) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "on" || s == "true") return true;
    if (s == "off" || s == "false") return false;
  }
  throw Error("config key '" + std::string(key) + "' must be on or off");
}

template <typename T>
std::vector<T> list_of(const json& v, std::string_view key) {
  if (!v.is_array()) {
    throw Error("config key '" + std::string(key) + "' must be an array");
  }
  std::vector<T> out;
  for (const auto& item : v) out.push_back(as<T>(item, key));
  return out;
}

// Synthetic keys also mark the synthetic section as present.
template <typename Field>
Setter synth(Field SyntheticConfig::*field) {
  return [field](PipelineConfig& c, const json& v) {
    c.synthetic.*field = v.get<Field>();
    c.has_synthetic_section = true;
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"source",
       [](PipelineConfig& c, const json& v) {
         c.source = v.get<std::string>();
         if (c.source != "files" && c.source != "synthetic") {
           throw Error("source must be 'files' or 'synthetic', got '" +
                       c.source + "'");
         }
       }},
      {"output_dir",
       [](PipelineConfig& c, const json& v) {
         c.output_dir = v.get<std::string>();
       }},
      {"records",
       [](PipelineConfig& c, const json& v) {
         c.records_path = v.get<std::string>();
       }},
      {"ground_truth",
       [](PipelineConfig& c, const json& v) {
         c.truth_path = v.get<std::string>();
       }},
      {"graph",
       [](PipelineConfig& c, const json& v) {
         c.graph_path = v.get<std::string>();
       }},
      {"clustering",
       [](PipelineConfig& c, const json& v) {
         c.clustering_path = v.get<std::string>();
       }},
      {"delimiter",
       [](PipelineConfig& c, const json& v) {
         const auto s = v.get<std::string>();
         if (s.size() != 1 || s == "\"" || s == "\n" || s == "\r") {
           throw Error("delimiter must be a single character other than a "
                       "quote or line break");
         }
         c.delimiter = s[0];
       }},
      {"schema",
       [](PipelineConfig& c, const json& v) {
         c.schema = Schema(list_of<std::string>(v, "schema"));
       }},

      {"num_entities", synth(&SyntheticConfig::num_entities)},
      {"births_min", synth(&SyntheticConfig::births_min)},
      {"births_max", synth(&SyntheticConfig::births_max)},
      {"first_name_vocab", synth(&SyntheticConfig::first_name_vocab)},
      {"last_name_vocab", synth(&SyntheticConfig::last_name_vocab)},
      {"first_name_skew", synth(&SyntheticConfig::first_name_skew)},
      {"last_name_skew", synth(&SyntheticConfig::last_name_skew)},
      {"name_missing_rate", synth(&SyntheticConfig::name_missing_rate)},
      {"marriage_missing_rate", synth(&SyntheticConfig::marriage_missing_rate)},
      {"occupation_missing_rate",
       synth(&SyntheticConfig::occupation_missing_rate)},
      {"mother_occupation_missing_rate",
       synth(&SyntheticConfig::mother_occupation_missing_rate)},
      {"address_missing_rate", synth(&SyntheticConfig::address_missing_rate)},
      {"unmarried_rate", synth(&SyntheticConfig::unmarried_rate)},
      {"address_change_rate", synth(&SyntheticConfig::address_change_rate)},
      {"typo_rate", synth(&SyntheticConfig::typo_rate)},
      {"date_noise_days", synth(&SyntheticConfig::date_noise_days)},
      {"twin_rate", synth(&SyntheticConfig::twin_rate)},
      {"lookalike_rate", synth(&SyntheticConfig::lookalike_rate)},
      {"first_year", synth(&SyntheticConfig::first_year)},
      {"last_year", synth(&SyntheticConfig::last_year)},
      // One seed drives both the generator and the LSH hash family.
      {"seed",
       [](PipelineConfig& c, const json& v) {
         c.synthetic.seed = v.get<std::uint64_t>();
         c.lsh.seed = c.synthetic.seed;
       }},

      {"profile",
       [](PipelineConfig& c, const json& v) {
         c.profile = v.get<std::string>();
         standard_profile(c.profile);  // validates the name
       }},
      {"weighted",
       [](PipelineConfig& c, const json& v) { c.weighted = on_off(v, "weighted"); }},
      {"missing_policy",
       [](PipelineConfig& c, const json& v) {
         c.missing = parse_missing_policy(v.get<std::string>());
       }},
      {"year_max_diff",
       [](PipelineConfig& c, const json& v) {
         c.year_max_diff = v.get<int>();
         if (c.year_max_diff <= 0) throw Error("year_max_diff must be positive");
       }},

      {"bands",
       [](PipelineConfig& c, const json& v) {
         c.lsh.bands = v.get<std::size_t>();
       }},
      {"band_size",
       [](PipelineConfig& c, const json& v) {
         c.lsh.band_size = v.get<std::size_t>();
       }},
      {"s_build",
       [](PipelineConfig& c, const json& v) { c.s_build = v.get<double>(); }},
      {"temporal_build",
       [](PipelineConfig& c, const json& v) {
         c.temporal_build = on_off(v, "temporal_build");
       }},

      {"temporal",
       [](PipelineConfig& c, const json& v) { c.temporal = on_off(v, "temporal"); }},
      {"p_min",
       [](PipelineConfig& c, const json& v) {
         c.constraint.p_min = v.get<double>();
         if (!(c.constraint.p_min >= 0.0 && c.constraint.p_min <= 1.0)) {
           throw Error("p_min must lie in [0, 1]");
         }
       }},
      {"breakpoints",
       [](PipelineConfig& c, const json& v) {
         std::vector<TemporalModel::Breakpoint> bps;
         for (const auto& pair : v) {
           if (!pair.is_array() || pair.size() != 2) {
             throw Error("breakpoints must be [day, plausibility] pairs");
           }
           bps.push_back({pair[0].get<std::int64_t>(), pair[1].get<double>()});
         }
         c.constraint.model = TemporalModel(std::move(bps));
       }},

      {"clusterer",
       [](PipelineConfig& c, const json& v) {
         const auto s = v.get<std::string>();
         if (s == "star") {
           c.clusterer.kind = ClustererSpec::Kind::kStar;
         } else if (s == "greedy") {
           c.clusterer.kind = ClustererSpec::Kind::kGreedy;
         } else {
           c.clusterer = parse_clusterer(s);
         }
       }},
      {"sort_method",
       [](PipelineConfig& c, const json& v) {
         c.clusterer.sort = parse_sort_method(v.get<std::string>());
       }},
      {"resolve_method",
       [](PipelineConfig& c, const json& v) {
         c.clusterer.resolve = parse_resolve_method(v.get<std::string>());
       }},
      {"select_method",
       [](PipelineConfig& c, const json& v) {
         c.clusterer.select = parse_select_method(v.get<std::string>());
       }},
      {"retry_on_rejection",
       [](PipelineConfig& c, const json& v) {
         c.clusterer.retry_on_rejection = on_off(v, "retry_on_rejection");
       }},
      {"threshold",
       [](PipelineConfig& c, const json& v) { c.threshold = v.get<double>(); }},

      {"thresholds",
       [](PipelineConfig& c, const json& v) {
         c.thresholds = list_of<double>(v, "thresholds");
       }},
      {"sweep_profiles",
       [](PipelineConfig& c, const json& v) {
         c.sweep_profiles = list_of<std::string>(v, "sweep_profiles");
         for (const auto& p : c.sweep_profiles) standard_profile(p);
       }},
      {"sweep_weighted",
       [](PipelineConfig& c, const json& v) {
         c.sweep_weighted.clear();
         for (const auto& item : v) {
           c.sweep_weighted.push_back(on_off(item, "sweep_weighted"));
         }
       }},
      {"sweep_clusterers",
       [](PipelineConfig& c, const json& v) {
         c.sweep_clusterers.clear();
         for (const auto& item : v) {
           const auto s = item.get<std::string>();
           if (s == "all") {
             for (const auto& spec : ClustererSpec::all()) {
               c.sweep_clusterers.push_back(spec);
             }
           } else {
             c.sweep_clusterers.push_back(parse_clusterer(s));
           }
         }
       }},
      {"sweep_temporal",
       [](PipelineConfig& c, const json& v) {
         c.sweep_temporal.clear();
         for (const auto& item : v) {
           c.sweep_temporal.push_back(on_off(item, "sweep_temporal"));
         }
       }},
      {"plot_data",
       [](PipelineConfig& c, const json& v) {
         c.plot_data = on_off(v, "plot_data");
       }},
  };
  return table;
}

void apply(PipelineConfig& c, std::string_view key, const json& value) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) {
    throw Error("unknown config key '" + std::string(key) + "'");
  }
  try {
    it->second(c, value);
  } catch (const json::exception&) {
    throw Error("config key '" + std::string(key) + "' has the wrong type");
  }
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  return in;
}

struct Inputs {
  RecordSet records;
  GroundTruth truth;
};

Inputs load_inputs(const PipelineConfig& c, bool need_truth) {
  if (c.source == "synthetic") {
    auto data = generate_synthetic(c.synthetic);
    return {std::move(data.records), std::move(data.truth)};
  }
  Inputs in;
  in.records = load_records(c.records_file(), c.schema, c.delimiter);
  if (need_truth) {
    in.truth = load_ground_truth(c.truth_file(), in.records, c.delimiter);
  }
  return in;
}

ComparisonProfile profile_for(const PipelineConfig& c, std::string_view name,
                              bool weighted) {
  auto p = standard_profile(name, weighted);
  p.missing = c.missing;
  for (auto& cmp : p.comparators) cmp.year_max_diff = c.year_max_diff;
  return p;
}

GraphOptions graph_options(const PipelineConfig& c) {
  GraphOptions o{c.lsh, c.s_build, std::nullopt};
  if (c.temporal_build) o.temporal = c.constraint.model;
  return o;
}

}  // namespace

fs::path PipelineConfig::records_file() const {
  return records_path.value_or(output_dir / "records.csv");
}
fs::path PipelineConfig::truth_file() const {
  return truth_path.value_or(output_dir / "ground_truth.csv");
}
fs::path PipelineConfig::graph_file() const {
  return graph_path.value_or(output_dir / "graph.csv");
}
fs::path PipelineConfig::clustering_file() const {
  return clustering_path.value_or(output_dir / "clustering.csv");
}

ComparisonProfile PipelineConfig::comparison_profile() const {
  return profile_for(*this, profile, weighted);
}

std::optional<TemporalConstraint> PipelineConfig::clustering_constraint()
    const {
  if (!temporal) return std::nullopt;
  return constraint;
}

ClustererSpec parse_clusterer(std::string_view text) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in{std::string(text)};
  while (std::getline(in, part, '/')) parts.push_back(part);

  if (parts.size() == 3 && parts[0] == "star") {
    return ClustererSpec::star(parse_sort_method(parts[1]),
                               parse_resolve_method(parts[2]));
  }
  if ((parts.size() == 2 || parts.size() == 3) && parts[0] == "greedy") {
    if (parts.size() == 3 && parts[2] != "retry") {
      throw Error("unknown greedy option '" + parts[2] + "'");
    }
    return ClustererSpec::greedy(parse_select_method(parts[1]),
                                 parts.size() == 3);
  }
  throw Error("cannot parse clusterer '" + std::string(text) +
              "'; expected star/<sort>/<resolve> or greedy/<select>[/retry]");
}

PipelineConfig parse_config(
    const std::string& json_text,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("malformed config JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error("config must be a JSON object");

  PipelineConfig c;
  for (const auto& [key, value] : doc.items()) apply(c, key, value);
  for (const auto& [key, text] : overrides) {
    json value = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (value.is_discarded()) value = text;
    apply(c, key, value);
  }

  if (!(c.s_build > 0.0 && c.s_build <= 1.0)) {
    throw Error("s_build must lie in (0, 1]");
  }
  if (c.has_synthetic_section) validate(c.synthetic);
  return c;
}

PipelineConfig load_config(
    const std::optional<fs::path>& path,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  if (!path) return parse_config("{}", overrides);
  auto in = open_in(*path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), overrides);
}

std::vector<fs::path> cmd_generate(const PipelineConfig& config) {
  if (!config.has_synthetic_section) {
    throw Error("generate needs synthetic settings (at least num_entities)");
  }
  const auto data = generate_synthetic(config.synthetic);
  const auto records_path = config.records_file();
  const auto truth_path = config.truth_file();
  {
    auto out = open_out(records_path);
    write_records(out, data.records, config.delimiter);
  }
  {
    auto out = open_out(truth_path);
    write_ground_truth(out, data.truth, config.delimiter);
  }
  return {records_path, truth_path};
}

std::vector<fs::path> cmd_build_graph(const PipelineConfig& config) {
  const auto in = load_inputs(config, false);
  const RecordComparator comparator(config.comparison_profile(),
                                    in.records.schema());
  const auto g = build_graph(in.records, comparator, graph_options(config));
  const auto path = config.graph_file();
  auto out = open_out(path);
  write_graph(out, g);
  return {path};
}

std::vector<fs::path> cmd_cluster(const PipelineConfig& config) {
  const auto in = load_inputs(config, false);
  auto graph_in = open_in(config.graph_file());
  const auto g = read_graph(graph_in, in.records, config.s_build);
  const auto ids = in.records.ids();
  const auto c = run_clusterer(g, ids, config.clusterer, config.threshold,
                               config.clustering_constraint());
  const auto path = config.clustering_file();
  auto out = open_out(path);
  write_clustering(out, c);
  return {path};
}

std::vector<fs::path> cmd_evaluate(const PipelineConfig& config) {
  const auto in = load_inputs(config, true);
  auto clustering_in = open_in(config.clustering_file());
  const auto c = read_clustering(clustering_in);
  auto report = precision_recall(c, in.truth);
  report.config = RunDescriptor{config.profile,
                                config.weighted,
                                config.clusterer.name(),
                                config.clusterer.methods(),
                                config.temporal,
                                config.constraint.p_min,
                                config.threshold};
  const auto path = config.output_dir / "report.json";
  auto out = open_out(path);
  const std::vector<EvaluationReport> reports{report};
  out << reports_to_json(reports);
  return {path};
}

std::vector<fs::path> cmd_sweep(const PipelineConfig& config) {
  const auto in = load_inputs(config, true);

  SweepPlan plan;
  const auto names = config.sweep_profiles.empty()
                         ? std::vector<std::string>{config.profile}
                         : config.sweep_profiles;
  const auto weights = config.sweep_weighted.empty()
                           ? std::vector<bool>{config.weighted}
                           : config.sweep_weighted;
  for (const auto& name : names) {
    for (bool w : weights) plan.profiles.push_back(profile_for(config, name, w));
  }
  plan.lsh = config.lsh;
  plan.s_build = config.s_build;
  plan.build_temporal = graph_options(config).temporal;
  plan.clusterers = config.sweep_clusterers.empty()
                        ? std::vector<ClustererSpec>{config.clusterer}
                        : config.sweep_clusterers;
  plan.temporal_modes = config.sweep_temporal;
  plan.temporal = config.constraint;
  plan.thresholds = config.thresholds;

  const auto reports = sweep(in.records, in.truth, plan);

  std::vector<fs::path> written;
  const auto json_path = config.output_dir / "sweep.json";
  {
    auto out = open_out(json_path);
    out << reports_to_json(reports);
  }
  written.push_back(json_path);
  if (config.plot_data) {
    const auto csv_path = config.output_dir / "sweep.csv";
    auto out = open_out(csv_path);
    write_reports_csv(out, reports);
    written.push_back(csv_path);
  }
  return written;
}

}  // namespace tlink
