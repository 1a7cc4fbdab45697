#include "tlink/eval.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <ostream>
#include <set>
#include <unordered_set>

#include <json.hpp>

namespace tlink {

namespace {

std::uint64_t choose2(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

std::string format_double(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

std::vector<IdPair> pairwise_links(
    const std::vector<std::vector<RecordId>>& clusters) {
  std::unordered_set<RecordId> seen;
  std::vector<IdPair> links;
  for (const auto& c : clusters) {
    for (RecordId id : c) {
      if (!seen.insert(id).second) {
        throw Error("record " + std::to_string(id) +
                    " appears in more than one cluster");
      }
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        links.emplace_back(std::min(c[i], c[j]), std::max(c[i], c[j]));
      }
    }
  }
  std::sort(links.begin(), links.end());
  return links;
}

std::vector<IdPair> pairwise_links(const Clustering& c) {
  return pairwise_links(c.clusters());
}

std::string ClustererSpec::name() const {
  return kind == Kind::kStar ? "star" : "greedy";
}

std::string ClustererSpec::methods() const {
  if (kind == Kind::kStar) {
    return std::string(to_string(sort)) + "/" + std::string(to_string(resolve));
  }
  std::string m(to_string(select));
  if (retry_on_rejection) m += "+retry";
  return m;
}

ClustererSpec ClustererSpec::star(SortMethod s, ResolveMethod r) {
  ClustererSpec spec;
  spec.kind = Kind::kStar;
  spec.sort = s;
  spec.resolve = r;
  return spec;
}

ClustererSpec ClustererSpec::greedy(SelectMethod s, bool retry) {
  ClustererSpec spec;
  spec.kind = Kind::kGreedy;
  spec.select = s;
  spec.retry_on_rejection = retry;
  return spec;
}

std::vector<ClustererSpec> ClustererSpec::all() {
  std::vector<ClustererSpec> out;
  for (auto s : {SortMethod::kAvrSimFirst, SortMethod::kDegreeFirst,
                 SortMethod::kComb}) {
    for (auto r : {ResolveMethod::kAvrAll, ResolveMethod::kAvrHigh,
                   ResolveMethod::kEdgeRatio}) {
      out.push_back(star(s, r));
    }
  }
  for (auto s :
       {SelectMethod::kNext, SelectMethod::kMaxSim, SelectMethod::kAvrSim}) {
    out.push_back(greedy(s));
  }
  return out;
}

Clustering run_clusterer(const SimilarityGraph& g,
                         std::span<const RecordId> all_ids,
                         const ClustererSpec& spec, double s_min,
                         const std::optional<TemporalConstraint>& temporal) {
  if (spec.kind == ClustererSpec::Kind::kStar) {
    return star_cluster(g, all_ids,
                        StarOptions{s_min, spec.sort, spec.resolve, temporal});
  }
  return greedy_cluster(
      g, all_ids,
      GreedyOptions{s_min, spec.select, temporal, spec.retry_on_rejection});
}

EvaluationReport precision_recall(const Clustering& c, const GroundTruth& gt) {
  const auto ids = c.ids();
  if (ids.size() != gt.size() ||
      !std::equal(ids.begin(), ids.end(), gt.assignments().begin(),
                  [](RecordId id, const auto& kv) { return id == kv.first; })) {
    throw Error(
        "clustering and ground truth do not cover the same record ids");
  }

  // Links shared by a predicted cluster and a true entity are exactly the
  // pairs inside each (cluster, entity) cell of the contingency table.
  std::uint64_t predicted = 0;
  std::uint64_t shared = 0;
  for (const auto& cluster : c.clusters()) {
    predicted += choose2(cluster.size());
    std::map<std::string_view, std::uint64_t> cells;
    for (RecordId id : cluster) ++cells[*gt.entity_of(id)];
    for (const auto& [entity, n] : cells) shared += choose2(n);
  }
  std::uint64_t truth = 0;
  for (const auto& [entity, members] : gt.entities()) {
    truth += choose2(members.size());
  }

  EvaluationReport r;
  r.true_positives = shared;
  r.false_positives = predicted - shared;
  r.false_negatives = truth - shared;
  r.precision = predicted == 0 ? 1.0
                               : static_cast<double>(shared) /
                                     static_cast<double>(predicted);
  r.recall = truth == 0 ? 1.0
                        : static_cast<double>(shared) /
                              static_cast<double>(truth);
  return r;
}

std::vector<double> default_thresholds() {
  return {1.0, 0.95, 0.90, 0.85, 0.80, 0.75, 0.70};
}

std::vector<EvaluationReport> sweep(const RecordSet& records,
                                    const GroundTruth& gt,
                                    const SweepPlan& plan) {
  for (double t : plan.thresholds) {
    if (!(t >= plan.s_build && t <= 1.0)) {
      throw Error("sweep threshold " + format_double(t) + " outside [" +
                  format_double(plan.s_build) + ", 1]");
    }
  }
  const auto ids = records.ids();
  std::vector<EvaluationReport> reports;
  for (const auto& profile : plan.profiles) {
    const RecordComparator comparator(profile, records.schema());
    const auto g = build_graph(
        records, comparator,
        GraphOptions{plan.lsh, plan.s_build, plan.build_temporal});
    for (const auto& spec : plan.clusterers) {
      for (bool temporal_on : plan.temporal_modes) {
        std::optional<TemporalConstraint> constraint;
        if (temporal_on) constraint = plan.temporal;
        for (double t : plan.thresholds) {
          auto report = precision_recall(
              run_clusterer(g, ids, spec, t, constraint), gt);
          report.config = RunDescriptor{profile.name,  profile.weighted,
                                        spec.name(),   spec.methods(),
                                        temporal_on,   plan.temporal.p_min,
                                        t};
          reports.push_back(std::move(report));
        }
      }
    }
  }
  return reports;
}

std::string reports_to_json(std::span<const EvaluationReport> reports) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    doc.push_back({
        {"profile", r.config.profile},
        {"weighted", r.config.weighted},
        {"clusterer", r.config.clusterer},
        {"methods", r.config.methods},
        {"temporal", r.config.temporal},
        {"p_min", r.config.p_min},
        {"s_min", r.config.s_min},
        {"true_positives", r.true_positives},
        {"false_positives", r.false_positives},
        {"false_negatives", r.false_negatives},
        {"precision", r.precision},
        {"recall", r.recall},
    });
  }
  return doc.dump(2) + "\n";
}

std::vector<EvaluationReport> reports_from_json(const std::string& text) {
  std::vector<EvaluationReport> out;
  try {
    const auto doc = nlohmann::json::parse(text);
    for (const auto& j : doc) {
      EvaluationReport r;
      r.config.profile = j.at("profile").get<std::string>();
      r.config.weighted = j.at("weighted").get<bool>();
      r.config.clusterer = j.at("clusterer").get<std::string>();
      r.config.methods = j.at("methods").get<std::string>();
      r.config.temporal = j.at("temporal").get<bool>();
      r.config.p_min = j.at("p_min").get<double>();
      r.config.s_min = j.at("s_min").get<double>();
      r.true_positives = j.at("true_positives").get<std::uint64_t>();
      r.false_positives = j.at("false_positives").get<std::uint64_t>();
      r.false_negatives = j.at("false_negatives").get<std::uint64_t>();
      r.precision = j.at("precision").get<double>();
      r.recall = j.at("recall").get<double>();
      out.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed report JSON: ") + e.what());
  }
  return out;
}

void write_reports_csv(std::ostream& out,
                       std::span<const EvaluationReport> reports) {
  out << "profile,weighted,clusterer,methods,temporal,p_min,s_min,precision,"
         "recall,true_positives,false_positives,false_negatives\n";
  for (const auto& r : reports) {
    out << r.config.profile << ',' << (r.config.weighted ? "true" : "false")
        << ',' << r.config.clusterer << ',' << r.config.methods << ','
        << (r.config.temporal ? "on" : "off") << ','
        << format_double(r.config.p_min) << ',' << format_double(r.config.s_min)
        << ',' << format_double(r.precision) << ',' << format_double(r.recall)
        << ',' << r.true_positives << ',' << r.false_positives << ','
        << r.false_negatives << '\n';
  }
}

}  // namespace tlink
