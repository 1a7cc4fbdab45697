#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tlink/blocking.hpp"
#include "tlink/clustering.hpp"
#include "tlink/graph.hpp"
#include "tlink/greedy.hpp"
#include "tlink/records.hpp"
#include "tlink/similarity.hpp"
#include "tlink/star.hpp"
#include "tlink/temporal.hpp"

namespace tlink {

// All intra-cluster pairs, smaller id first, sorted.
std::vector<IdPair> pairwise_links(const Clustering& c);
// Same for raw clusters; throws Error if two clusters share an id.
std::vector<IdPair> pairwise_links(
    const std::vector<std::vector<RecordId>>& clusters);

// Which clustering algorithm to run and with which methods.
struct ClustererSpec {
  enum class Kind { kStar, kGreedy };

  Kind kind = Kind::kStar;
  SortMethod sort = SortMethod::kAvrSimFirst;
  ResolveMethod resolve = ResolveMethod::kAvrAll;
  SelectMethod select = SelectMethod::kAvrSim;
  bool retry_on_rejection = false;

  std::string name() const;     // "star" or "greedy"
  std::string methods() const;  // e.g. "avr-sim-first/avr-all" or "avr-sim"

  static ClustererSpec star(SortMethod s, ResolveMethod r);
  static ClustererSpec greedy(SelectMethod s, bool retry = false);
  // The nine star combinations followed by the three greedy selections.
  static std::vector<ClustererSpec> all();
};

Clustering run_clusterer(const SimilarityGraph& g,
                         std::span<const RecordId> all_ids,
                         const ClustererSpec& spec, double s_min,
                         const std::optional<TemporalConstraint>& temporal);

struct RunDescriptor {
  std::string profile;
  bool weighted = true;
  std::string clusterer;
  std::string methods;
  bool temporal = false;
  double p_min = 0.0;
  double s_min = 0.0;
  friend bool operator==(const RunDescriptor&, const RunDescriptor&) = default;
};

// Pairwise-link quality. With no predicted links precision is 1; with no true
// links recall is 1.
struct EvaluationReport {
  RunDescriptor config;
  std::uint64_t true_positives = 0;
  std::uint64_t false_positives = 0;
  std::uint64_t false_negatives = 0;
  double precision = 1.0;
  double recall = 1.0;
  friend bool operator==(const EvaluationReport&,
                         const EvaluationReport&) = default;
};

// Throws Error unless the clustering and the ground truth cover exactly the
// same ids.
EvaluationReport precision_recall(const Clustering& c, const GroundTruth& gt);

// 1.0, 0.95, ..., 0.70.
std::vector<double> default_thresholds();

struct SweepPlan {
  std::vector<ComparisonProfile> profiles;
  LshParams lsh;
  double s_build = 0.7;
  // Multiplies pair similarities by plausibility while building graphs.
  std::optional<TemporalModel> build_temporal;
  std::vector<ClustererSpec> clusterers;
  std::vector<bool> temporal_modes = {false, true};
  TemporalConstraint temporal;  // used for the temporal-on runs
  std::vector<double> thresholds = default_thresholds();
};

// One report per profile x clusterer x temporal mode x threshold, in that
// nesting order. Each profile's graph is built once at s_build. Throws Error
// for thresholds outside [s_build, 1].
std::vector<EvaluationReport> sweep(const RecordSet& records,
                                    const GroundTruth& gt,
                                    const SweepPlan& plan);

std::string reports_to_json(std::span<const EvaluationReport> reports);
std::vector<EvaluationReport> reports_from_json(const std::string& text);
// Flat PR-curve table, one row per report.
void write_reports_csv(std::ostream& out,
                       std::span<const EvaluationReport> reports);

}  // namespace tlink
