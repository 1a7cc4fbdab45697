#pragma once

// Greedy temporal clustering.
//
// The similarity graph is directed from earlier to later records. Every
// connected node starts as a singleton cluster in a queue ordered by the date
// of each cluster's latest member. The earliest cluster is repeatedly popped
// and extended with one unassigned future neighbour chosen by a selection
// method; a temporally plausible extension is requeued, an implausible one (or
// a cluster with no candidates left) is finalised.

#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tlink/clustering.hpp"
#include "tlink/graph.hpp"
#include "tlink/temporal.hpp"

namespace tlink {

enum class SelectMethod { kNext, kMaxSim, kAvrSim };

std::string_view to_string(SelectMethod m);
SelectMethod parse_select_method(std::string_view name);

// Edges point from the earlier record to the later one; equal dates point from
// the lower id to the higher.
class DirectedTemporalGraph {
 public:
  std::vector<RecordId> nodes() const;
  Date date(RecordId id) const;
  std::span<const Neighbour> out(RecordId id) const;
  std::span<const Neighbour> in(RecordId id) const;
  std::size_t edge_count() const { return edge_count_; }

 private:
  friend DirectedTemporalGraph to_directed(const SimilarityGraph&, double);

  struct Node {
    Date date;
    std::vector<Neighbour> out;
    std::vector<Neighbour> in;
  };
  const Node& node(RecordId id) const;

  std::map<RecordId, Node> nodes_;
  std::size_t edge_count_ = 0;
};

// Keeps every node of g but only edges of weight >= s_min.
DirectedTemporalGraph to_directed(const SimilarityGraph& g,
                                  double s_min = 0.0);

// Picks from `candidates` (each the target of at least one edge leaving
// `cluster`):
//   next:    earliest date
//   max-sim: highest single edge weight from a member
//   avr-sim: highest mean weight over the edges from members
// Ties go to the lower id. Throws Error if candidates is empty.
RecordId select_next(std::span<const RecordId> cluster,
                     std::span<const RecordId> candidates,
                     const DirectedTemporalGraph& g, SelectMethod method);

struct GreedyOptions {
  double s_min = 0.7;
  SelectMethod select = SelectMethod::kAvrSim;
  std::optional<TemporalConstraint> temporal;
  // Try the next best candidate after a temporal rejection instead of
  // finalising the cluster.
  bool retry_on_rejection = false;
};

// Records of `all_ids` absent from the graph become singletons. Throws Error
// if s_min is below the graph's minimum similarity.
Clustering greedy_cluster(const SimilarityGraph& g,
                          std::span<const RecordId> all_ids,
                          const GreedyOptions& options);

}  // namespace tlink
