#pragma once

// Temporal star clustering.
//
// Every graph node gets a tuple (degree, similar neighbours, mean similarity)
// computed over its edges of weight >= s_min. Tuples are ordered by a sort
// method and processed in that order: the first still-unassigned node becomes
// a centre, and the star grows by repeatedly taking the neighbour of the
// centre with the highest mean similarity to the current members, admitting
// it only when it is temporally plausible with every member. Admitted nodes
// can no longer become centres but may still join later stars; such repeated
// nodes are finally assigned to a single cluster by an overlap-resolution
// method.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tlink/clustering.hpp"
#include "tlink/graph.hpp"
#include "tlink/temporal.hpp"

namespace tlink {

enum class SortMethod { kAvrSimFirst, kDegreeFirst, kComb };
enum class ResolveMethod { kAvrAll, kAvrHigh, kEdgeRatio };

std::string_view to_string(SortMethod m);
std::string_view to_string(ResolveMethod m);
SortMethod parse_sort_method(std::string_view name);
ResolveMethod parse_resolve_method(std::string_view name);

struct NodeTuple {
  RecordId id = 0;
  std::size_t degree = 0;
  std::vector<RecordId> neighbours;  // ascending
  double avg_similarity = 0.0;
};

// One tuple per graph node, in ascending id order.
std::vector<NodeTuple> make_tuples(const SimilarityGraph& g, double s_min);

// Orders tuples best-centre-first:
//   avr-sim-first: mean similarity desc, degree desc, id asc
//   degree-first:  degree desc, mean similarity desc, id asc
//   comb:          mean similarity * ln(degree) desc, mean similarity desc,
//                  id asc
void sort_unassigned(std::vector<NodeTuple>& tuples, SortMethod method);

// The candidate with the highest mean weight over its edges (>= s_min) into
// `cluster`; ties go to the lower id. Throws Error for an empty candidate set.
RecordId next_best_neighbour(const SimilarityGraph& g,
                             std::span<const RecordId> cluster,
                             std::span<const RecordId> candidates,
                             double s_min = 0.0);

struct Star {
  RecordId centre = 0;
  std::vector<RecordId> members;  // centre first, then in admission order
};

struct StarOptions {
  double s_min = 0.7;
  SortMethod sort = SortMethod::kAvrSimFirst;
  ResolveMethod resolve = ResolveMethod::kAvrAll;
  std::optional<TemporalConstraint> temporal;
};

// Grows the stars without resolving overlaps. Earlier centres are never
// admitted to later stars.
std::vector<Star> grow_stars(const SimilarityGraph& g,
                             const StarOptions& options);

// Score of placing `node` in `members` (which contains it) under `method`.
double overlap_score(const SimilarityGraph& g, RecordId node,
                     std::span<const RecordId> members, ResolveMethod method,
                     double s_min);

// Leaves every node repeated across stars only in its best-scoring star.
// Scores are computed against the stars as grown. Ties go to the star where
// the node has more edges of weight >= s_min, then to the lower centre id.
std::vector<Star> resolve_overlaps(std::vector<Star> stars,
                                   const SimilarityGraph& g,
                                   ResolveMethod method, double s_min);

// Full star clustering; records of `all_ids` absent from the graph become
// singletons. Throws Error if s_min is below the graph's minimum similarity.
Clustering star_cluster(const SimilarityGraph& g,
                        std::span<const RecordId> all_ids,
                        const StarOptions& options);

}  // namespace tlink
