#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "tlink/blocking.hpp"
#include "tlink/records.hpp"
#include "tlink/similarity.hpp"
#include "tlink/temporal.hpp"

namespace tlink {

struct Neighbour {
  RecordId id = 0;
  double weight = 0.0;
};

struct Edge {
  RecordId a = 0;  // a < b
  RecordId b = 0;
  double weight = 0.0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected weighted graph over records. Every edge weight is at least
// min_similarity(); nodes carry their record's date.
class SimilarityGraph {
 public:
  explicit SimilarityGraph(double min_similarity = 0.7);

  double min_similarity() const { return min_similarity_; }

  // Inserts both endpoints and the edge. A repeated edge keeps the larger
  // weight. Throws Error on self-loops, weights below min_similarity() or
  // weights above 1, and when a node is re-added with a different date.
  void add_edge(RecordId a, Date date_a, RecordId b, Date date_b,
                double weight);
  // Adds a node without edges.
  void add_node(RecordId id, Date date);

  bool contains(RecordId id) const { return nodes_.contains(id); }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  // Ascending node ids.
  std::vector<RecordId> nodes() const;
  Date date(RecordId id) const;
  // Neighbours of `id` sorted by id. Throws Error for unknown ids.
  std::span<const Neighbour> neighbours(RecordId id) const;
  std::optional<double> weight(RecordId a, RecordId b) const;
  // All edges sorted by (a, b).
  std::vector<Edge> edges() const;

  // Copy keeping only edges of weight >= s_min. Nodes left without edges are
  // dropped, mirroring how the graph is built.
  SimilarityGraph filtered(double s_min) const;

 private:
  struct Node {
    Date date;
    std::vector<Neighbour> adjacent;  // sorted by id
  };

  const Node& node(RecordId id) const;

  double min_similarity_;
  std::map<RecordId, Node> nodes_;
  std::size_t edge_count_ = 0;
};

struct GraphOptions {
  LshParams lsh;
  double min_similarity = 0.7;
  // When set, each pair's similarity is multiplied by its plausibility before
  // the threshold test.
  std::optional<TemporalModel> temporal;
};

// Blocks the records, scores every candidate pair and keeps those reaching
// options.min_similarity. Throws Error unless 0 < min_similarity <= 1.
SimilarityGraph build_graph(const RecordSet& records,
                            const RecordComparator& comparator,
                            const GraphOptions& options);

// Neighbours of v whose edge weight is at least s_min, ascending by id.
std::vector<RecordId> sim_neighbours(const SimilarityGraph& g, RecordId v,
                                     double s_min);

// Mean weight of the edges from v to `neighbours`; 0 for an empty set.
// Throws Error if some listed node is not adjacent to v.
double avg_neighbour_similarity(const SimilarityGraph& g, RecordId v,
                                std::span<const RecordId> neighbours);

// Three columns (id_i, id_j, weight) with a header row; weights printed with
// round-trip precision.
void write_graph(std::ostream& out, const SimilarityGraph& g);
// Reads a graph file; node dates are looked up in `records`.
SimilarityGraph read_graph(std::istream& in, const RecordSet& records,
                           double min_similarity);

}  // namespace tlink
