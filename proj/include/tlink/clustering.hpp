#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "tlink/records.hpp"

namespace tlink {

// A partition of record ids into entity clusters, held in canonical form:
// members ascending, clusters ordered by their smallest member.
class Clustering {
 public:
  Clustering() = default;
  // Canonicalises. Throws Error if a cluster is empty or an id appears twice.
  explicit Clustering(std::vector<std::vector<RecordId>> clusters);

  const std::vector<std::vector<RecordId>>& clusters() const {
    return clusters_;
  }
  std::size_t size() const { return clusters_.size(); }
  // Every clustered id, ascending.
  std::vector<RecordId> ids() const;

  friend bool operator==(const Clustering&, const Clustering&) = default;

 private:
  std::vector<std::vector<RecordId>> clusters_;
};

// Adds a singleton for each id of `universe` not yet covered. Throws Error if
// `clusters` mentions an id outside the universe.
std::vector<std::vector<RecordId>> add_singletons(
    std::vector<std::vector<RecordId>> clusters,
    std::span<const RecordId> universe);

// Two columns (record id, cluster id) sorted by record id; cluster ids are the
// canonical cluster indices.
void write_clustering(std::ostream& out, const Clustering& c);
Clustering read_clustering(std::istream& in);

}  // namespace tlink
