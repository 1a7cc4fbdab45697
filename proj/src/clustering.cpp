#include "tlink/clustering.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <unordered_set>

#include "csv.hpp"

namespace tlink {

Clustering::Clustering(std::vector<std::vector<RecordId>> clusters)
    : clusters_(std::move(clusters)) {
  std::unordered_set<RecordId> seen;
  for (auto& c : clusters_) {
    if (c.empty()) throw Error("clustering contains an empty cluster");
    std::sort(c.begin(), c.end());
    for (RecordId id : c) {
      if (!seen.insert(id).second) {
        throw Error("record " + std::to_string(id) +
                    " appears in more than one cluster");
      }
    }
  }
  std::sort(clusters_.begin(), clusters_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

std::vector<RecordId> Clustering::ids() const {
  std::vector<RecordId> out;
  for (const auto& c : clusters_) out.insert(out.end(), c.begin(), c.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<RecordId>> add_singletons(
    std::vector<std::vector<RecordId>> clusters,
    std::span<const RecordId> universe) {
  const std::unordered_set<RecordId> all(universe.begin(), universe.end());
  std::unordered_set<RecordId> covered;
  for (const auto& c : clusters) {
    for (RecordId id : c) {
      if (!all.contains(id)) {
        throw Error("clustered id " + std::to_string(id) +
                    " is not among the records");
      }
      covered.insert(id);
    }
  }
  for (RecordId id : universe) {
    if (!covered.contains(id)) {
      clusters.push_back({id});
      covered.insert(id);
    }
  }
  return clusters;
}

void write_clustering(std::ostream& out, const Clustering& c) {
  std::map<RecordId, std::size_t> label;
  for (std::size_t k = 0; k < c.clusters().size(); ++k) {
    for (RecordId id : c.clusters()[k]) label.emplace(id, k);
  }
  out << "id,cluster\n";
  for (const auto& [id, k] : label) out << id << ',' << k << '\n';
}

Clustering read_clustering(std::istream& in) {
  std::map<std::string, std::vector<RecordId>> groups;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    const auto text = csv::strip_cr(line);
    if (text.empty()) continue;
    const auto fields = csv::split(text, ',');
    if (fields.size() != 2) {
      throw Error("clustering row " + std::to_string(row) +
                  ": expected 2 fields");
    }
    RecordId id = 0;
    const auto& s = fields[0].text;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), id);
    if (s.empty() || ec != std::errc{} || p != s.data() + s.size()) {
      if (row == 1) continue;
      throw Error("clustering row " + std::to_string(row) + ": bad id '" + s +
                  "'");
    }
    groups[fields[1].text].push_back(id);
  }
  std::vector<std::vector<RecordId>> clusters;
  for (auto& [label, ids] : groups) clusters.push_back(std::move(ids));
  return Clustering(std::move(clusters));
}

}  // namespace tlink
