#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../fixtures.hpp"
#include "tlink/clustering.hpp"
#include "tlink/graph.hpp"
#include "tlink/records.hpp"

namespace support {

using fixtures::day;
using tlink::RecordId;

// Random graph over ids 1..n with dates spread across `span_days` and edge
// weights in [0.7, 1].
inline tlink::SimilarityGraph random_graph(std::mt19937_64& rng, int n,
                                           double density,
                                           std::int32_t span_days) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<tlink::Date> dates;
  for (int i = 0; i < n; ++i) {
    dates.push_back(day(static_cast<std::int32_t>(rng() % span_days)));
  }
  tlink::SimilarityGraph g(0.7);
  for (int i = 0; i < n; ++i) {
    g.add_node(static_cast<RecordId>(i + 1), dates[i]);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (unit(rng) < density) {
        // Two decimals so that ties actually occur.
        const double w = 0.7 + static_cast<double>(rng() % 31) / 100.0;
        g.add_edge(i + 1, dates[i], j + 1, dates[j], w);
      }
    }
  }
  return g;
}

inline std::vector<RecordId> iota_ids(int n) {
  std::vector<RecordId> ids;
  for (int i = 1; i <= n; ++i) ids.push_back(static_cast<RecordId>(i));
  return ids;
}

inline std::string clustering_text(const tlink::Clustering& c) {
  std::ostringstream out;
  tlink::write_clustering(out, c);
  return out.str();
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("tlink-unit-" + tag + "-" +
             std::to_string(std::random_device{}()));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// A record on the standard schema with the given (column, value) pairs set.
inline tlink::Record make_record(
    RecordId id, tlink::Date date,
    const std::vector<std::pair<std::string, std::string>>& values) {
  const auto& schema = tlink::standard_schema();
  tlink::Record r{id, date, std::vector<std::optional<std::string>>(schema.size())};
  for (const auto& [name, value] : values) r.values[schema.require(name)] = value;
  return r;
}

}  // namespace support
