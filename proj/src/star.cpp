#include "tlink/star.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace tlink {

std::string_view to_string(SortMethod m) {
  switch (m) {
    case SortMethod::kAvrSimFirst: return "avr-sim-first";
    case SortMethod::kDegreeFirst: return "degree-first";
    case SortMethod::kComb: return "comb";
  }
  return "?";
}

std::string_view to_string(ResolveMethod m) {
  switch (m) {
    case ResolveMethod::kAvrAll: return "avr-all";
    case ResolveMethod::kAvrHigh: return "avr-high";
    case ResolveMethod::kEdgeRatio: return "edge-ratio";
  }
  return "?";
}

SortMethod parse_sort_method(std::string_view name) {
  if (name == "avr-sim-first") return SortMethod::kAvrSimFirst;
  if (name == "degree-first") return SortMethod::kDegreeFirst;
  if (name == "comb") return SortMethod::kComb;
  throw Error("unknown sort method '" + std::string(name) + "'");
}

ResolveMethod parse_resolve_method(std::string_view name) {
  if (name == "avr-all") return ResolveMethod::kAvrAll;
  if (name == "avr-high") return ResolveMethod::kAvrHigh;
  if (name == "edge-ratio") return ResolveMethod::kEdgeRatio;
  throw Error("unknown resolve method '" + std::string(name) + "'");
}

std::vector<NodeTuple> make_tuples(const SimilarityGraph& g, double s_min) {
  std::vector<NodeTuple> tuples;
  tuples.reserve(g.node_count());
  for (RecordId v : g.nodes()) {
    NodeTuple t;
    t.id = v;
    t.neighbours = sim_neighbours(g, v, s_min);
    t.degree = t.neighbours.size();
    t.avg_similarity = avg_neighbour_similarity(g, v, t.neighbours);
    tuples.push_back(std::move(t));
  }
  return tuples;
}

void sort_unassigned(std::vector<NodeTuple>& tuples, SortMethod method) {
  auto comb = [](const NodeTuple& t) {
    return t.degree == 0
               ? 0.0
               : t.avg_similarity * std::log(static_cast<double>(t.degree));
  };
  auto before = [&](const NodeTuple& x, const NodeTuple& y) {
    switch (method) {
      case SortMethod::kAvrSimFirst:
        if (x.avg_similarity != y.avg_similarity) {
          return x.avg_similarity > y.avg_similarity;
        }
        if (x.degree != y.degree) return x.degree > y.degree;
        break;
      case SortMethod::kDegreeFirst:
        if (x.degree != y.degree) return x.degree > y.degree;
        if (x.avg_similarity != y.avg_similarity) {
          return x.avg_similarity > y.avg_similarity;
        }
        break;
      case SortMethod::kComb: {
        const double cx = comb(x);
        const double cy = comb(y);
        if (cx != cy) return cx > cy;
        if (x.avg_similarity != y.avg_similarity) {
          return x.avg_similarity > y.avg_similarity;
        }
        break;
      }
    }
    return x.id < y.id;
  };
  std::sort(tuples.begin(), tuples.end(), before);
}

RecordId next_best_neighbour(const SimilarityGraph& g,
                             std::span<const RecordId> cluster,
                             std::span<const RecordId> candidates,
                             double s_min) {
  if (candidates.empty()) throw Error("no candidate neighbours to choose from");
  RecordId best = 0;
  double best_score = -1.0;
  for (RecordId c : candidates) {
    double sum = 0.0;
    std::size_t n = 0;
    for (RecordId m : cluster) {
      const auto w = g.weight(c, m);
      if (w && *w >= s_min) {
        sum += *w;
        ++n;
      }
    }
    const double score = n == 0 ? 0.0 : sum / static_cast<double>(n);
    if (score > best_score || (score == best_score && c < best)) {
      best = c;
      best_score = score;
    }
  }
  return best;
}

std::vector<Star> grow_stars(const SimilarityGraph& g,
                             const StarOptions& options) {
  auto tuples = make_tuples(g, options.s_min);
  sort_unassigned(tuples, options.sort);

  std::unordered_set<RecordId> assigned;
  std::unordered_set<RecordId> centres;
  std::vector<Star> stars;
  for (const auto& t : tuples) {
    if (assigned.contains(t.id)) continue;
    assigned.insert(t.id);
    centres.insert(t.id);

    Star star{t.id, {t.id}};
    std::vector<Date> dates{g.date(t.id)};
    std::vector<RecordId> candidates;
    for (RecordId n : t.neighbours) {
      if (!centres.contains(n)) candidates.push_back(n);
    }
    while (!candidates.empty()) {
      const RecordId next =
          next_best_neighbour(g, star.members, candidates, options.s_min);
      std::erase(candidates, next);
      const Date d = g.date(next);
      if (cluster_plausible(options.temporal, d, dates)) {
        star.members.push_back(next);
        dates.push_back(d);
        assigned.insert(next);
      }
    }
    stars.push_back(std::move(star));
  }
  return stars;
}

double overlap_score(const SimilarityGraph& g, RecordId node,
                     std::span<const RecordId> members, ResolveMethod method,
                     double s_min) {
  double sum = 0.0;
  std::size_t similar = 0;
  std::size_t others = 0;
  for (RecordId m : members) {
    if (m == node) continue;
    ++others;
    const auto w = g.weight(node, m);
    if (w && *w >= s_min) {
      sum += *w;
      ++similar;
    }
  }
  switch (method) {
    case ResolveMethod::kAvrAll:
      return others == 0 ? 0.0 : sum / static_cast<double>(others);
    case ResolveMethod::kAvrHigh:
      return similar == 0 ? 0.0 : sum / static_cast<double>(similar);
    case ResolveMethod::kEdgeRatio:
      return others == 0 ? 0.0
                         : static_cast<double>(similar) /
                               static_cast<double>(others);
  }
  return 0.0;
}

std::vector<Star> resolve_overlaps(std::vector<Star> stars,
                                   const SimilarityGraph& g,
                                   ResolveMethod method, double s_min) {
  std::map<RecordId, std::vector<std::size_t>> homes;
  for (std::size_t k = 0; k < stars.size(); ++k) {
    for (RecordId m : stars[k].members) homes[m].push_back(k);
  }

  std::unordered_map<RecordId, std::size_t> winner;
  for (const auto& [node, in] : homes) {
    if (in.size() < 2) continue;
    std::size_t best = in.front();
    double best_score = -1.0;
    std::size_t best_edges = 0;
    for (std::size_t k : in) {
      const auto& members = stars[k].members;
      const double score = overlap_score(g, node, members, method, s_min);
      const auto edges = static_cast<std::size_t>(
          std::count_if(members.begin(), members.end(), [&](RecordId m) {
            const auto w = g.weight(node, m);
            return m != node && w && *w >= s_min;
          }));
      const bool better =
          score > best_score ||
          (score == best_score &&
           (edges > best_edges ||
            (edges == best_edges && stars[k].centre < stars[best].centre)));
      if (better) {
        best = k;
        best_score = score;
        best_edges = edges;
      }
    }
    winner.emplace(node, best);
  }

  for (std::size_t k = 0; k < stars.size(); ++k) {
    std::erase_if(stars[k].members, [&](RecordId m) {
      const auto it = winner.find(m);
      return it != winner.end() && it->second != k;
    });
  }
  return stars;
}

Clustering star_cluster(const SimilarityGraph& g,
                        std::span<const RecordId> all_ids,
                        const StarOptions& options) {
  if (options.s_min < g.min_similarity()) {
    throw Error("star clustering s_min is below the graph's build threshold");
  }
  auto stars = resolve_overlaps(grow_stars(g, options), g, options.resolve,
                                options.s_min);
  std::vector<std::vector<RecordId>> clusters;
  clusters.reserve(stars.size());
  for (auto& s : stars) clusters.push_back(std::move(s.members));
  return Clustering(add_singletons(std::move(clusters), all_ids));
}

}  // namespace tlink
