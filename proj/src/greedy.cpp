#include "tlink/greedy.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_map>

namespace tlink {

std::string_view to_string(SelectMethod m) {
  switch (m) {
    case SelectMethod::kNext: return "next";
    case SelectMethod::kMaxSim: return "max-sim";
    case SelectMethod::kAvrSim: return "avr-sim";
  }
  return "?";
}

SelectMethod parse_select_method(std::string_view name) {
  if (name == "next") return SelectMethod::kNext;
  if (name == "max-sim") return SelectMethod::kMaxSim;
  if (name == "avr-sim") return SelectMethod::kAvrSim;
  throw Error("unknown select method '" + std::string(name) + "'");
}

std::vector<RecordId> DirectedTemporalGraph::nodes() const {
  std::vector<RecordId> out;
  out.reserve(nodes_.size());
  for (const auto& [id, n] : nodes_) out.push_back(id);
  return out;
}

const DirectedTemporalGraph::Node& DirectedTemporalGraph::node(
    RecordId id) const {
  const auto it = nodes_.find(id);
  if (it == nodes_.end()) {
    throw Error("node " + std::to_string(id) + " is not in the graph");
  }
  return it->second;
}

Date DirectedTemporalGraph::date(RecordId id) const { return node(id).date; }

std::span<const Neighbour> DirectedTemporalGraph::out(RecordId id) const {
  return node(id).out;
}

std::span<const Neighbour> DirectedTemporalGraph::in(RecordId id) const {
  return node(id).in;
}

DirectedTemporalGraph to_directed(const SimilarityGraph& g, double s_min) {
  DirectedTemporalGraph d;
  for (RecordId v : g.nodes()) d.nodes_[v].date = g.date(v);
  for (const auto& e : g.edges()) {
    if (e.weight < s_min) continue;
    const Date da = d.nodes_[e.a].date;
    const Date db = d.nodes_[e.b].date;
    // edges() yields a < b, so equal dates already point lower -> higher.
    const bool forward = da <= db;
    const RecordId from = forward ? e.a : e.b;
    const RecordId to = forward ? e.b : e.a;
    d.nodes_[from].out.push_back({to, e.weight});
    d.nodes_[to].in.push_back({from, e.weight});
    ++d.edge_count_;
  }
  return d;
}

namespace {

struct CandidateStats {
  double sum = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

// Aggregates the edges leaving `cluster` towards each of `candidates`.
std::map<RecordId, CandidateStats> candidate_stats(
    std::span<const RecordId> cluster, std::span<const RecordId> candidates,
    const DirectedTemporalGraph& g) {
  std::map<RecordId, CandidateStats> stats;
  for (RecordId c : candidates) stats.emplace(c, CandidateStats{});
  for (RecordId m : cluster) {
    for (const auto& n : g.out(m)) {
      const auto it = stats.find(n.id);
      if (it == stats.end()) continue;
      it->second.sum += n.weight;
      it->second.max = std::max(it->second.max, n.weight);
      ++it->second.count;
    }
  }
  return stats;
}

}  // namespace

RecordId select_next(std::span<const RecordId> cluster,
                     std::span<const RecordId> candidates,
                     const DirectedTemporalGraph& g, SelectMethod method) {
  if (candidates.empty()) throw Error("no candidates to select from");
  const auto stats = candidate_stats(cluster, candidates, g);

  // std::map iterates ids ascending, so strict improvements keep the lower id
  // on ties.
  RecordId best = stats.begin()->first;
  auto key = [&](RecordId id, const CandidateStats& s) {
    switch (method) {
      case SelectMethod::kNext:
        return -static_cast<double>(g.date(id).days());
      case SelectMethod::kMaxSim: return s.max;
      case SelectMethod::kAvrSim:
        return s.count == 0 ? 0.0 : s.sum / static_cast<double>(s.count);
    }
    return 0.0;
  };
  double best_key = key(best, stats.begin()->second);
  for (const auto& [id, s] : stats) {
    const double k = key(id, s);
    if (k > best_key) {
      best = id;
      best_key = k;
    }
  }
  return best;
}

Clustering greedy_cluster(const SimilarityGraph& g,
                          std::span<const RecordId> all_ids,
                          const GreedyOptions& options) {
  if (options.s_min < g.min_similarity()) {
    throw Error("greedy clustering s_min is below the graph's build threshold");
  }
  const auto dg = to_directed(g, options.s_min);

  struct Key {
    Date latest;
    RecordId smallest;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, std::vector<RecordId>> queue;
  std::set<RecordId> pending;  // nodes still sitting in their own singleton
  std::vector<std::vector<RecordId>> done;

  for (RecordId v : dg.nodes()) {
    if (dg.in(v).empty() && dg.out(v).empty()) {
      done.push_back({v});
    } else {
      queue.emplace(Key{dg.date(v), v}, std::vector<RecordId>{v});
      pending.insert(v);
    }
  }

  while (!queue.empty()) {
    auto node = queue.extract(queue.begin());
    std::vector<RecordId> members = std::move(node.mapped());
    for (RecordId m : members) pending.erase(m);

    std::set<RecordId> outgoing;
    for (RecordId m : members) {
      for (const auto& n : dg.out(m)) {
        if (pending.contains(n.id)) outgoing.insert(n.id);
      }
    }

    std::vector<Date> dates;
    dates.reserve(members.size());
    for (RecordId m : members) dates.push_back(dg.date(m));

    bool extended = false;
    while (!outgoing.empty()) {
      const std::vector<RecordId> candidates(outgoing.begin(), outgoing.end());
      const RecordId next = select_next(members, candidates, dg, options.select);
      const Date t = dg.date(next);
      if (cluster_plausible(options.temporal, t, dates)) {
        queue.erase(Key{t, next});
        pending.erase(next);
        members.push_back(next);
        const Date latest = std::max(t, node.key().latest);
        const RecordId smallest = std::min(next, node.key().smallest);
        queue.emplace(Key{latest, smallest}, std::move(members));
        extended = true;
        break;
      }
      if (!options.retry_on_rejection) break;
      outgoing.erase(next);
    }
    if (!extended) done.push_back(std::move(members));
  }

  return Clustering(add_singletons(std::move(done), all_ids));
}

}  // namespace tlink
