#pragma once

// Small hand-built graphs shared by the unit tests and the acceptance suite,
// with expected clusterings worked out by hand from the algorithm
// descriptions (see the trace comments below).

#include <cstdint>
#include <string>
#include <vector>

#include "tlink/clustering.hpp"
#include "tlink/eval.hpp"
#include "tlink/graph.hpp"
#include "tlink/star.hpp"

namespace fixtures {

using tlink::RecordId;

inline tlink::Date day(std::int32_t offset) {
  return tlink::Date::from_ymd(1860, 1, 1).plus_days(offset);
}

struct NodeSpec {
  RecordId id;
  std::int32_t day;
};

struct EdgeSpec {
  RecordId a;
  RecordId b;
  double weight;
};

struct GoldenGraph {
  std::string name;
  std::vector<NodeSpec> nodes;
  std::vector<EdgeSpec> edges;

  tlink::SimilarityGraph graph(double min_similarity = 0.7) const {
    tlink::SimilarityGraph g(min_similarity);
    auto date_of = [&](RecordId id) {
      for (const auto& n : nodes) {
        if (n.id == id) return day(n.day);
      }
      return day(0);
    };
    for (const auto& n : nodes) g.add_node(n.id, day(n.day));
    for (const auto& e : edges) {
      g.add_edge(e.a, date_of(e.a), e.b, date_of(e.b), e.weight);
    }
    return g;
  }

  std::vector<RecordId> ids() const {
    std::vector<RecordId> out;
    for (const auto& n : nodes) out.push_back(n.id);
    return out;
  }
};

using Clusters = std::vector<std::vector<RecordId>>;

// Star fixture where the three sort methods pick different centres first.
// Nodes 1..7 are 400 days apart (all pairs plausible); node 8 lies more than
// 40 years after every other node.
//
// Tuples at s_min 0.7 (degree, mean):
//   1 (1, .99)   2 (3, .9633)  3 (4, .7375)  4 (2, .835)
//   5 (2, .84)   6 (3, .8)     7 (3, .8)     8 (2, .85)
// avr-sim-first order: 1 2 8 5 4 6 7 3
// degree-first order:  3 2 6 7 8 5 4 1
// comb order:          2 3 6 7 8 5 4 1
inline GoldenGraph star_sorting() {
  return {"star-sorting",
          {{1, 0}, {2, 400}, {3, 800}, {4, 1200}, {5, 1600}, {6, 2000},
           {7, 2400}, {8, 20000}},
          {{1, 2, 0.99},
           {2, 4, 0.95},
           {2, 5, 0.95},
           {3, 4, 0.72},
           {3, 5, 0.73},
           {3, 6, 0.75},
           {3, 7, 0.75},
           {6, 7, 0.80},
           {6, 8, 0.85},
           {7, 8, 0.85}}};
}

// Star fixture where node 2 ends up in several stars and the resolution
// methods disagree. Node 5 is registered 100 days after node 4, which the
// default temporal model rules out.
//
// Tuples: 1 (2, .925)  2 (3, .85)  3 (2, .8)  4 (3, .8533)  5 (2, .825)
//         6 (2, .805)
// avr-sim-first order: 1 4 2 5 6 3; degree-first and comb: 4 2 1 5 6 3
inline GoldenGraph star_overlap() {
  return {"star-overlap",
          {{1, 0}, {2, 400}, {3, 800}, {4, 1200}, {5, 1300}, {6, 1700}},
          {{1, 2, 0.95},
           {1, 3, 0.90},
           {2, 4, 0.80},
           {2, 5, 0.80},
           {4, 5, 0.85},
           {4, 6, 0.91},
           {3, 6, 0.70}}};
}

// Greedy fixture. Node 6 is 100 days after node 5 (implausible) and node 7
// is 38 to 44 years after everything else (plausibility below 0.5 for every
// pair).
inline GoldenGraph greedy_chain() {
  return {"greedy-chain",
          {{1, 0}, {2, 500}, {3, 1000}, {4, 1500}, {5, 2000}, {6, 2100},
           {7, 16000}},
          {{1, 2, 0.90},
           {1, 3, 0.88},
           {1, 4, 0.72},
           {1, 5, 0.70},
           {2, 3, 0.86},
           {2, 5, 0.95},
           {3, 4, 0.85},
           {4, 6, 0.88},
           {5, 6, 0.90},
           {4, 7, 0.93}}};
}

// Mirrors the selection example: cluster {1,2,3}; candidate 4 is the
// earliest (edge 0.75 from 3), 5 has the single strongest edge (0.95 from 1,
// 0.72 from 2), 6 has the best mean (0.9 from each member).
inline GoldenGraph greedy_selection() {
  return {"greedy-selection",
          {{1, 0}, {2, 400}, {3, 800}, {4, 1200}, {5, 1600}, {6, 2000}},
          {{1, 2, 0.90},
           {2, 3, 0.90},
           {3, 4, 0.75},
           {1, 5, 0.95},
           {2, 5, 0.72},
           {1, 6, 0.90},
           {2, 6, 0.90},
           {3, 6, 0.90}}};
}

struct StarGolden {
  std::string graph;
  tlink::SortMethod sort;
  tlink::ResolveMethod resolve;
  bool temporal;
  // Stars as grown: centre first, then members in admission order.
  Clusters grown;
  Clusters expected;
};

struct GreedyGolden {
  std::string graph;
  tlink::SelectMethod select;
  bool temporal;
  Clusters expected;
};

inline GoldenGraph golden_graph(const std::string& name) {
  if (name == "star-sorting") return star_sorting();
  if (name == "star-overlap") return star_overlap();
  if (name == "greedy-selection") return greedy_selection();
  return greedy_chain();
}

// Hand traces at s_min 0.7, p_min 0.5.
inline std::vector<StarGolden> star_goldens() {
  using S = tlink::SortMethod;
  using R = tlink::ResolveMethod;
  std::vector<StarGolden> out;

  // star-sorting, avr-sim-first, no temporal:
  //   centre 1 takes 2; centre 8 takes 6 (tie with 7, lower id) then 7;
  //   centre 5 takes 2 then 3; centre 4 (still unassigned) takes 2 then 3.
  //   Node 2 scores best in {1,2} under every method. Node 3: avr-all
  //   .365 (star 5) vs .36 (star 4), avr-high .73 vs .72, edge-ratio .5 vs
  //   .5 with one similar edge each, so the lower centre (4) wins.
  const Clusters sort_asf_grown = {{1, 2}, {8, 6, 7}, {5, 2, 3}, {4, 2, 3}};
  out.push_back({"star-sorting", S::kAvrSimFirst, R::kAvrAll, false,
                 sort_asf_grown, {{1, 2}, {3, 5}, {4}, {6, 7, 8}}});
  out.push_back({"star-sorting", S::kAvrSimFirst, R::kAvrHigh, false,
                 sort_asf_grown, {{1, 2}, {3, 5}, {4}, {6, 7, 8}}});
  out.push_back({"star-sorting", S::kAvrSimFirst, R::kEdgeRatio, false,
                 sort_asf_grown, {{1, 2}, {3, 4}, {5}, {6, 7, 8}}});

  // With the temporal model node 8 rejects 6 and 7 and stays alone; 6 later
  //   founds a star with 7 and 3 (8 is an earlier centre, so excluded).
  //   Node 3 scores .75 / .75 / 1 in star 6, the best under every method.
  const Clusters sort_asf_grown_t = {
      {1, 2}, {8}, {5, 2, 3}, {4, 2, 3}, {6, 7, 3}};
  for (auto r : {R::kAvrAll, R::kAvrHigh, R::kEdgeRatio}) {
    out.push_back({"star-sorting", S::kAvrSimFirst, r, true, sort_asf_grown_t,
                   {{1, 2}, {3, 6, 7}, {4}, {5}, {8}}});
  }

  // degree-first: centre 3 takes 6 (tie with 7), 7, 5, 4; centre 2 takes 1,
  //   4 (tie with 5), 5; centre 8 takes 6 then 7. Nodes 4 and 5 score best
  //   with star 2 and nodes 6 and 7 with star 8 under every method.
  const Clusters sort_df_grown = {{3, 6, 7, 5, 4}, {2, 1, 4, 5}, {8, 6, 7}};
  // comb grows the same stars with centre 2 first.
  const Clusters sort_comb_grown = {{2, 1, 4, 5}, {3, 6, 7, 5, 4}, {8, 6, 7}};
  for (auto r : {R::kAvrAll, R::kAvrHigh, R::kEdgeRatio}) {
    out.push_back({"star-sorting", S::kDegreeFirst, r, false, sort_df_grown,
                   {{1, 2, 4, 5}, {3}, {6, 7, 8}}});
    out.push_back({"star-sorting", S::kComb, r, false, sort_comb_grown,
                   {{1, 2, 4, 5}, {3}, {6, 7, 8}}});
    // Temporal: star 8 stays {8}, so 6 and 7 remain with centre 3.
    out.push_back({"star-sorting", S::kDegreeFirst, r, true,
                   {{3, 6, 7, 5, 4}, {2, 1, 4, 5}, {8}},
                   {{1, 2, 4, 5}, {3, 6, 7}, {8}}});
    out.push_back({"star-sorting", S::kComb, r, true,
                   {{2, 1, 4, 5}, {3, 6, 7, 5, 4}, {8}},
                   {{1, 2, 4, 5}, {3, 6, 7}, {8}}});
  }

  // star-overlap, no temporal. Every sort grows {1,2,3} and {4,6,5,2}.
  //   Node 2 in {1,2,3}: avr-all .475, avr-high .95, edge-ratio .5;
  //   in {4,6,5,2}: .5333, .8, .6667.
  for (auto s : {S::kAvrSimFirst, S::kDegreeFirst, S::kComb}) {
    const Clusters grown = s == S::kAvrSimFirst
                               ? Clusters{{1, 2, 3}, {4, 6, 5, 2}}
                               : Clusters{{4, 6, 5, 2}, {1, 2, 3}};
    out.push_back({"star-overlap", s, R::kAvrAll, false, grown,
                   {{1, 3}, {2, 4, 5, 6}}});
    out.push_back({"star-overlap", s, R::kAvrHigh, false, grown,
                   {{1, 2, 3}, {4, 5, 6}}});
    out.push_back({"star-overlap", s, R::kEdgeRatio, false, grown,
                   {{1, 3}, {2, 4, 5, 6}}});
  }

  // star-overlap, temporal: centre 4 takes 6, rejects 5, takes 2; 5 founds
  //   {5,2} (4 excluded as an earlier centre). Node 2 in {1,2,3}: .475 / .95
  //   / .5; in {4,6,2}: .4 / .8 / .5; in {5,2}: .8 / .8 / 1.
  for (auto s : {S::kAvrSimFirst, S::kDegreeFirst, S::kComb}) {
    const Clusters grown = s == S::kAvrSimFirst
                               ? Clusters{{1, 2, 3}, {4, 6, 2}, {5, 2}}
                               : Clusters{{4, 6, 2}, {1, 2, 3}, {5, 2}};
    out.push_back({"star-overlap", s, R::kAvrAll, true, grown,
                   {{1, 3}, {2, 5}, {4, 6}}});
    out.push_back({"star-overlap", s, R::kAvrHigh, true, grown,
                   {{1, 2, 3}, {4, 6}, {5}}});
    out.push_back({"star-overlap", s, R::kEdgeRatio, true, grown,
                   {{1, 3}, {2, 5}, {4, 6}}});
  }
  return out;
}

inline std::vector<GreedyGolden> greedy_goldens() {
  using M = tlink::SelectMethod;
  return {
      // Next walks 1 2 3 4 5 6 7 by date.
      {"greedy-chain", M::kNext, false, {{1, 2, 3, 4, 5, 6, 7}}},
      // Temporal: 6 is rejected against 5, which finalises {1..5}; 6 and 7
      // have no outgoing edges.
      {"greedy-chain", M::kNext, true, {{1, 2, 3, 4, 5}, {6}, {7}}},
      // Max-sim: {1} takes 2, then 5 (0.95). {3} takes 4, then 7 (0.93 over
      // 0.88). {1,2,5} takes 6.
      {"greedy-chain", M::kMaxSim, false, {{1, 2, 5, 6}, {3, 4, 7}}},
      // Temporal: 7 rejected for {3,4}, 6 rejected for {1,2,5}.
      {"greedy-chain", M::kMaxSim, true, {{1, 2, 5}, {3, 4}, {6}, {7}}},
      // Avr-sim: {1,2} takes 3 (.87 over .825), then 5 (.825 over .785);
      // {4} takes 7; {1,2,3,5} takes 6.
      {"greedy-chain", M::kAvrSim, false, {{1, 2, 3, 5, 6}, {4, 7}}},
      // Temporal: {4} rejects 7, {1,2,3,5} rejects 6.
      {"greedy-chain", M::kAvrSim, true, {{1, 2, 3, 5}, {4}, {6}, {7}}},
  };
}

}  // namespace fixtures
