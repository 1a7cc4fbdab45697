#include <doctest.h>

#include <algorithm>
#include <random>

#include "support.hpp"
#include "tlink/greedy.hpp"

using namespace tlink;

namespace {

GreedyOptions options(SelectMethod s, bool temporal, double s_min = 0.7,
                      bool retry = false) {
  GreedyOptions o;
  o.s_min = s_min;
  o.select = s;
  o.retry_on_rejection = retry;
  if (temporal) o.temporal = TemporalConstraint{};
  return o;
}

std::vector<RecordId> targets(std::span<const Neighbour> ns) {
  std::vector<RecordId> out;
  for (const auto& n : ns) out.push_back(n.id);
  return out;
}

constexpr SelectMethod kSelects[] = {SelectMethod::kNext, SelectMethod::kMaxSim,
                                     SelectMethod::kAvrSim};

}  // namespace

TEST_CASE("select method names round-trip") {
  for (auto s : kSelects) CHECK(parse_select_method(to_string(s)) == s);
  CHECK(to_string(SelectMethod::kMaxSim) == "max-sim");
  CHECK_THROWS_AS(parse_select_method("first"), Error);
}

TEST_CASE("to_directed") {
  SimilarityGraph g(0.7);
  g.add_edge(1, fixtures::day(500), 2, fixtures::day(0), 0.9);
  g.add_edge(3, fixtures::day(7), 4, fixtures::day(7), 0.8);
  g.add_edge(1, fixtures::day(500), 4, fixtures::day(7), 0.75);
  g.add_node(5, fixtures::day(1));
  const auto d = to_directed(g);
  CHECK(d.nodes() == std::vector<RecordId>{1, 2, 3, 4, 5});
  CHECK(d.edge_count() == 3);
  CHECK(targets(d.out(2)) == std::vector<RecordId>{1});
  CHECK(targets(d.in(1)) == std::vector<RecordId>{2, 4});
  CHECK(targets(d.out(3)) == std::vector<RecordId>{4});
  CHECK(targets(d.out(4)) == std::vector<RecordId>{1});
  CHECK(d.out(1).empty());
  CHECK(d.out(5).empty());
  CHECK(d.date(1) == fixtures::day(500));
  CHECK_THROWS_AS(d.out(9), Error);

  const auto high = to_directed(g, 0.8);
  CHECK(high.edge_count() == 2);
  CHECK(high.nodes().size() == 5);
}

TEST_CASE("select_next") {
  const auto g = to_directed(fixtures::greedy_selection().graph());
  const std::vector<RecordId> cluster{1, 2, 3};
  const std::vector<RecordId> cands{6, 5, 4};
  CHECK(select_next(cluster, cands, g, SelectMethod::kNext) == 4);
  CHECK(select_next(cluster, cands, g, SelectMethod::kMaxSim) == 5);
  CHECK(select_next(cluster, cands, g, SelectMethod::kAvrSim) == 6);
  CHECK_THROWS_AS(select_next(cluster, {}, g, SelectMethod::kNext), Error);

  // Ties go to the lower id.
  SimilarityGraph tie(0.7);
  tie.add_edge(1, fixtures::day(0), 3, fixtures::day(10), 0.8);
  tie.add_edge(1, fixtures::day(0), 2, fixtures::day(10), 0.8);
  const auto dt = to_directed(tie);
  const std::vector<RecordId> one{1};
  const std::vector<RecordId> two{3, 2};
  for (auto s : kSelects) CHECK(select_next(one, two, dt, s) == 2);
}

TEST_CASE("temporal rejection finalises the cluster") {
  SimilarityGraph g(0.7);
  const Date a = Date::from_ymd(1880, 1, 1);
  const Date b = Date::from_ymd(1882, 1, 1);
  const Date c = Date::from_ymd(1930, 1, 1);
  g.add_edge(1, a, 2, b, 0.9);
  g.add_edge(2, b, 3, c, 0.9);
  g.add_edge(1, a, 3, c, 0.9);
  const auto ids = support::iota_ids(3);
  for (auto s : kSelects) {
    CHECK(greedy_cluster(g, ids, options(s, true)) == Clustering({{1, 2}, {3}}));
    CHECK(greedy_cluster(g, ids, options(s, false)) == Clustering({{1, 2, 3}}));
  }
}

TEST_CASE("retry after rejection") {
  // 2 is the more similar candidate but is born 100 days after 1.
  SimilarityGraph g(0.7);
  g.add_edge(1, fixtures::day(0), 2, fixtures::day(100), 0.95);
  g.add_edge(1, fixtures::day(0), 3, fixtures::day(400), 0.8);
  const auto ids = support::iota_ids(3);
  CHECK(greedy_cluster(g, ids, options(SelectMethod::kMaxSim, true)) ==
        Clustering({{1}, {2}, {3}}));
  CHECK(greedy_cluster(g, ids, options(SelectMethod::kMaxSim, true, 0.7, true)) ==
        Clustering({{1, 3}, {2}}));
}

TEST_CASE("greedy edge cases") {
  SimilarityGraph empty(0.7);
  CHECK(greedy_cluster(empty, support::iota_ids(2), GreedyOptions{}) ==
        Clustering({{1}, {2}}));
  SimilarityGraph one(0.7);
  one.add_edge(1, fixtures::day(0), 2, fixtures::day(400), 0.9);
  CHECK(greedy_cluster(one, support::iota_ids(2),
                       options(SelectMethod::kNext, true, 0.95)) ==
        Clustering({{1}, {2}}));
  CHECK_THROWS_AS(greedy_cluster(one, support::iota_ids(2),
                                 options(SelectMethod::kNext, true, 0.5)),
                  Error);
}

TEST_CASE("golden greedy traces") {
  for (const auto& golden : fixtures::greedy_goldens()) {
    CAPTURE(golden.graph);
    CAPTURE(to_string(golden.select));
    CAPTURE(golden.temporal);
    const auto fixture = fixtures::golden_graph(golden.graph);
    CHECK(greedy_cluster(fixture.graph(), fixture.ids(),
                         options(golden.select, golden.temporal)) ==
          Clustering(golden.expected));
  }
}

TEST_CASE("greedy clustering properties on random graphs") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 40);
    const auto g = support::random_graph(rng, n, 0.1 + (rng() % 40) / 100.0,
                                         16000);
    const auto ids = support::iota_ids(n);
    const double s_min = 0.7 + (rng() % 4) * 0.05;
    for (auto s : kSelects) {
      for (bool temporal : {false, true}) {
        for (bool retry : {false, true}) {
          const auto o = options(s, temporal, s_min, retry);
          const auto c = greedy_cluster(g, ids, o);
          CHECK(c.ids() == ids);
          CHECK(c == greedy_cluster(g, ids, o));
          for (auto cluster : c.clusters()) {
            // Ordered by time, each later member is reached by an edge of
            // weight >= s_min from an earlier one.
            std::sort(cluster.begin(), cluster.end(), [&](RecordId x, RecordId y) {
              return std::pair(g.date(x), x) < std::pair(g.date(y), y);
            });
            for (std::size_t i = 1; i < cluster.size(); ++i) {
              bool reached = false;
              for (std::size_t j = 0; j < i; ++j) {
                const auto w = g.weight(cluster[j], cluster[i]);
                reached = reached || (w && *w >= s_min);
              }
              CHECK(reached);
            }
            if (!temporal) continue;
            const TemporalConstraint tc;
            for (std::size_t i = 0; i < cluster.size(); ++i) {
              for (std::size_t j = i + 1; j < cluster.size(); ++j) {
                CHECK(pair_plausible(tc.model, g.date(cluster[i]),
                                     g.date(cluster[j]), tc.p_min));
              }
            }
          }
        }
      }
    }
  }
}
