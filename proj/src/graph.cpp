#include "tlink/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <string>

#include "csv.hpp"

namespace tlink {

namespace {

void insert_neighbour(std::vector<Neighbour>& adj, RecordId id, double w) {
  auto it = std::lower_bound(
      adj.begin(), adj.end(), id,
      [](const Neighbour& n, RecordId key) { return n.id < key; });
  if (it != adj.end() && it->id == id) {
    it->weight = std::max(it->weight, w);
  } else {
    adj.insert(it, {id, w});
  }
}

std::string format_weight(double w) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, w);
  return std::string(buf, end);
}

}  // namespace

SimilarityGraph::SimilarityGraph(double min_similarity)
    : min_similarity_(min_similarity) {
  if (!(min_similarity > 0.0 && min_similarity <= 1.0)) {
    throw Error("graph minimum similarity must lie in (0, 1]");
  }
}

void SimilarityGraph::add_node(RecordId id, Date date) {
  const auto [it, inserted] = nodes_.try_emplace(id, Node{date, {}});
  if (!inserted && it->second.date != date) {
    throw Error("node " + std::to_string(id) + " re-added with another date");
  }
}

void SimilarityGraph::add_edge(RecordId a, Date date_a, RecordId b,
                               Date date_b, double weight) {
  if (a == b) throw Error("self-loop on node " + std::to_string(a));
  if (!(weight >= min_similarity_ && weight <= 1.0)) {
    throw Error("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                ") weight " + format_weight(weight) + " outside [" +
                format_weight(min_similarity_) + ", 1]");
  }
  add_node(a, date_a);
  add_node(b, date_b);
  auto& adj_a = nodes_.at(a).adjacent;
  const std::size_t before = adj_a.size();
  insert_neighbour(adj_a, b, weight);
  insert_neighbour(nodes_.at(b).adjacent, a, weight);
  if (adj_a.size() != before) ++edge_count_;
}

const SimilarityGraph::Node& SimilarityGraph::node(RecordId id) const {
  const auto it = nodes_.find(id);
  if (it == nodes_.end()) {
    throw Error("node " + std::to_string(id) + " is not in the graph");
  }
  return it->second;
}

std::vector<RecordId> SimilarityGraph::nodes() const {
  std::vector<RecordId> out;
  out.reserve(nodes_.size());
  for (const auto& [id, n] : nodes_) out.push_back(id);
  return out;
}

Date SimilarityGraph::date(RecordId id) const { return node(id).date; }

std::span<const Neighbour> SimilarityGraph::neighbours(RecordId id) const {
  return node(id).adjacent;
}

std::optional<double> SimilarityGraph::weight(RecordId a, RecordId b) const {
  const auto it = nodes_.find(a);
  if (it == nodes_.end()) return std::nullopt;
  const auto& adj = it->second.adjacent;
  const auto n = std::lower_bound(
      adj.begin(), adj.end(), b,
      [](const Neighbour& x, RecordId key) { return x.id < key; });
  if (n == adj.end() || n->id != b) return std::nullopt;
  return n->weight;
}

std::vector<Edge> SimilarityGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (const auto& [id, n] : nodes_) {
    for (const auto& nb : n.adjacent) {
      if (id < nb.id) out.push_back({id, nb.id, nb.weight});
    }
  }
  return out;
}

SimilarityGraph SimilarityGraph::filtered(double s_min) const {
  SimilarityGraph out(s_min);
  for (const auto& [id, n] : nodes_) {
    for (const auto& nb : n.adjacent) {
      if (id < nb.id && nb.weight >= s_min) {
        out.add_edge(id, n.date, nb.id, nodes_.at(nb.id).date, nb.weight);
      }
    }
  }
  return out;
}

SimilarityGraph build_graph(const RecordSet& records,
                            const RecordComparator& comparator,
                            const GraphOptions& options) {
  SimilarityGraph g(options.min_similarity);
  const auto index = build_index(records, comparator, options.lsh);
  for (const auto& [a, b] : candidate_pairs(index)) {
    const Record& ra = *records.find(a);
    const Record& rb = *records.find(b);
    double s = comparator.similarity(ra, rb);
    if (options.temporal) {
      s *= options.temporal->plausibility(days_between(ra.date, rb.date));
    }
    if (s >= options.min_similarity) g.add_edge(a, ra.date, b, rb.date, s);
  }
  return g;
}

std::vector<RecordId> sim_neighbours(const SimilarityGraph& g, RecordId v,
                                     double s_min) {
  std::vector<RecordId> out;
  for (const auto& n : g.neighbours(v)) {
    if (n.weight >= s_min) out.push_back(n.id);
  }
  return out;
}

double avg_neighbour_similarity(const SimilarityGraph& g, RecordId v,
                                std::span<const RecordId> neighbours) {
  if (neighbours.empty()) return 0.0;
  double sum = 0.0;
  for (RecordId u : neighbours) {
    const auto w = g.weight(v, u);
    if (!w) {
      throw Error("node " + std::to_string(u) + " is not adjacent to " +
                  std::to_string(v));
    }
    sum += *w;
  }
  return sum / static_cast<double>(neighbours.size());
}

void write_graph(std::ostream& out, const SimilarityGraph& g) {
  out << "id_i,id_j,weight\n";
  for (const auto& e : g.edges()) {
    out << e.a << ',' << e.b << ',' << format_weight(e.weight) << '\n';
  }
}

SimilarityGraph read_graph(std::istream& in, const RecordSet& records,
                           double min_similarity) {
  SimilarityGraph g(min_similarity);
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    const auto text = csv::strip_cr(line);
    if (text.empty()) continue;
    const auto fields = csv::split(text, ',');
    if (fields.size() != 3) {
      throw Error("graph row " + std::to_string(row) +
                  ": expected 3 fields, found " + std::to_string(fields.size()));
    }
    if (row == 1 && fields[0].text == "id_i") continue;
    RecordId a = 0, b = 0;
    double w = 0.0;
    auto parse = [&](const std::string& s, auto& value) {
      const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
      if (s.empty() || ec != std::errc{} || p != s.data() + s.size()) {
        throw Error("graph row " + std::to_string(row) + ": bad field '" + s +
                    "'");
      }
    };
    parse(fields[0].text, a);
    parse(fields[1].text, b);
    parse(fields[2].text, w);
    const Record* ra = records.find(a);
    const Record* rb = records.find(b);
    if (!ra || !rb) {
      throw Error("graph row " + std::to_string(row) + ": unknown record id " +
                  std::to_string(ra ? b : a));
    }
    if (w < min_similarity) continue;
    g.add_edge(std::min(a, b), (a < b ? ra : rb)->date, std::max(a, b),
               (a < b ? rb : ra)->date, w);
  }
  return g;
}

}  // namespace tlink
