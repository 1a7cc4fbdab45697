#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <map>
#include <string>
#include <vector>

#include "tlink/eval.hpp"
#include "tlink/pipeline.hpp"

namespace py = pybind11;
using namespace tlink;

namespace {

Date to_date(const std::string& iso) {
  const auto d = Date::parse(iso);
  if (!d) throw Error("bad date '" + iso + "', expected YYYY-MM-DD");
  return *d;
}

std::optional<TemporalConstraint> constraint(bool temporal, double p_min) {
  if (!temporal) return std::nullopt;
  TemporalConstraint c;
  c.p_min = p_min;
  return c;
}

using Overrides = std::map<std::string, std::string>;

PipelineConfig config_from(const std::optional<std::filesystem::path>& path,
                           const Overrides& overrides) {
  return load_config(path, {overrides.begin(), overrides.end()});
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<Error>(m, "TlinkError", PyExc_ValueError);

  m.def("jaro_winkler",
        [](const std::string& a, const std::string& b) {
          return jaro_winkler(a, b);
        },
        py::arg("a"), py::arg("b"));
  m.def("year_difference",
        [](const std::string& a, const std::string& b, int max_diff) {
          return year_difference(a, b, max_diff);
        },
        py::arg("a"), py::arg("b"), py::arg("max_diff") = 10);

  py::class_<TemporalModel>(m, "TemporalModel")
      .def(py::init([](const std::vector<std::pair<std::int64_t, double>>& bps) {
             std::vector<TemporalModel::Breakpoint> v;
             for (const auto& [d, p] : bps) v.push_back({d, p});
             return TemporalModel(std::move(v));
           }),
           py::arg("breakpoints"))
      .def_static("birth_interval_default",
                  &TemporalModel::birth_interval_default)
      .def_static("constant_one", &TemporalModel::constant_one)
      .def("plausibility", &TemporalModel::plausibility, py::arg("days"));

  py::class_<SimilarityGraph>(m, "SimilarityGraph")
      .def(py::init<double>(), py::arg("min_similarity") = 0.7)
      .def("add_node",
           [](SimilarityGraph& g, RecordId id, const std::string& date) {
             g.add_node(id, to_date(date));
           },
           py::arg("id"), py::arg("date"))
      .def("add_edge",
           [](SimilarityGraph& g, RecordId a, const std::string& date_a,
              RecordId b, const std::string& date_b, double w) {
             g.add_edge(a, to_date(date_a), b, to_date(date_b), w);
           },
           py::arg("a"), py::arg("date_a"), py::arg("b"), py::arg("date_b"),
           py::arg("weight"))
      .def("nodes", &SimilarityGraph::nodes)
      .def("edges",
           [](const SimilarityGraph& g) {
             std::vector<std::tuple<RecordId, RecordId, double>> out;
             for (const auto& e : g.edges()) out.emplace_back(e.a, e.b, e.weight);
             return out;
           })
      .def_property_readonly("node_count", &SimilarityGraph::node_count)
      .def_property_readonly("edge_count", &SimilarityGraph::edge_count);

  m.def("star_cluster",
        [](const SimilarityGraph& g, const std::vector<RecordId>& ids,
           double s_min, const std::string& sort, const std::string& resolve,
           bool temporal, double p_min) {
          StarOptions o;
          o.s_min = s_min;
          o.sort = parse_sort_method(sort);
          o.resolve = parse_resolve_method(resolve);
          o.temporal = constraint(temporal, p_min);
          return star_cluster(g, ids, o).clusters();
        },
        py::arg("graph"), py::arg("ids"), py::arg("s_min") = 0.7,
        py::arg("sort") = "avr-sim-first", py::arg("resolve") = "avr-all",
        py::arg("temporal") = true, py::arg("p_min") = kDefaultMinPlausibility);

  m.def("greedy_cluster",
        [](const SimilarityGraph& g, const std::vector<RecordId>& ids,
           double s_min, const std::string& select, bool temporal,
           double p_min, bool retry) {
          GreedyOptions o;
          o.s_min = s_min;
          o.select = parse_select_method(select);
          o.temporal = constraint(temporal, p_min);
          o.retry_on_rejection = retry;
          return greedy_cluster(g, ids, o).clusters();
        },
        py::arg("graph"), py::arg("ids"), py::arg("s_min") = 0.7,
        py::arg("select") = "avr-sim", py::arg("temporal") = true,
        py::arg("p_min") = kDefaultMinPlausibility,
        py::arg("retry_on_rejection") = false);

  m.def("precision_recall",
        [](const std::vector<std::vector<RecordId>>& clusters,
           const std::map<RecordId, std::string>& truth) {
          const auto r = precision_recall(Clustering(clusters), GroundTruth(truth));
          py::dict d;
          d["precision"] = r.precision;
          d["recall"] = r.recall;
          d["true_positives"] = r.true_positives;
          d["false_positives"] = r.false_positives;
          d["false_negatives"] = r.false_negatives;
          return d;
        },
        py::arg("clusters"), py::arg("truth"));

  using Command = std::vector<std::filesystem::path> (*)(const PipelineConfig&);
  const std::vector<std::pair<const char*, Command>> commands{
      {"generate", &cmd_generate},
      {"build_graph", &cmd_build_graph},
      {"cluster", &cmd_cluster},
      {"evaluate", &cmd_evaluate},
      {"sweep", &cmd_sweep}};
  for (const auto& [name, fn] : commands) {
    m.def(name,
          [fn](const std::optional<std::filesystem::path>& config,
               const Overrides& overrides) { return fn(config_from(config, overrides)); },
          py::arg("config") = py::none(), py::arg("overrides") = Overrides{});
  }
}
