#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "spltest/derivation.hpp"
#include "spltest/errors.hpp"
#include "spltest/json_io.hpp"
#include "spltest/prioritization.hpp"
#include "spltest/trace_selection.hpp"

namespace py = pybind11;

using namespace spltest;

namespace {

// The python surface works on JSON-shaped values; model objects are opaque
// handles constructed from the interchange documents.
struct Models {
  std::shared_ptr<const FeatureDiagram> fd;
  FeaturedTransitionSystem fts;
  UsageModel um;
};

Models loadModelsFromText(const std::string& fdText, const std::string& ftsText,
                          const std::string& umText) {
  Models m;
  m.fd = parseFeatureDiagram(fdText);
  m.fts = parseFts(ftsText, m.fd);
  m.um = parseUsageModel(umText);
  return m;
}

py::object jsonToPy(const nlohmann::json& j) {
  py::module_ jsonMod = py::module_::import("json");
  return jsonMod.attr("loads")(j.dump());
}

std::vector<std::vector<std::string>> productsToLists(
    const std::set<Product>& products) {
  std::vector<std::vector<std::string>> out;
  for (const Product& p : products)
    out.emplace_back(p.begin(), p.end());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Statistical test prioritization for software product lines: trace "
      "extraction from DTMC usage models, FTS filtering and SAT-based "
      "product-set computation.";

  py::register_exception<Error>(m, "SplError");

  py::class_<Models>(m, "Models")
      .def(py::init(&loadModelsFromText), py::arg("fd_json"),
           py::arg("fts_json"), py::arg("um_json"),
           "Parse the feature diagram, FTS and usage model from JSON text.")
      .def("validate",
           [](const Models& m) {
             return jsonToPy(toJson(validateTriple(*m.fd, m.fts, m.um)));
           })
      .def("enumerate_products",
           [](const Models& m) { return productsToLists(enumerateProducts(*m.fd)); })
      .def("sat_products",
           [](const Models& m, const std::string& expr) {
             return productsToLists(satProducts(*m.fd, parseExpr(expr)));
           },
           py::arg("expr"))
      .def("trace_probability",
           [](const Models& m, const std::vector<std::string>& actions) {
             return traceProbability(m.um, FiniteTrace{actions, std::nullopt});
           },
           py::arg("actions"))
      .def("select_traces",
           [](const Models& m, int l_max, double pr_min, double pr_max) {
             TraceSet set = dfsSelect(m.um, {l_max, pr_min, pr_max});
             return jsonToPy(toJson(set, nullptr));
           },
           py::arg("l_max"), py::arg("pr_min"), py::arg("pr_max"))
      .def("accept",
           [](const Models& m, const std::vector<std::string>& actions) {
             return accept(m.fts, FiniteTrace{actions, std::nullopt});
           },
           py::arg("actions"))
      .def("prioritize",
           [](const Models& m, int l_max, double pr_min, double pr_max,
              const std::string& order) {
             TraceSet set = dfsSelect(m.um, {l_max, pr_min, pr_max});
             BuildResult built = buildFtsPrime(m.fts, set);
             PrioritizedReport report =
                 prioritize(built.ftsPrime, built.accepted,
                            order == "ASC" ? SortOrder::Asc : SortOrder::Desc);
             return jsonToPy(toJson(report));
           },
           py::arg("l_max"), py::arg("pr_min"), py::arg("pr_max"),
           py::arg("order") = "DESC")
      .def("fts_prime",
           [](const Models& m, int l_max, double pr_min, double pr_max) {
             TraceSet set = dfsSelect(m.um, {l_max, pr_min, pr_max});
             BuildResult built = buildFtsPrime(m.fts, set);
             return jsonToPy(toJson(built.ftsPrime.fts));
           },
           py::arg("l_max"), py::arg("pr_min"), py::arg("pr_max"))
      .def("product_tests",
           [](const Models& m, const std::vector<std::string>& features,
              int count, int max_len, std::uint64_t seed) {
             Product p(features.begin(), features.end());
             TransitionSystem projected = project(m.fts, p);
             UsageModel pruned = pruneUsageModel(m.um, projected);
             return jsonToPy(toJson(generateTests(pruned, count, max_len, seed)));
           },
           py::arg("features"), py::arg("count"), py::arg("max_len"),
           py::arg("seed"));
}
