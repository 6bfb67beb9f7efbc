#include "spltest/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spltest/errors.hpp"

namespace spltest {

using nlohmann::json;

namespace {

json parseJsonText(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw Error("SYNTAX", "invalid JSON");
  return doc;
}

std::string requireString(const json& obj, const std::string& key,
                          const std::string& context) {
  if (!obj.contains(key) || !obj[key].is_string())
    throw Error("SYNTAX", context + ": missing string field '" + key + "'");
  return obj[key].get<std::string>();
}

TransitionSystem parseTs(const json& doc, std::vector<std::string>* guardTexts,
                         std::vector<double>* probs) {
  TransitionSystem ts;
  ts.initial = requireString(doc, "initial", "transition system");
  if (!doc.contains("states") || !doc["states"].is_array())
    throw Error("SYNTAX", "transition system: missing 'states' array");
  for (const json& s : doc["states"]) {
    if (!s.is_string()) throw Error("SYNTAX", "state ids must be strings");
    ts.states.insert(s.get<std::string>());
  }
  if (!doc.contains("transitions") || !doc["transitions"].is_array())
    throw Error("SYNTAX", "transition system: missing 'transitions' array");
  for (const json& t : doc["transitions"]) {
    Transition tr{requireString(t, "from", "transition"),
                  requireString(t, "action", "transition"),
                  requireString(t, "to", "transition")};
    ts.actions.insert(tr.action);
    ts.transitions.push_back(tr);
    if (guardTexts)
      guardTexts->push_back(t.contains("guard")
                                ? requireString(t, "guard", "transition")
                                : "TRUE");
    if (probs) {
      if (!t.contains("p") || !t["p"].is_number())
        throw Error("SYNTAX", "usage-model transition: missing number 'p'");
      probs->push_back(t["p"].get<double>());
    }
  }
  return ts;
}

}  // namespace

std::shared_ptr<const FeatureDiagram> parseFeatureDiagram(
    const std::string& text) {
  json doc = parseJsonText(text);
  std::string root = requireString(doc, "root", "feature diagram");
  std::vector<FeatureDiagram::FeatureRow> rows;
  if (doc.contains("features")) {
    if (!doc["features"].is_array())
      throw Error("SYNTAX", "'features' must be an array");
    for (const json& f : doc["features"]) {
      FeatureDiagram::FeatureRow row;
      row.name = requireString(f, "name", "feature");
      row.parent = requireString(f, "parent", "feature");
      row.kind = groupKindFromString(requireString(f, "group", "feature"));
      if (row.kind == GroupKind::Or || row.kind == GroupKind::Xor) {
        if (!f.contains("groupId") || !f["groupId"].is_number_integer())
          throw Error("SYNTAX", "OR/XOR member '" + row.name +
                                    "' needs an integer 'groupId'");
        row.groupId = f["groupId"].get<int>();
      }
      rows.push_back(std::move(row));
    }
  }
  std::vector<std::string> constraints;
  if (doc.contains("constraints")) {
    if (!doc["constraints"].is_array())
      throw Error("SYNTAX", "'constraints' must be an array");
    for (const json& c : doc["constraints"]) {
      if (!c.is_string()) throw Error("SYNTAX", "constraints must be strings");
      constraints.push_back(c.get<std::string>());
    }
  }
  return std::make_shared<FeatureDiagram>(root, rows, constraints);
}

FeaturedTransitionSystem parseFts(
    const std::string& text, std::shared_ptr<const FeatureDiagram> diagram) {
  json doc = parseJsonText(text);
  FeaturedTransitionSystem fts;
  std::vector<std::string> guardTexts;
  fts.ts = parseTs(doc, &guardTexts, nullptr);
  fts.diagram = std::move(diagram);
  for (const std::string& g : guardTexts) fts.guards.push_back(parseExpr(g));
  fts.check();
  return fts;
}

UsageModel parseUsageModel(const std::string& text) {
  json doc = parseJsonText(text);
  UsageModel um;
  um.ts = parseTs(doc, nullptr, &um.probs);
  if (!doc.contains("initialProb") || !doc["initialProb"].is_object())
    throw Error("SYNTAX", "usage model: missing 'initialProb' object");
  for (const auto& [state, p] : doc["initialProb"].items()) {
    if (!p.is_number()) throw Error("SYNTAX", "initialProb values must be numbers");
    um.tau[state] = p.get<double>();
  }
  um.check();
  return um;
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IO", "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void writeFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("IO", "cannot write '" + path + "'");
  out << content;
}

std::shared_ptr<const FeatureDiagram> loadFeatureDiagram(const std::string& path) {
  return parseFeatureDiagram(readFile(path));
}

FeaturedTransitionSystem loadFts(const std::string& path,
                                 std::shared_ptr<const FeatureDiagram> diagram) {
  return parseFts(readFile(path), std::move(diagram));
}

UsageModel loadUsageModel(const std::string& path) {
  return parseUsageModel(readFile(path));
}

double roundTo12Significant(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return std::strtod(buf, nullptr);
}

namespace {

json traceJson(const FiniteTrace& t) { return json(t.actions); }

json productJson(const Product& p) {
  return json(std::vector<std::string>(p.begin(), p.end()));
}

}  // namespace

json toJson(const ValidationReport& report) {
  json violations = json::array();
  for (const Violation& v : report.violations)
    violations.push_back({{"code", v.code}, {"detail", v.detail}});
  return {{"valid", report.valid()}, {"violations", violations}};
}

json toJson(const TraceSet& traces, const SelectionAudit* audit) {
  json items = json::array();
  for (const FiniteTrace& t : traces.traces) {
    items.push_back(
        {{"trace", traceJson(t)},
         {"probability", roundTo12Significant(t.probability.value_or(0.0))}});
  }
  json out{{"traces", items}};
  if (audit) {
    json rejected = json::array();
    for (const FiniteTrace& t : audit->intervalRejected) {
      rejected.push_back(
          {{"trace", traceJson(t)},
           {"probability", roundTo12Significant(t.probability.value_or(0.0))}});
    }
    out["audit"] = {{"prunedBranches", audit->prunedBranches},
                    {"depthCutoffs", audit->depthCutoffs},
                    {"intervalRejected", rejected}};
  }
  return out;
}

json toJson(const FeaturedTransitionSystem& fts) {
  json transitions = json::array();
  for (size_t i = 0; i < fts.ts.transitions.size(); ++i) {
    const Transition& t = fts.ts.transitions[i];
    transitions.push_back({{"from", t.from},
                           {"action", t.action},
                           {"to", t.to},
                           {"guard", fts.guards[i].toString()}});
  }
  return {{"initial", fts.ts.initial},
          {"states", json(std::vector<std::string>(fts.ts.states.begin(),
                                                   fts.ts.states.end()))},
          {"transitions", transitions}};
}

json toJson(const PrioritizedReport& report) {
  json entries = json::array();
  for (const PrioritizedEntry& e : report.entries) {
    json products = json::array();
    for (const Product& p : e.products) products.push_back(productJson(p));
    entries.push_back({{"trace", traceJson(e.trace)},
                       {"probability", roundTo12Significant(e.probability)},
                       {"guard", e.guard.toString()},
                       {"products", products}});
  }
  return {{"order", report.order == SortOrder::Asc ? "ASC" : "DESC"},
          {"entries", entries}};
}

json toJson(const TestSuite& suite) {
  json cases = json::array();
  for (const FiniteTrace& t : suite.cases) cases.push_back(traceJson(t));
  return {{"seed", suite.seed},
          {"count", suite.count},
          {"maxLen", suite.maxLen},
          {"generator", suite.generator},
          {"partialWalks", suite.partialWalks},
          {"cases", cases}};
}

}  // namespace spltest
