// spltest: prioritizes product-line products for testing from a DTMC usage
// model, a featured transition system and a feature diagram.
//
// Exit codes: 0 success, 1 domain-level negative result (validation
// violations, empty report, invalid product), 2 usage/IO/parse errors.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spltest/derivation.hpp"
#include "spltest/errors.hpp"
#include "spltest/json_io.hpp"
#include "spltest/prioritization.hpp"
#include "spltest/trace_selection.hpp"

namespace {

using nlohmann::json;
using namespace spltest;

struct ModelPaths {
  std::string fd;
  std::string fts;
  std::string um;
};

struct LoadedModels {
  std::shared_ptr<const FeatureDiagram> fd;
  FeaturedTransitionSystem fts;
  UsageModel um;
};

LoadedModels loadModels(const ModelPaths& paths) {
  LoadedModels m;
  m.fd = loadFeatureDiagram(paths.fd);
  m.fts = loadFts(paths.fts, m.fd);
  m.um = loadUsageModel(paths.um);
  return m;
}

void emit(const json& doc, const std::string& outPath) {
  std::string text = doc.dump(2) + "\n";
  if (outPath.empty())
    std::cout << text;
  else
    writeFile(outPath, text);
}

void addModelOptions(CLI::App* cmd, ModelPaths& paths) {
  cmd->add_option("--fd", paths.fd, "feature diagram JSON")->required();
  cmd->add_option("--fts", paths.fts, "featured transition system JSON")
      ->required();
  cmd->add_option("--um", paths.um, "usage model JSON")->required();
}

Product parseProductList(const std::string& csv) {
  Product p;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) p.insert(item);
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"statistical test prioritization for software product lines"};
  app.require_subcommand(1);

  ModelPaths paths;
  std::string outPath;
  bool audit = false;
  int lMax = 7;
  double prMin = 0.0;
  double prMax = 1.0;
  std::string order = "DESC";
  std::string emitFtsPrime;
  std::string productCsv;
  std::uint64_t seed = 0;
  int count = 100;
  int maxLen = 50;

  CLI::App* validate = app.add_subcommand(
      "validate", "check the FD/FTS/usage-model triple for consistency");
  addModelOptions(validate, paths);

  CLI::App* traces = app.add_subcommand(
      "traces", "extract probability-bounded i-to-i traces (step 1)");
  addModelOptions(traces, paths);
  traces->add_option("--lmax", lMax, "maximum trace length");
  traces->add_option("--pmin", prMin, "lower probability bound (inclusive)");
  traces->add_option("--pmax", prMax, "upper probability bound (inclusive)");
  traces->add_flag("--audit", audit, "log rejected traces and pruning counts");
  traces->add_option("-o,--output", outPath, "output file (default stdout)");

  CLI::App* ftsPrimeCmd = app.add_subcommand(
      "fts-prime", "filter traces through the FTS and emit the pruned FTS' (step 2)");
  addModelOptions(ftsPrimeCmd, paths);
  ftsPrimeCmd->add_option("--lmax", lMax, "maximum trace length");
  ftsPrimeCmd->add_option("--pmin", prMin, "lower probability bound");
  ftsPrimeCmd->add_option("--pmax", prMax, "upper probability bound");
  ftsPrimeCmd->add_flag("--audit", audit, "log rejected traces");
  ftsPrimeCmd->add_option("-o,--output", outPath, "output file (default stdout)");

  CLI::App* prioritizeCmd = app.add_subcommand(
      "prioritize", "full family-based pipeline: traces, FTS', product sets, ranking");
  addModelOptions(prioritizeCmd, paths);
  prioritizeCmd->add_option("--lmax", lMax, "maximum trace length");
  prioritizeCmd->add_option("--pmin", prMin, "lower probability bound");
  prioritizeCmd->add_option("--pmax", prMax, "upper probability bound");
  prioritizeCmd->add_option("--order", order, "ASC or DESC")
      ->check(CLI::IsMember({"ASC", "DESC"}));
  prioritizeCmd->add_option("--emit-fts-prime", emitFtsPrime,
                            "also write the pruned FTS' JSON here");
  prioritizeCmd->add_flag("--audit", audit, "log rejected traces with reasons");
  prioritizeCmd->add_option("-o,--output", outPath, "output file (default stdout)");

  CLI::App* productTests = app.add_subcommand(
      "product-tests", "project one product and generate statistical tests");
  addModelOptions(productTests, paths);
  productTests->add_option("--product", productCsv,
                           "comma-separated feature list, e.g. v,b,cur,t,eur")
      ->required();
  productTests->add_option("--seed", seed, "random seed");
  productTests->add_option("--count", count, "number of walks")
      ->check(CLI::PositiveNumber);
  productTests->add_option("--max-len", maxLen, "walk length cap")
      ->check(CLI::PositiveNumber);
  productTests->add_option("-o,--output", outPath, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // bad flags are usage errors
  }

  try {
    if (lMax < 1 || !(prMin >= 0.0 && prMin <= prMax && prMax <= 1.0)) {
      std::cerr << "error: need lmax >= 1 and 0 <= pmin <= pmax <= 1\n";
      return 2;
    }

    LoadedModels m = loadModels(paths);

    if (validate->parsed()) {
      ValidationReport report = validateTriple(*m.fd, m.fts, m.um);
      emit(toJson(report), outPath);
      return report.valid() ? 0 : 1;
    }

    SelectionParams params{lMax, prMin, prMax};

    if (traces->parsed()) {
      SelectionAudit auditLog;
      TraceSet set = dfsSelect(m.um, params, audit ? &auditLog : nullptr);
      emit(toJson(set, audit ? &auditLog : nullptr), outPath);
      return 0;
    }

    if (ftsPrimeCmd->parsed()) {
      SelectionAudit auditLog;
      TraceSet set = dfsSelect(m.um, params, audit ? &auditLog : nullptr);
      BuildResult built = buildFtsPrime(m.fts, set);
      json out{{"ftsPrime", toJson(built.ftsPrime.fts)},
               {"traces", toJson(built.accepted, nullptr)["traces"]}};
      if (audit) {
        json rejected = json::array();
        for (const FiniteTrace& t : auditLog.intervalRejected)
          rejected.push_back({{"trace", json(t.actions)},
                              {"probability",
                               roundTo12Significant(t.probability.value_or(0))},
                              {"reason", "INTERVAL"}});
        for (const RejectedTrace& r : built.rejected)
          rejected.push_back({{"trace", json(r.trace.actions)},
                              {"reason", r.reason}});
        out["audit"] = {{"rejected", rejected}};
      }
      emit(out, outPath);
      return 0;
    }

    if (prioritizeCmd->parsed()) {
      SelectionAudit auditLog;
      TraceSet set = dfsSelect(m.um, params, audit ? &auditLog : nullptr);
      BuildResult built = buildFtsPrime(m.fts, set);
      if (built.accepted.traces.empty()) {
        std::cerr << "no trace survives selection and FTS filtering\n";
        return 1;
      }
      PrioritizedReport report =
          prioritize(built.ftsPrime, built.accepted,
                     order == "ASC" ? SortOrder::Asc : SortOrder::Desc);
      json out = toJson(report);
      if (audit) {
        json rejected = json::array();
        for (const FiniteTrace& t : auditLog.intervalRejected)
          rejected.push_back({{"trace", json(t.actions)},
                              {"probability",
                               roundTo12Significant(t.probability.value_or(0))},
                              {"reason", "INTERVAL"}});
        for (const RejectedTrace& r : built.rejected)
          rejected.push_back({{"trace", json(r.trace.actions)},
                              {"reason", r.reason}});
        out["audit"] = {{"rejected", rejected}};
      }
      if (!emitFtsPrime.empty())
        writeFile(emitFtsPrime, toJson(built.ftsPrime.fts).dump(2) + "\n");
      emit(out, outPath);
      return 0;
    }

    if (productTests->parsed()) {
      Product p = parseProductList(productCsv);
      TransitionSystem projected = project(m.fts, p);
      UsageModel pruned = pruneUsageModel(m.um, projected);
      TestSuite suite = generateTests(pruned, count, maxLen, seed);
      emit(toJson(suite), outPath);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const std::string& code = e.code();
    if (code == "INVALID_PRODUCT" || code == "INITIAL_DEAD") return 1;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
