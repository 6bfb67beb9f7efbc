// End-to-end acceptance suite for the vending-machine fixtures. Each
// criterion prints one PASS/FAIL line; the process exits nonzero if any
// criterion fails.

#include <array>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "spltest/derivation.hpp"
#include "spltest/errors.hpp"
#include "spltest/json_io.hpp"
#include "spltest/prioritization.hpp"
#include "spltest/trace_selection.hpp"

#ifndef SPLTEST_CLI_PATH
#error "SPLTEST_CLI_PATH must point at the spltest binary"
#endif

using namespace spltest;
using nlohmann::json;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool ok,
            const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": "
            << name;
  if (!ok && !detail.empty()) std::cout << " (" << detail << ")";
  std::cout << "\n";
  if (!ok) ++failures;
}

struct RunResult {
  int exitCode;
  std::string output;
};

RunResult runCli(const std::string& args) {
  std::string cmd = std::string(SPLTEST_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string output;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    output.append(buf.data(), n);
  return {WEXITSTATUS(pclose(pipe)), output};
}

std::string fixtureArgs() {
  std::string dir = std::string(SPLTEST_FIXTURE_DIR) + "/vending-machine";
  return "--fd " + dir + "/fd.json --fts " + dir + "/fts.json --um " + dir +
         "/um.json";
}

const std::vector<std::string> kTvm = {"pay",  "change", "tea",  "serveTea",
                                       "open", "take",   "close"};
const std::vector<std::string> kFreeTea = {"free", "tea", "serveTea", "take"};

Product prod(std::initializer_list<const char*> names) {
  Product p;
  for (const char* n : names) p.insert(n);
  return p;
}

}  // namespace

int main() {
  auto fd = fixtures::vendingFd();
  auto fts = fixtures::vendingFts();
  auto um = fixtures::vendingUm();

  // 5. Product count first: if the FD reading is wrong everything else is.
  {
    auto products = enumerateProducts(*fd);
    report(5, "enumerate_products yields exactly 32 products",
           products.size() == 32,
           "got " + std::to_string(products.size()));
  }

  // 1. DFS reproduction via the CLI.
  {
    RunResult r = runCli("traces " + fixtureArgs() +
                         " --lmax 7 --pmin 0 --pmax 0.1");
    std::set<std::vector<std::string>> got;
    if (r.exitCode == 0) {
      json doc = json::parse(r.output);
      for (const json& item : doc["traces"])
        got.insert(item["trace"].get<std::vector<std::string>>());
    }
    std::set<std::vector<std::string>> expected{
        {"pay", "change", "cancel", "return"},
        {"free", "cancel", "return"},
        kTvm,
        {"pay", "change", "tea", "serveTea", "take"},
        {"free", "tea", "serveTea", "open", "take", "close"}};
    report(1, "traces --lmax 7 --pmin 0 --pmax 0.1 yields the 5 traces",
           r.exitCode == 0 && got == expected,
           "exit " + std::to_string(r.exitCode) + ", " +
               std::to_string(got.size()) + " traces");
  }

  // 2. High-probability rejection with audit.
  {
    RunResult r = runCli("traces " + fixtureArgs() +
                         " --lmax 7 --pmin 0 --pmax 0.1 --audit");
    bool absent = true;
    bool rejectedAt0729 = false;
    if (r.exitCode == 0) {
      json doc = json::parse(r.output);
      for (const json& item : doc["traces"])
        if (item["trace"].get<std::vector<std::string>>() == kFreeTea)
          absent = false;
      for (const json& item : doc["audit"]["intervalRejected"]) {
        if (item["trace"].get<std::vector<std::string>>() == kFreeTea &&
            std::abs(item["probability"].get<double>() - 0.729) <= 1e-9)
          rejectedAt0729 = true;
      }
    }
    report(2, "(free,tea,serveTea,take) absent and interval-rejected at 0.729",
           r.exitCode == 0 && absent && rejectedAt0729);
  }

  // 3. Illegal-trace filtering.
  {
    TraceSet traces = dfsSelect(um, {7, 0.0, 0.1});
    BuildResult built = buildFtsPrime(fts, traces);
    std::set<std::vector<std::string>> rejected;
    for (const RejectedTrace& r : built.rejected) rejected.insert(r.trace.actions);
    std::set<std::vector<std::string>> expectedRejected{
        {"pay", "change", "tea", "serveTea", "take"},
        {"free", "tea", "serveTea", "open", "take", "close"}};
    bool noSoda = true;
    for (const Transition& t : built.ftsPrime.fts.ts.transitions)
      if (t.action == "soda" || t.action == "serveSoda") noSoda = false;
    // The FTS' emitted by the CLI must be soda-free as well.
    std::string primePath = "/tmp/spltest_acceptance_fts_prime.json";
    RunResult r = runCli("prioritize " + fixtureArgs() +
                         " --lmax 7 --pmin 0 --pmax 0.1 --emit-fts-prime " +
                         primePath + " -o /dev/null");
    bool emittedOk = r.exitCode == 0;
    if (emittedOk) {
      json doc = json::parse(readFile(primePath));
      for (const json& t : doc["transitions"])
        if (t["action"] == "soda" || t["action"] == "serveSoda")
          emittedOk = false;
      emittedOk = emittedOk && doc["transitions"].size() == 10;
      std::remove(primePath.c_str());
    }
    report(3, "build_fts_prime rejects exactly the 2 illegal traces, 3 remain",
           rejected == expectedRejected && built.accepted.traces.size() == 3 &&
               noSoda && emittedOk);
  }

  // 4. Product-set reproduction for t_vm.
  {
    TraceSet traces = dfsSelect(um, {7, 0.0, 0.1});
    BuildResult built = buildFtsPrime(fts, traces);
    auto [guard, products] =
        productsForTrace(built.ftsPrime, FiniteTrace{kTvm, std::nullopt});
    std::set<Product> expected{prod({"v", "b", "cur", "t", "eur"}),
                               prod({"v", "b", "cur", "t", "usd"}),
                               prod({"v", "b", "cur", "t", "c", "eur"}),
                               prod({"v", "b", "cur", "t", "c", "usd"}),
                               prod({"v", "b", "cur", "t", "s", "eur"}),
                               prod({"v", "b", "cur", "t", "s", "usd"}),
                               prod({"v", "b", "cur", "t", "s", "c", "eur"}),
                               prod({"v", "b", "cur", "t", "s", "c", "usd"})};
    double prTvm = traceProbability(um, FiniteTrace{kTvm, std::nullopt});
    PrioritizedReport desc =
        prioritize(built.ftsPrime, built.accepted, SortOrder::Desc);
    bool lastIsTvm =
        !desc.entries.empty() && desc.entries.back().trace.actions == kTvm;
    report(4, "products_for_trace(t_vm) = the published 8 products, Pr 0.009",
           products == expected && std::abs(prTvm - 0.009) <= 1e-12 &&
               lastIsTvm);
  }

  // 6. Oracle equivalence.
  {
    bool dfsOk = true;
    for (int lMax : {1, 2, 4, 7, 10}) {
      for (auto [lo, hi] : {std::pair{0.0, 0.1}, {0.0, 1.0}, {0.05, 0.5},
                            {0.5, 1.0}}) {
        std::set<std::vector<std::string>> got;
        for (const FiniteTrace& t : dfsSelect(um, {lMax, lo, hi}).traces)
          got.insert(t.actions);
        if (got != oracle::selectCyclesByRules(um, lMax, lo, hi)) dfsOk = false;
      }
    }
    report(6, "(a) dfs_select equals brute-force path enumeration", dfsOk);

    auto allProducts = oracle::enumerateByRules(*fd);
    bool acceptOk = true;
    auto sequences = oracle::enumerateFtsCycles(fts.ts, 8);
    sequences.insert({"pay", "change", "tea", "serveTea", "take"});
    sequences.insert({"free", "tea", "serveTea", "open", "take", "close"});
    for (const auto& labels : sequences) {
      FiniteTrace t{labels, std::nullopt};
      if (accept(fts, t) != oracle::acceptByProjection(fts, allProducts, t))
        acceptOk = false;
    }
    BuildResult built = buildFtsPrime(fts, dfsSelect(um, {7, 0.0, 0.1}));
    for (const FiniteTrace& t : built.accepted.traces) {
      auto [guard, got] = productsForTrace(built.ftsPrime, t);
      if (got !=
          oracle::productsByProjection(built.ftsPrime.fts, allProducts, t))
        acceptOk = false;
    }
    report(6, "(b) accept and products_for_trace equal the projection route",
           acceptOk);

    bool satOk = enumerateProducts(*fd) == allProducts;
    for (const char* text : {"!f && t", "f && c", "TRUE", "FALSE", "s || t",
                             "eur && !c", "!(f || s) && t"}) {
      Expr e = parseExpr(text);
      std::set<Product> expected;
      for (const Product& p : allProducts)
        if (e.evaluate(p)) expected.insert(p);
      if (satProducts(*fd, e) != expected) satOk = false;
    }
    report(6, "(c) sat_products equals truth-table filtering", satOk);
  }

  // 7. Stochasticity of loaded and pruned models.
  {
    bool ok = true;
    auto rowSumsOk = [](const UsageModel& m) {
      for (const std::string& s : m.ts.states) {
        double sum = 0.0;
        bool any = false;
        for (size_t i = 0; i < m.ts.transitions.size(); ++i) {
          if (m.ts.transitions[i].from == s) {
            sum += m.probs[i];
            any = true;
          }
        }
        if (any && std::abs(sum - 1.0) > 1e-9) return false;
      }
      return true;
    };
    if (!rowSumsOk(um)) ok = false;
    for (const Product& p : enumerateProducts(*fd)) {
      UsageModel pruned;
      try {
        pruned = pruneUsageModel(um, project(fts, p));
      } catch (const Error&) {
        continue;  // INITIAL_DEAD: nothing survives for this product
      }
      if (!rowSumsOk(pruned)) ok = false;
      for (size_t i = 0; i < pruned.ts.transitions.size() && ok; ++i) {
        for (size_t j = 0; j < pruned.ts.transitions.size(); ++j) {
          if (i == j ||
              pruned.ts.transitions[i].from != pruned.ts.transitions[j].from)
            continue;
          double before = um.probOf(pruned.ts.transitions[i]) /
                          um.probOf(pruned.ts.transitions[j]);
          if (std::abs(before - pruned.probs[i] / pruned.probs[j]) > 1e-12)
            ok = false;
        }
      }
    }
    report(7, "row sums 1 +/- 1e-9 and sibling ratios preserved", ok);
  }

  // 8. Statistical generation on the pruned free-tea model. The analytic
  // frequency is computed from the pruned model itself (product of its
  // renormalized transition probabilities along the trace).
  {
    UsageModel pruned = pruneUsageModel(
        um, project(fts, prod({"v", "b", "cur", "t", "c", "eur", "f"})));
    double analytic =
        traceProbability(pruned, FiniteTrace{kFreeTea, std::nullopt});
    const int walks = 10000;
    TestSuite suite = generateTests(pruned, walks, 10, 42);
    int hits = 0;
    for (const FiniteTrace& t : suite.cases)
      if (t.actions == kFreeTea) ++hits;
    double freq = static_cast<double>(hits) / walks;
    double sigma = std::sqrt(analytic * (1.0 - analytic) / walks);
    bool freqOk = std::abs(freq - analytic) <= 3 * sigma;

    bool chiOk = true;
    std::map<Transition, int> counts;
    for (const FiniteTrace& t : suite.cases) {
      std::string state = pruned.ts.initial;
      for (const std::string& action : t.actions) {
        for (const Transition& tr : pruned.ts.transitions) {
          if (tr.from == state && tr.action == action) {
            ++counts[tr];
            state = tr.to;
            break;
          }
        }
      }
    }
    for (const std::string& s : pruned.ts.states) {
      std::vector<size_t> idx;
      int total = 0;
      for (size_t i = 0; i < pruned.ts.transitions.size(); ++i) {
        if (pruned.ts.transitions[i].from == s) {
          idx.push_back(i);
          total += counts[pruned.ts.transitions[i]];
        }
      }
      if (idx.size() < 2 || total == 0) continue;
      double chi2 = 0.0;
      for (size_t i : idx) {
        double expected = total * pruned.probs[i];
        double observed = counts[pruned.ts.transitions[i]];
        chi2 += (observed - expected) * (observed - expected) / expected;
      }
      if (chi2 >= oracle::chiSquareCritical99(static_cast<int>(idx.size()) - 1))
        chiOk = false;
    }

    TestSuite again = generateTests(pruned, walks, 10, 42);
    bool reproducible =
        toJson(suite).dump() == toJson(again).dump();

    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "analytic %.6f, empirical %.6f, chi-square %s, seed-stable %s",
                  analytic, freq, chiOk ? "ok" : "rejected",
                  reproducible ? "yes" : "no");
    report(8, "10^4 walks match the analytic trace frequency within 3 sigma",
           freqOk && chiOk && reproducible, detail);
    std::cout << "       (" << detail << ")\n";
  }

  if (failures == 0) {
    std::cout << "all acceptance criteria passed\n";
    return 0;
  }
  std::cout << failures << " criterion(s) failed\n";
  return 1;
}
