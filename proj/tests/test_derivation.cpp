#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "spltest/derivation.hpp"
#include "spltest/errors.hpp"

using namespace spltest;

namespace {

double probOf(const UsageModel& um, const std::string& from,
              const std::string& action) {
  for (size_t i = 0; i < um.ts.transitions.size(); ++i)
    if (um.ts.transitions[i].from == from &&
        um.ts.transitions[i].action == action)
      return um.probs[i];
  FAIL(("no transition " + from + " -" + action).c_str());
  return -1;
}

UsageModel prunedFreeTeaModel() {
  auto fts = fixtures::vendingFts();
  auto um = fixtures::vendingUm();
  Product p{"v", "b", "cur", "t", "c", "eur", "f"};
  return pruneUsageModel(um, project(fts, p));
}

}  // namespace

TEST_CASE("pruning the free-tea product renormalizes as expected") {
  UsageModel pruned = prunedFreeTeaModel();
  CHECK(probOf(pruned, "1", "free") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(probOf(pruned, "3", "cancel") == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(probOf(pruned, "3", "tea") == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(probOf(pruned, "7", "take") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(pruned.ts.states.count("2"));
  CHECK_FALSE(pruned.ts.states.count("8"));
  CHECK_FALSE(pruned.ts.states.count("9"));
  CHECK_NOTHROW(pruned.check());
}

TEST_CASE("identity pruning leaves the model unchanged") {
  auto um = fixtures::vendingUm();
  UsageModel pruned = pruneUsageModel(um, um.ts);
  CHECK(pruned.ts.states == um.ts.states);
  CHECK(pruned.ts.transitions == um.ts.transitions);
  for (size_t i = 0; i < pruned.probs.size(); ++i)
    CHECK(pruned.probs[i] == doctest::Approx(um.probs[i]).epsilon(1e-12));
}

TEST_CASE("pruning away all initial behavior fails") {
  auto um = fixtures::vendingUm();
  TransitionSystem empty;
  empty.initial = um.ts.initial;
  empty.states = um.ts.states;
  CHECK_THROWS_WITH_AS(pruneUsageModel(um, empty),
                       doctest::Contains("INITIAL_DEAD"), Error);
}

TEST_CASE("pruning preserves sibling ratios") {
  auto fts = fixtures::vendingFts();
  auto um = fixtures::vendingUm();
  for (const Product& p : enumerateProducts(*fts.diagram)) {
    UsageModel pruned;
    try {
      pruned = pruneUsageModel(um, project(fts, p));
    } catch (const Error& e) {
      CHECK(e.code() == "INITIAL_DEAD");
      continue;
    }
    CHECK_NOTHROW(pruned.check());
    for (size_t i = 0; i < pruned.ts.transitions.size(); ++i) {
      for (size_t j = 0; j < pruned.ts.transitions.size(); ++j) {
        if (i == j || pruned.ts.transitions[i].from != pruned.ts.transitions[j].from)
          continue;
        double before = um.probOf(pruned.ts.transitions[i]) /
                        um.probOf(pruned.ts.transitions[j]);
        double after = pruned.probs[i] / pruned.probs[j];
        CHECK(std::abs(before - after) < 1e-12);
      }
    }
  }
}

TEST_CASE("generateTests on a deterministic chain") {
  UsageModel chain;
  chain.ts.initial = "1";
  chain.ts.states = {"1", "2", "3"};
  chain.ts.actions = {"a", "b", "c"};
  chain.ts.transitions = {{"1", "a", "2"}, {"2", "b", "3"}, {"3", "c", "1"}};
  chain.probs = {1.0, 1.0, 1.0};
  chain.tau["1"] = 1.0;
  TestSuite suite = generateTests(chain, 50, 10, 7);
  CHECK(suite.cases.size() == 50);
  for (const FiniteTrace& t : suite.cases)
    CHECK(t.actions == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("generateTests is deterministic per seed") {
  UsageModel pruned = prunedFreeTeaModel();
  TestSuite a = generateTests(pruned, 200, 10, 42);
  TestSuite b = generateTests(pruned, 200, 10, 42);
  REQUIRE(a.cases.size() == b.cases.size());
  for (size_t i = 0; i < a.cases.size(); ++i)
    CHECK(a.cases[i].actions == b.cases[i].actions);
  TestSuite c = generateTests(pruned, 200, 10, 43);
  bool identical = a.cases.size() == c.cases.size();
  if (identical) {
    for (size_t i = 0; i < a.cases.size(); ++i)
      identical = identical && a.cases[i].actions == c.cases[i].actions;
  }
  CHECK_FALSE(identical);
}

TEST_CASE("generated cases satisfy the i-to-i membership conditions") {
  UsageModel pruned = prunedFreeTeaModel();
  TestSuite suite = generateTests(pruned, 500, 12, 11);
  auto cycles = oracle::enumerateCycles(pruned, 12);
  for (const FiniteTrace& t : suite.cases) {
    CHECK(executeTrace(pruned.ts, t));
    CHECK(cycles.count(t.actions));  // ends at i, no interior i
  }
}

TEST_CASE("invalid generation parameters") {
  UsageModel pruned = prunedFreeTeaModel();
  CHECK_THROWS_WITH_AS(generateTests(pruned, 0, 10, 1),
                       doctest::Contains("INVALID_PARAMS"), Error);
  CHECK_THROWS_WITH_AS(generateTests(pruned, 10, 0, 1),
                       doctest::Contains("INVALID_PARAMS"), Error);
}

TEST_CASE("empirical frequencies converge to model probabilities") {
  UsageModel pruned = prunedFreeTeaModel();
  const int walks = 10000;
  TestSuite suite = generateTests(pruned, walks, 10, 42);
  CHECK(suite.cases.size() == walks);  // every walk closes within 10 steps

  // The target trace's analytic probability, from the pruned model itself.
  FiniteTrace target{{"free", "tea", "serveTea", "take"}, std::nullopt};
  double analytic = traceProbability(pruned, target);
  CHECK(analytic == doctest::Approx(0.9).epsilon(1e-12));

  int hits = 0;
  for (const FiniteTrace& t : suite.cases)
    if (t.actions == target.actions) ++hits;
  double freq = static_cast<double>(hits) / walks;
  double sigma = std::sqrt(analytic * (1 - analytic) / walks);
  CHECK(std::abs(freq - analytic) <= 3 * sigma);

  // Chi-square goodness of fit per state over transition choices.
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
    CHECK(chi2 < oracle::chiSquareCritical99(static_cast<int>(idx.size()) - 1));
  }
}
