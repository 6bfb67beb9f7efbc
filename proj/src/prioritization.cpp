#include "spltest/prioritization.hpp"

#include <algorithm>
#include <functional>

#include "spltest/errors.hpp"
#include "spltest/sat.hpp"

namespace spltest {

namespace {

bool satisfiableWithDiagram(const FeatureDiagram& d,
                            const std::vector<Expr>& conjuncts) {
  CnfBuilder builder;
  for (const std::string& name : d.featureNames()) builder.varFor(name);
  builder.require(booleanForm(d));
  for (const Expr& e : conjuncts) builder.require(e);
  return solveSat(builder.cnf(), builder.varCount()).has_value();
}

// Every complete matching path whose guard conjunction is satisfiable with
// booleanForm(d); unsat prefixes are cut. Yields the transition index
// sequence of each such path.
void satisfiablePaths(const FeaturedTransitionSystem& fts, const FiniteTrace& t,
                      const std::function<void(const std::vector<size_t>&)>& emit) {
  std::vector<size_t> path;
  std::vector<Expr> conjuncts;
  std::function<void(const std::string&, size_t)> search =
      [&](const std::string& state, size_t pos) {
        if (pos == t.actions.size()) {
          emit(path);
          return;
        }
        for (size_t i = 0; i < fts.ts.transitions.size(); ++i) {
          const Transition& tr = fts.ts.transitions[i];
          if (tr.from != state || tr.action != t.actions[pos]) continue;
          conjuncts.push_back(fts.guards[i]);
          if (satisfiableWithDiagram(*fts.diagram, conjuncts)) {
            path.push_back(i);
            search(tr.to, pos + 1);
            path.pop_back();
          }
          conjuncts.pop_back();
        }
      };
  search(fts.ts.initial, 0);
}

Expr pathGuard(const FeaturedTransitionSystem& fts,
               const std::vector<size_t>& path) {
  std::vector<Expr> conjuncts;
  for (size_t i : path) conjuncts.push_back(fts.guards[i]);
  return Expr::conjunctionOf(conjuncts);
}

}  // namespace

bool accept(const FeaturedTransitionSystem& fts, const FiniteTrace& t) {
  bool found = false;
  // TODO: stop the path search at the first hit instead of enumerating all.
  satisfiablePaths(fts, t, [&](const std::vector<size_t>&) { found = true; });
  return found;
}

BuildResult buildFtsPrime(const FeaturedTransitionSystem& fts,
                          const TraceSet& traces) {
  BuildResult result;
  std::set<size_t> keptTransitions;
  std::set<std::string> keptStates{fts.ts.initial};

  for (const FiniteTrace& t : traces.traces) {
    bool anyPath = false;
    satisfiablePaths(fts, t, [&](const std::vector<size_t>& path) {
      anyPath = true;
      for (size_t i : path) {
        keptTransitions.insert(i);
        keptStates.insert(fts.ts.transitions[i].to);
      }
    });
    if (anyPath)
      result.accepted.traces.push_back(t);
    else
      result.rejected.push_back({t, "NO_SATISFIABLE_PATH"});
  }

  FeaturedTransitionSystem& out = result.ftsPrime.fts;
  out.diagram = fts.diagram;
  out.ts.initial = fts.ts.initial;
  out.ts.states = keptStates;
  for (size_t i = 0; i < fts.ts.transitions.size(); ++i) {
    if (keptTransitions.count(i)) {
      out.ts.transitions.push_back(fts.ts.transitions[i]);
      out.ts.actions.insert(fts.ts.transitions[i].action);
      out.guards.push_back(fts.guards[i]);
    }
  }
  return result;
}

std::pair<Expr, std::set<Product>> productsForTrace(const PrunedFts& ftsPrime,
                                                    const FiniteTrace& t) {
  const FeaturedTransitionSystem& fts = ftsPrime.fts;
  std::vector<Expr> perPath;
  satisfiablePaths(fts, t, [&](const std::vector<size_t>& path) {
    perPath.push_back(pathGuard(fts, path));
  });
  if (perPath.empty())
    throw Error("TRACE_REJECTED", "no satisfiable path matches the trace");
  Expr guard = perPath.size() == 1 ? perPath[0] : Expr::disjunctionOf(perPath);
  return {guard, satProducts(*fts.diagram, guard)};
}

PrioritizedReport prioritize(const PrunedFts& ftsPrime, const TraceSet& traces,
                             SortOrder order) {
  PrioritizedReport report;
  report.order = order;
  for (const FiniteTrace& t : traces.traces) {
    auto [guard, products] = productsForTrace(ftsPrime, t);
    // accept implies satisfiability, so the product set cannot be empty.
    if (products.empty())
      throw Error("TRACE_REJECTED", "accepted trace has no products");
    report.entries.push_back(
        {t, t.probability.value_or(0.0), guard, std::move(products)});
  }
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [order](const PrioritizedEntry& a, const PrioritizedEntry& b) {
                     if (a.probability != b.probability) {
                       return order == SortOrder::Asc
                                  ? a.probability < b.probability
                                  : a.probability > b.probability;
                     }
                     return a.trace.actions < b.trace.actions;
                   });
  return report;
}

}  // namespace spltest
