#pragma once

#include <set>
#include <string>
#include <vector>

#include "spltest/behavior.hpp"
#include "spltest/feature_model.hpp"
#include "spltest/trace_selection.hpp"

namespace spltest {

enum class SortOrder { Asc, Desc };

struct PrioritizedEntry {
  FiniteTrace trace;
  double probability;
  Expr guard;             // conjoined guards along the matched path(s)
  std::set<Product> products;
};

struct PrioritizedReport {
  SortOrder order;
  std::vector<PrioritizedEntry> entries;
};

// Step 2 output: the FTS restricted to what the accepted traces exercise.
// Sub-structure of the source FTS with the same initial state and diagram.
struct PrunedFts {
  FeaturedTransitionSystem fts;
};

// Reasons recorded for traces dropped while building the FTS'.
struct RejectedTrace {
  FiniteTrace trace;
  std::string reason;  // "NO_SATISFIABLE_PATH"
};

// True iff some path from the initial state labelled t.actions has a jointly
// satisfiable guard conjunction under booleanForm(d). Unsatisfiable partial
// conjunctions are abandoned early.
bool accept(const FeaturedTransitionSystem& fts, const FiniteTrace& t);

// The FTS'-building step: unions states, actions, transitions and guards of
// every satisfiable matching path of every accepted trace; rejected traces
// are removed from the returned set. An all-rejected input yields the
// degenerate FTS' holding only the initial state.
struct BuildResult {
  PrunedFts ftsPrime;
  TraceSet accepted;
  std::vector<RejectedTrace> rejected;
};
BuildResult buildFtsPrime(const FeaturedTransitionSystem& fts,
                          const TraceSet& traces);

// prod(t, fts'): the guard is the conjunction of gamma along the matched
// path, or the disjunction of per-path conjunctions when several satisfiable
// paths match; products are satProducts of that guard. Throws
// Error("TRACE_REJECTED") when no satisfiable path matches.
std::pair<Expr, std::set<Product>> productsForTrace(
    const PrunedFts& ftsPrime, const FiniteTrace& t);

// Step 3: one entry per trace, sorted by probability in the given order,
// ties broken lexicographically by action sequence. Probabilities are the
// ones carried by the traces. Throws Error("TRACE_REJECTED") if any trace is
// not accepted by the FTS'.
PrioritizedReport prioritize(const PrunedFts& ftsPrime, const TraceSet& traces,
                             SortOrder order);

}  // namespace spltest
