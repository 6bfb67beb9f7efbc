#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spltest/expr.hpp"
#include "spltest/feature_model.hpp"

namespace spltest {

struct Transition {
  std::string from;
  std::string action;
  std::string to;

  auto operator<=>(const Transition&) const = default;
};

// Plain labelled transition system. State ids and action labels are strings.
struct TransitionSystem {
  std::set<std::string> states;
  std::set<std::string> actions;
  std::vector<Transition> transitions;  // document order, no duplicates
  std::string initial;

  bool hasTransition(const Transition& t) const;
  std::vector<Transition> outgoing(const std::string& state) const;

  // Checks the structural invariants; throws Error("MALFORMED_TS") on failure.
  void check() const;
};

// Transition system whose transitions carry feature expressions (guards).
struct FeaturedTransitionSystem {
  TransitionSystem ts;
  std::shared_ptr<const FeatureDiagram> diagram;
  // Guard per transition, parallel to ts.transitions (totality by construction).
  std::vector<Expr> guards;

  const Expr& guardOf(const Transition& t) const;
  void check() const;
};

// DTMC usage model over a subset of an FTS.
struct UsageModel {
  TransitionSystem ts;
  std::vector<double> probs;  // parallel to ts.transitions
  std::map<std::string, double> tau;  // initial distribution

  double probOf(const Transition& t) const;
  // Type invariants: tau is 1 on exactly one state (the initial) and 0
  // elsewhere, rows sum to 1 within 1e-9, probabilities in [0,1].
  // Throws Error("MALFORMED_UM").
  void check() const;
};

struct FiniteTrace {
  std::vector<std::string> actions;
  std::optional<double> probability;

  bool operator<(const FiniteTrace& other) const {
    return actions < other.actions;
  }
  bool operator==(const FiniteTrace& other) const {
    return actions == other.actions;
  }
};

struct Violation {
  std::string code;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool valid() const { return violations.empty(); }
};

inline constexpr double kStochasticEps = 1e-9;

// Cross-model consistency: fts.diagram equals d, usage model is a
// sub-structure of the FTS, tau(initial)=1, rows stochastic. Collects every
// violation rather than stopping at the first.
ValidationReport validateTriple(const FeatureDiagram& d,
                                const FeaturedTransitionSystem& fts,
                                const UsageModel& um);

// fts|p: keeps exactly the transitions whose guard holds under p. With
// `pruneUnreachable` (default) states not reachable from the initial state
// are dropped. Throws Error("INVALID_PRODUCT") when p is not in [[d]].
TransitionSystem project(const FeaturedTransitionSystem& fts, const Product& p,
                         bool pruneUnreachable = true);

// True iff some path from ts.initial is labelled exactly t.actions.
// Nondeterministic labels are resolved by exhaustive search. Empty trace: true.
bool executeTrace(const TransitionSystem& ts, const FiniteTrace& t);

// Product of per-transition probabilities along the path matching t from the
// initial state; with several matching paths the maximum-probability one is
// used. Empty trace: 1. Throws Error("NO_SUCH_PATH") when t is not executable.
double traceProbability(const UsageModel& um, const FiniteTrace& t);

}  // namespace spltest
