#include "spltest/behavior.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>

#include "spltest/errors.hpp"

namespace spltest {

bool TransitionSystem::hasTransition(const Transition& t) const {
  return std::find(transitions.begin(), transitions.end(), t) !=
         transitions.end();
}

std::vector<Transition> TransitionSystem::outgoing(
    const std::string& state) const {
  std::vector<Transition> out;
  for (const Transition& t : transitions)
    if (t.from == state) out.push_back(t);
  return out;
}

void TransitionSystem::check() const {
  if (!states.count(initial))
    throw Error("MALFORMED_TS", "initial state '" + initial + "' not in states");
  std::set<Transition> seen;
  for (const Transition& t : transitions) {
    if (!states.count(t.from) || !states.count(t.to))
      throw Error("MALFORMED_TS", "transition " + t.from + "-" + t.action +
                                      "->" + t.to + " has unknown endpoint");
    if (!actions.count(t.action))
      throw Error("MALFORMED_TS", "action '" + t.action + "' not declared");
    if (!seen.insert(t).second)
      throw Error("MALFORMED_TS", "duplicate transition " + t.from + "-" +
                                      t.action + "->" + t.to);
  }
}

const Expr& FeaturedTransitionSystem::guardOf(const Transition& t) const {
  for (size_t i = 0; i < ts.transitions.size(); ++i)
    if (ts.transitions[i] == t) return guards[i];
  throw Error("MALFORMED_TS", "no guard for transition " + t.from + "-" +
                                  t.action + "->" + t.to);
}

void FeaturedTransitionSystem::check() const {
  ts.check();
  if (!diagram) throw Error("MALFORMED_TS", "missing feature diagram");
  if (guards.size() != ts.transitions.size())
    throw Error("MALFORMED_TS", "guard map is not total");
  for (const Expr& g : guards) {
    for (const std::string& v : g.vars())
      if (!diagram->hasFeature(v))
        throw Error("UNKNOWN_FEATURE",
                    "guard names unknown feature '" + v + "'");
  }
}

double UsageModel::probOf(const Transition& t) const {
  for (size_t i = 0; i < ts.transitions.size(); ++i)
    if (ts.transitions[i] == t) return probs[i];
  throw Error("MALFORMED_UM", "no probability for transition " + t.from + "-" +
                                  t.action + "->" + t.to);
}

void UsageModel::check() const {
  ts.check();
  if (probs.size() != ts.transitions.size())
    throw Error("MALFORMED_UM", "probability map is not total");
  for (double p : probs)
    if (!(p >= 0.0 && p <= 1.0))
      throw Error("MALFORMED_UM", "transition probability out of [0,1]");
  int ones = 0;
  for (const auto& [state, p] : tau) {
    if (p == 1.0) {
      ++ones;
      if (state != ts.initial)
        throw Error("MALFORMED_UM", "tau assigns 1 to non-initial state '" +
                                        state + "'");
    } else if (p != 0.0) {
      throw Error("MALFORMED_UM", "tau must be 0/1 valued");
    }
  }
  if (ones != 1)
    throw Error("MALFORMED_UM", "tau must assign 1 to exactly one state");
  for (const std::string& s : ts.states) {
    double sum = 0.0;
    bool any = false;
    for (size_t i = 0; i < ts.transitions.size(); ++i) {
      if (ts.transitions[i].from == s) {
        sum += probs[i];
        any = true;
      }
    }
    if (any && std::abs(sum - 1.0) > kStochasticEps)
      throw Error("MALFORMED_UM", "outgoing probabilities of state '" + s +
                                      "' sum to " + std::to_string(sum));
  }
}

ValidationReport validateTriple(const FeatureDiagram& d,
                                const FeaturedTransitionSystem& fts,
                                const UsageModel& um) {
  ValidationReport report;
  if (!fts.diagram || !fts.diagram->structurallyEquals(d))
    report.violations.push_back(
        {"FD_MISMATCH", "the FTS's feature diagram differs from d"});
  for (const std::string& s : um.ts.states)
    if (!fts.ts.states.count(s))
      report.violations.push_back(
          {"STATE_NOT_SUBSET", "usage-model state '" + s + "' absent from FTS"});
  for (const std::string& a : um.ts.actions)
    if (!fts.ts.actions.count(a))
      report.violations.push_back(
          {"ACT_NOT_SUBSET", "usage-model action '" + a + "' absent from FTS"});
  for (const Transition& t : um.ts.transitions)
    if (!fts.ts.hasTransition(t))
      report.violations.push_back(
          {"TRANS_NOT_SUBSET", "usage-model transition " + t.from + "-" +
                                   t.action + "->" + t.to +
                                   " absent from FTS"});
  auto it = um.tau.find(fts.ts.initial);
  if (it == um.tau.end() || it->second != 1.0)
    report.violations.push_back(
        {"TAU_NOT_INITIAL",
         "tau does not assign 1 to the FTS initial state '" + fts.ts.initial +
             "'"});
  for (const std::string& s : um.ts.states) {
    double sum = 0.0;
    bool any = false;
    for (size_t i = 0; i < um.ts.transitions.size(); ++i) {
      if (um.ts.transitions[i].from == s) {
        sum += um.probs[i];
        any = true;
      }
    }
    if (any && std::abs(sum - 1.0) > kStochasticEps)
      report.violations.push_back(
          {"NOT_STOCHASTIC", "outgoing probabilities of state '" + s +
                                 "' sum to " + std::to_string(sum)});
  }
  return report;
}

TransitionSystem project(const FeaturedTransitionSystem& fts, const Product& p,
                         bool pruneUnreachable) {
  if (!isValidProduct(*fts.diagram, p))
    throw Error("INVALID_PRODUCT", "product is not in [[d]]");
  TransitionSystem out;
  out.initial = fts.ts.initial;
  out.states = fts.ts.states;
  for (size_t i = 0; i < fts.ts.transitions.size(); ++i) {
    if (fts.guards[i].evaluate(p)) {
      out.transitions.push_back(fts.ts.transitions[i]);
      out.actions.insert(fts.ts.transitions[i].action);
    }
  }
  if (pruneUnreachable) {
    std::set<std::string> reachable{out.initial};
    std::deque<std::string> frontier{out.initial};
    while (!frontier.empty()) {
      std::string s = frontier.front();
      frontier.pop_front();
      for (const Transition& t : out.transitions) {
        if (t.from == s && reachable.insert(t.to).second)
          frontier.push_back(t.to);
      }
    }
    out.states = reachable;
    std::erase_if(out.transitions, [&](const Transition& t) {
      return !reachable.count(t.from);
    });
    out.actions.clear();
    for (const Transition& t : out.transitions) out.actions.insert(t.action);
  }
  return out;
}

bool executeTrace(const TransitionSystem& ts, const FiniteTrace& t) {
  // Memoize failed (state, position) pairs; the search graph is acyclic in
  // the position coordinate.
  std::set<std::pair<std::string, size_t>> dead;
  std::function<bool(const std::string&, size_t)> search =
      [&](const std::string& state, size_t pos) -> bool {
    if (pos == t.actions.size()) return true;
    if (dead.count({state, pos})) return false;
    for (const Transition& tr : ts.transitions) {
      if (tr.from == state && tr.action == t.actions[pos] &&
          search(tr.to, pos + 1))
        return true;
    }
    dead.insert({state, pos});
    return false;
  };
  return search(ts.initial, 0);
}

double traceProbability(const UsageModel& um, const FiniteTrace& t) {
  double best = -1.0;
  std::function<void(const std::string&, size_t, double)> search =
      [&](const std::string& state, size_t pos, double acc) {
        if (pos == t.actions.size()) {
          best = std::max(best, acc);
          return;
        }
        for (size_t i = 0; i < um.ts.transitions.size(); ++i) {
          const Transition& tr = um.ts.transitions[i];
          if (tr.from == state && tr.action == t.actions[pos])
            search(tr.to, pos + 1, acc * um.probs[i]);
        }
      };
  search(um.ts.initial, 0, 1.0);
  if (best < 0.0)
    throw Error("NO_SUCH_PATH", "trace is not executable in the usage model");
  return best;
}

}  // namespace spltest
