#include "spltest/derivation.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "spltest/errors.hpp"

namespace spltest {

UsageModel pruneUsageModel(const UsageModel& um, const TransitionSystem& ts) {
  // Keep only transitions also present (as triples) in ts.
  std::vector<Transition> transitions;
  std::vector<double> probs;
  for (size_t i = 0; i < um.ts.transitions.size(); ++i) {
    if (ts.hasTransition(um.ts.transitions[i])) {
      transitions.push_back(um.ts.transitions[i]);
      probs.push_back(um.probs[i]);
    }
  }

  // Drop dead states (no outgoing) and unreachable states to a fixpoint;
  // removing a state removes its incoming transitions, which can kill
  // predecessors in turn.
  std::set<std::string> alive = um.ts.states;
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<std::string> hasOut;
    for (const Transition& t : transitions) hasOut.insert(t.from);
    for (auto it = alive.begin(); it != alive.end();) {
      if (!hasOut.count(*it)) {
        if (*it == um.ts.initial)
          throw Error("INITIAL_DEAD",
                      "no behavior survives pruning at the initial state");
        it = alive.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
    std::set<std::string> reachable{um.ts.initial};
    std::deque<std::string> frontier{um.ts.initial};
    while (!frontier.empty()) {
      std::string s = frontier.front();
      frontier.pop_front();
      for (const Transition& t : transitions)
        if (t.from == s && alive.count(t.to) && reachable.insert(t.to).second)
          frontier.push_back(t.to);
    }
    if (reachable != alive) {
      alive = reachable;
      changed = true;
    }
    size_t before = transitions.size();
    for (size_t i = transitions.size(); i-- > 0;) {
      if (!alive.count(transitions[i].from) || !alive.count(transitions[i].to)) {
        transitions.erase(transitions.begin() + i);
        probs.erase(probs.begin() + i);
      }
    }
    if (transitions.size() != before) changed = true;
  }

  // Proportional renormalization restores row-stochasticity while keeping
  // sibling ratios.
  for (const std::string& s : alive) {
    double sum = 0.0;
    for (size_t i = 0; i < transitions.size(); ++i)
      if (transitions[i].from == s) sum += probs[i];
    if (sum > 0.0) {
      for (size_t i = 0; i < transitions.size(); ++i)
        if (transitions[i].from == s) probs[i] /= sum;
    }
  }

  UsageModel out;
  out.ts.initial = um.ts.initial;
  out.ts.states = alive;
  out.ts.transitions = std::move(transitions);
  for (const Transition& t : out.ts.transitions) out.ts.actions.insert(t.action);
  out.probs = std::move(probs);
  out.tau[um.ts.initial] = 1.0;
  out.check();
  return out;
}

namespace {

// Uniform double in [0,1) built from the generator's top 53 bits, so the
// draw sequence is identical across platforms.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

TestSuite generateTests(const UsageModel& um, int count, int maxLen,
                        std::uint64_t seed, bool includePartial) {
  if (count < 1 || maxLen < 1)
    throw Error("INVALID_PARAMS", "count and maxLen must be >= 1");
  um.check();

  TestSuite suite;
  suite.seed = seed;
  suite.count = count;
  suite.maxLen = maxLen;
  suite.generator = "mt19937_64";

  for (int walk = 0; walk < count; ++walk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(walk)};
    std::mt19937_64 rng(seq);

    FiniteTrace trace;
    std::string state = um.ts.initial;
    double prob = 1.0;
    bool complete = false;
    for (int step = 0; step < maxLen; ++step) {
      double u = uniform01(rng);
      double acc = 0.0;
      const Transition* chosen = nullptr;
      double chosenProb = 0.0;
      for (size_t i = 0; i < um.ts.transitions.size(); ++i) {
        if (um.ts.transitions[i].from != state) continue;
        acc += um.probs[i];
        chosen = &um.ts.transitions[i];
        chosenProb = um.probs[i];
        if (u < acc) break;
      }
      if (chosen == nullptr) break;  // absorbing state (pruned models avoid these)
      trace.actions.push_back(chosen->action);
      prob *= chosenProb;
      state = chosen->to;
      if (state == um.ts.initial) {
        complete = true;
        break;
      }
    }
    if (complete) {
      trace.probability = prob;
      suite.cases.push_back(std::move(trace));
    } else {
      ++suite.partialWalks;
      if (includePartial) {
        trace.probability = prob;
        suite.cases.push_back(std::move(trace));
      }
    }
  }
  return suite;
}

}  // namespace spltest
