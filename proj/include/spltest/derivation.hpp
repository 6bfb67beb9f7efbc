#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spltest/behavior.hpp"

namespace spltest {

struct TestSuite {
  std::uint64_t seed = 0;
  int count = 0;
  int maxLen = 0;
  std::string generator;          // RNG identity, recorded for reproducibility
  std::vector<FiniteTrace> cases; // completed i-to-i walks
  int partialWalks = 0;           // walks truncated at maxLen (excluded unless kept)
};

// Restricts the usage model to the transitions present in `ts` and
// renormalizes each state's remaining outgoing probabilities proportionally.
// States left without outgoing transitions, and states unreachable from the
// initial state, are removed (cascading to a fixpoint). Throws
// Error("INITIAL_DEAD") when the initial state loses all outgoing
// transitions.
UsageModel pruneUsageModel(const UsageModel& um, const TransitionSystem& ts);

// Whittaker-style statistical test generation: `count` independent random
// walks from the initial state, each transition drawn with its model
// probability. A walk ends on return to the initial state or after `maxLen`
// steps; truncated walks count as partial and are kept only when
// `includePartial` is set. Walk k uses an mt19937_64 stream seeded from
// (seed, k), so generation is deterministic and order-independent.
TestSuite generateTests(const UsageModel& um, int count, int maxLen,
                        std::uint64_t seed, bool includePartial = false);

}  // namespace spltest
