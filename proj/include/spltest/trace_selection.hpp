#pragma once

#include <cstdint>
#include <vector>

#include "spltest/behavior.hpp"

namespace spltest {

struct SelectionParams {
  int lMax = 1;          // maximum trace length, in transitions
  double prMin = 0.0;
  double prMax = 1.0;
  // Cutting branches whose running probability is already below prMin is
  // behavior-preserving (path probability never increases); kept as a flag
  // so the property can be tested against the unpruned run.
  bool pruneBelowMin = true;

  void check() const;  // throws Error("INVALID_PARAMS")
};

// Optional log of what the search discarded.
struct SelectionAudit {
  std::uint64_t prunedBranches = 0;   // cut early: running prob < prMin
  std::uint64_t depthCutoffs = 0;     // cut: depth would exceed lMax
  // Completed i-to-i traces rejected by the probability interval.
  std::vector<FiniteTrace> intervalRejected;
};

struct TraceSet {
  std::vector<FiniteTrace> traces;  // lexicographic by action sequence
};

// Step 1 of the family-based pipeline: depth-first extraction of the traces
// t = (a1..an) labelling paths from the initial state back to itself with no
// interior visit of it, n <= lMax and prMin <= Pr(t) <= prMax (inclusive).
// A branch ends the moment it re-enters the initial state.
TraceSet dfsSelect(const UsageModel& um, const SelectionParams& params,
                   SelectionAudit* audit = nullptr);

}  // namespace spltest
