#include "spltest/trace_selection.hpp"

#include <functional>
#include <map>

#include "spltest/errors.hpp"

namespace spltest {

void SelectionParams::check() const {
  if (lMax < 1) throw Error("INVALID_PARAMS", "lMax must be >= 1");
  if (!(prMin >= 0.0 && prMin <= prMax && prMax <= 1.0))
    throw Error("INVALID_PARAMS", "need 0 <= prMin <= prMax <= 1");
}

TraceSet dfsSelect(const UsageModel& um, const SelectionParams& params,
                   SelectionAudit* audit) {
  params.check();
  const std::string& initial = um.ts.initial;

  // With nondeterministic labels one action sequence can match several
  // paths; Pr(t) is the maximum over them, matching traceProbability. The
  // interval test runs on Pr(t) after the search completes.
  std::map<std::vector<std::string>, double> completed;

  std::vector<std::string> labels;
  std::function<void(const std::string&, double)> explore =
      [&](const std::string& state, double acc) {
        for (size_t i = 0; i < um.ts.transitions.size(); ++i) {
          const Transition& tr = um.ts.transitions[i];
          if (tr.from != state) continue;
          double next = acc * um.probs[i];
          if (params.pruneBelowMin && next < params.prMin) {
            if (audit) ++audit->prunedBranches;
            continue;
          }
          labels.push_back(tr.action);
          if (tr.to == initial) {
            // A completed i-to-i cycle; the branch ends here either way.
            auto [it, fresh] = completed.emplace(labels, next);
            if (!fresh && next > it->second) it->second = next;
          } else if (static_cast<int>(labels.size()) < params.lMax) {
            explore(tr.to, next);
          } else if (audit) {
            ++audit->depthCutoffs;
          }
          labels.pop_back();
        }
      };
  explore(initial, 1.0);

  TraceSet out;
  for (const auto& [actions, prob] : completed) {
    if (prob >= params.prMin && prob <= params.prMax)
      out.traces.push_back({actions, prob});
    else if (audit)
      audit->intervalRejected.push_back({actions, prob});
  }
  return out;
}

}  // namespace spltest
