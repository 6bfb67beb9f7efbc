#pragma once

#include <memory>
#include <string>

#include "spltest/behavior.hpp"
#include "spltest/json_io.hpp"

#ifndef SPLTEST_FIXTURE_DIR
#error "SPLTEST_FIXTURE_DIR must point at the bundled fixtures"
#endif

namespace spltest::fixtures {

inline std::string path(const std::string& name) {
  return std::string(SPLTEST_FIXTURE_DIR) + "/vending-machine/" + name;
}

inline std::shared_ptr<const FeatureDiagram> vendingFd() {
  return loadFeatureDiagram(path("fd.json"));
}

inline FeaturedTransitionSystem vendingFts() {
  return loadFts(path("fts.json"), vendingFd());
}

inline UsageModel vendingUm() { return loadUsageModel(path("um.json")); }

}  // namespace spltest::fixtures
