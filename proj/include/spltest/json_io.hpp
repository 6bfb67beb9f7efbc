#pragma once

#include <memory>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "spltest/behavior.hpp"
#include "spltest/derivation.hpp"
#include "spltest/feature_model.hpp"
#include "spltest/prioritization.hpp"
#include "spltest/trace_selection.hpp"

namespace spltest {

// Interchange formats. All loaders throw Error("SYNTAX") on malformed JSON
// or schema violations; model-level problems surface with their own codes
// (DUPLICATE_FEATURE, NOT_A_TREE, UNKNOWN_FEATURE, MALFORMED_TS, ...).

std::shared_ptr<const FeatureDiagram> parseFeatureDiagram(const std::string& text);
FeaturedTransitionSystem parseFts(const std::string& text,
                                  std::shared_ptr<const FeatureDiagram> diagram);
UsageModel parseUsageModel(const std::string& text);

std::shared_ptr<const FeatureDiagram> loadFeatureDiagram(const std::string& path);
FeaturedTransitionSystem loadFts(const std::string& path,
                                 std::shared_ptr<const FeatureDiagram> diagram);
UsageModel loadUsageModel(const std::string& path);

// Probabilities in emitted JSON are rounded to 12 significant digits so
// report files are byte-stable across platforms.
double roundTo12Significant(double value);

nlohmann::json toJson(const ValidationReport& report);
nlohmann::json toJson(const TraceSet& traces, const SelectionAudit* audit);
nlohmann::json toJson(const FeaturedTransitionSystem& fts);
nlohmann::json toJson(const PrioritizedReport& report);
nlohmann::json toJson(const TestSuite& suite);

std::string readFile(const std::string& path);   // Error("IO") on failure
void writeFile(const std::string& path, const std::string& content);

}  // namespace spltest
