#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "spltest/expr.hpp"

namespace spltest {

// A product is the set of selected feature names, canonically ordered.
using Product = std::set<std::string>;

enum class GroupKind { Mandatory, Optional, Or, Xor };

std::string toString(GroupKind kind);
GroupKind groupKindFromString(const std::string& text);

// One child group under a parent feature. MANDATORY/OPTIONAL groups hold a
// single member; OR/XOR groups hold the members sharing a groupId.
struct ChildGroup {
  GroupKind kind;
  std::vector<std::string> members;  // document order
};

// Feature tree with group decomposition and cross-tree constraints.
// Immutable after construction; denotes the product set [[d]].
class FeatureDiagram {
 public:
  // Builds and validates the diagram. `features` lists (name, parent, kind,
  // groupId) rows in document order; groupId is meaningful for OR/XOR only.
  struct FeatureRow {
    std::string name;
    std::string parent;
    GroupKind kind = GroupKind::Optional;
    int groupId = -1;
  };

  FeatureDiagram(std::string root, const std::vector<FeatureRow>& features,
                 const std::vector<std::string>& constraintTexts);

  const std::string& root() const { return root_; }
  const std::vector<std::string>& featureNames() const { return featureNames_; }
  bool hasFeature(const std::string& name) const;
  const std::vector<std::pair<std::string, std::vector<ChildGroup>>>& groups()
      const {
    return groups_;
  }
  const std::vector<Expr>& crossConstraints() const { return constraints_; }

  bool structurallyEquals(const FeatureDiagram& other) const;

 private:
  std::string root_;
  std::vector<std::string> featureNames_;  // document order, root first
  // (parent, child groups) in document order of parents.
  std::vector<std::pair<std::string, std::vector<ChildGroup>>> groups_;
  std::vector<Expr> constraints_;
  std::vector<std::string> constraintTexts_;
};

// Propositional encoding of [[d]]: root clause, child->parent clauses,
// MANDATORY equivalences, OR/XOR group cardinalities, cross constraints.
// Deterministic: equal diagrams produce structurally equal formulas.
Expr booleanForm(const FeatureDiagram& d);

// True iff `p` is a valid product of `d` (satisfies booleanForm and mentions
// only known features).
bool isValidProduct(const FeatureDiagram& d, const Product& p);

// All valid products, by exhaustive evaluation of booleanForm over the
// feature variables. Throws Error("TOO_LARGE") above `featureCap`.
std::set<Product> enumerateProducts(const FeatureDiagram& d, int featureCap = 30);

// { p in [[d]] | p |= e }, via all-solutions SAT over booleanForm(d) && e
// with blocking clauses on feature variables only.
// Throws Error("UNKNOWN_FEATURE") if e mentions a non-feature.
std::set<Product> satProducts(const FeatureDiagram& d, const Expr& e);

}  // namespace spltest
