#include "spltest/feature_model.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "spltest/errors.hpp"
#include "spltest/sat.hpp"

namespace spltest {

std::string toString(GroupKind kind) {
  switch (kind) {
    case GroupKind::Mandatory:
      return "MANDATORY";
    case GroupKind::Optional:
      return "OPTIONAL";
    case GroupKind::Or:
      return "OR";
    case GroupKind::Xor:
      return "XOR";
  }
  return "?";
}

GroupKind groupKindFromString(const std::string& text) {
  if (text == "MANDATORY") return GroupKind::Mandatory;
  if (text == "OPTIONAL") return GroupKind::Optional;
  if (text == "OR") return GroupKind::Or;
  if (text == "XOR") return GroupKind::Xor;
  throw Error("SYNTAX", "unknown group kind '" + text + "'");
}

namespace {

bool isIdentifier(const std::string& name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_')
    return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

FeatureDiagram::FeatureDiagram(std::string root,
                               const std::vector<FeatureRow>& features,
                               const std::vector<std::string>& constraintTexts)
    : root_(std::move(root)), constraintTexts_(constraintTexts) {
  if (!isIdentifier(root_))
    throw Error("SYNTAX", "invalid root feature name '" + root_ + "'");

  featureNames_.push_back(root_);
  std::set<std::string> seen{root_};
  std::map<std::string, std::string> parentOf;
  for (const FeatureRow& row : features) {
    if (!isIdentifier(row.name))
      throw Error("SYNTAX", "invalid feature name '" + row.name + "'");
    if (!seen.insert(row.name).second) {
      // Re-declaration under another parent is a tree violation, not a mere
      // duplicate entry.
      auto it = parentOf.find(row.name);
      if (it != parentOf.end() && it->second != row.parent)
        throw Error("NOT_A_TREE", "feature '" + row.name +
                                      "' appears under two parents");
      throw Error("DUPLICATE_FEATURE", "feature '" + row.name +
                                           "' declared more than once");
    }
    featureNames_.push_back(row.name);
    parentOf.emplace(row.name, row.parent);
  }

  // Tree check: every parent exists and every feature reaches the root.
  for (const auto& [child, parent] : parentOf) {
    if (!seen.count(parent))
      throw Error("NOT_A_TREE",
                  "feature '" + child + "' has unknown parent '" + parent + "'");
  }
  for (const std::string& name : featureNames_) {
    std::string cur = name;
    size_t steps = 0;
    while (cur != root_) {
      cur = parentOf.at(cur);
      if (++steps > featureNames_.size())
        throw Error("NOT_A_TREE", "cycle through feature '" + name + "'");
    }
  }

  // Group assembly in document order. OR/XOR members aggregate by
  // (parent, groupId); mixed kinds on one groupId are rejected.
  std::map<std::string, size_t> parentSlot;
  std::map<std::pair<std::string, int>, std::pair<size_t, size_t>> groupSlot;
  for (const FeatureRow& row : features) {
    auto slotIt = parentSlot.find(row.parent);
    if (slotIt == parentSlot.end()) {
      groups_.emplace_back(row.parent, std::vector<ChildGroup>{});
      slotIt = parentSlot.emplace(row.parent, groups_.size() - 1).first;
    }
    std::vector<ChildGroup>& parentGroups = groups_[slotIt->second].second;
    if (row.kind == GroupKind::Or || row.kind == GroupKind::Xor) {
      auto key = std::make_pair(row.parent, row.groupId);
      auto it = groupSlot.find(key);
      if (it == groupSlot.end()) {
        parentGroups.push_back({row.kind, {row.name}});
        groupSlot.emplace(key, std::make_pair(slotIt->second,
                                              parentGroups.size() - 1));
      } else {
        ChildGroup& g = groups_[it->second.first].second[it->second.second];
        if (g.kind != row.kind)
          throw Error("SYNTAX", "group " + std::to_string(row.groupId) +
                                    " under '" + row.parent +
                                    "' mixes OR and XOR members");
        g.members.push_back(row.name);
      }
    } else {
      parentGroups.push_back({row.kind, {row.name}});
    }
  }

  for (const std::string& text : constraintTexts) {
    Expr e = parseExpr(text);
    for (const std::string& v : e.vars()) {
      if (!seen.count(v))
        throw Error("UNKNOWN_FEATURE",
                    "constraint '" + text + "' names unknown feature '" + v + "'");
    }
    constraints_.push_back(e);
  }
}

bool FeatureDiagram::hasFeature(const std::string& name) const {
  return std::find(featureNames_.begin(), featureNames_.end(), name) !=
         featureNames_.end();
}

bool FeatureDiagram::structurallyEquals(const FeatureDiagram& other) const {
  if (root_ != other.root_ || featureNames_ != other.featureNames_)
    return false;
  if (groups_.size() != other.groups_.size()) return false;
  for (size_t i = 0; i < groups_.size(); ++i) {
    if (groups_[i].first != other.groups_[i].first) return false;
    const auto& a = groups_[i].second;
    const auto& b = other.groups_[i].second;
    if (a.size() != b.size()) return false;
    for (size_t j = 0; j < a.size(); ++j)
      if (a[j].kind != b[j].kind || a[j].members != b[j].members) return false;
  }
  if (constraints_.size() != other.constraints_.size()) return false;
  for (size_t i = 0; i < constraints_.size(); ++i)
    if (!constraints_[i].structurallyEqual(other.constraints_[i])) return false;
  return true;
}

Expr booleanForm(const FeatureDiagram& d) {
  std::vector<Expr> clauses;
  clauses.push_back(Expr::var(d.root()));
  for (const auto& [parent, childGroups] : d.groups()) {
    Expr parentVar = Expr::var(parent);
    for (const ChildGroup& g : childGroups) {
      for (const std::string& member : g.members)
        clauses.push_back(Expr::implies(Expr::var(member), parentVar));
      switch (g.kind) {
        case GroupKind::Mandatory:
          clauses.push_back(Expr::implies(parentVar, Expr::var(g.members[0])));
          break;
        case GroupKind::Optional:
          break;
        case GroupKind::Or: {
          std::vector<Expr> members;
          for (const std::string& m : g.members) members.push_back(Expr::var(m));
          clauses.push_back(
              Expr::implies(parentVar, Expr::disjunctionOf(members)));
          break;
        }
        case GroupKind::Xor: {
          std::vector<Expr> members;
          for (const std::string& m : g.members) members.push_back(Expr::var(m));
          clauses.push_back(
              Expr::implies(parentVar, Expr::disjunctionOf(members)));
          for (size_t i = 0; i < g.members.size(); ++i)
            for (size_t j = i + 1; j < g.members.size(); ++j)
              clauses.push_back(Expr::implies(
                  parentVar,
                  Expr::negate(Expr::conjunction(Expr::var(g.members[i]),
                                                 Expr::var(g.members[j])))));
          break;
        }
      }
    }
  }
  for (const Expr& c : d.crossConstraints()) clauses.push_back(c);
  return Expr::conjunctionOf(clauses);
}

bool isValidProduct(const FeatureDiagram& d, const Product& p) {
  for (const std::string& name : p)
    if (!d.hasFeature(name)) return false;
  return booleanForm(d).evaluate(p);
}

std::set<Product> enumerateProducts(const FeatureDiagram& d, int featureCap) {
  const auto& names = d.featureNames();
  int n = static_cast<int>(names.size());
  if (n > featureCap)
    throw Error("TOO_LARGE", std::to_string(n) + " features exceeds cap of " +
                                 std::to_string(featureCap) +
                                 "; use satProducts with a constraint");
  Expr form = booleanForm(d);
  std::set<Product> products;
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    Product p;
    for (int i = 0; i < n; ++i)
      if (mask & (uint64_t{1} << i)) p.insert(names[i]);
    if (form.evaluate(p)) products.insert(std::move(p));
  }
  return products;
}

std::set<Product> satProducts(const FeatureDiagram& d, const Expr& e) {
  for (const std::string& v : e.vars()) {
    if (!d.hasFeature(v))
      throw Error("UNKNOWN_FEATURE",
                  "expression names unknown feature '" + v + "'");
  }
  CnfBuilder builder;
  std::vector<int> featureVars;
  std::map<int, std::string> nameOf;
  for (const std::string& name : d.featureNames()) {
    int v = builder.varFor(name);
    featureVars.push_back(v);
    nameOf.emplace(v, name);
  }
  builder.require(booleanForm(d));
  builder.require(e);
  std::set<Product> products;
  for (const auto& solution :
       allSatProjected(builder.cnf(), builder.varCount(), featureVars)) {
    Product p;
    for (const auto& [var, value] : solution)
      if (value) p.insert(nameOf.at(var));
    products.insert(std::move(p));
  }
  return products;
}

}  // namespace spltest
