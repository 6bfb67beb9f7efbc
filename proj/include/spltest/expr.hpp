#pragma once

#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace spltest {

// Propositional formula over feature names. Nodes are immutable and shared;
// copying an Expr is cheap.
class Expr {
 public:
  enum class Kind { True, False, Var, Not, And, Or };

  static Expr constant(bool value);
  static Expr var(std::string name);
  static Expr negate(Expr e);
  static Expr conjunction(Expr lhs, Expr rhs);
  static Expr disjunction(Expr lhs, Expr rhs);
  static Expr implies(Expr lhs, Expr rhs);  // sugar: !lhs || rhs

  // Folds a list with the given connective; empty list yields the unit
  // (TRUE for AND, FALSE for OR).
  static Expr conjunctionOf(const std::vector<Expr>& terms);
  static Expr disjunctionOf(const std::vector<Expr>& terms);

  Kind kind() const { return node_->kind; }
  const std::string& varName() const { return node_->name; }
  const Expr& operand() const { return node_->children[0]; }    // Not
  const Expr& lhs() const { return node_->children[0]; }        // And/Or
  const Expr& rhs() const { return node_->children[1]; }

  bool evaluate(const std::set<std::string>& trueVars) const;

  // Collects every variable name appearing in the formula.
  void collectVars(std::set<std::string>& out) const;
  std::set<std::string> vars() const;

  // Renders in the `expr := term ('||' term)*` grammar, parenthesized only
  // where precedence requires.
  std::string toString() const;

  bool structurallyEqual(const Expr& other) const;

 private:
  struct Node {
    Kind kind;
    std::string name;            // Var only
    std::vector<Expr> children;  // Not: 1, And/Or: 2
  };

  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Parses the feature-expression grammar:
//   expr   := term ('||' term)*
//   term   := factor ('&&' factor)*
//   factor := '!' factor | '(' expr ')' | TRUE | FALSE | identifier
// Identifiers match [A-Za-z_][A-Za-z0-9_]*; TRUE/FALSE are reserved.
// Throws Error("SYNTAX") on malformed input.
Expr parseExpr(const std::string& text);

}  // namespace spltest
