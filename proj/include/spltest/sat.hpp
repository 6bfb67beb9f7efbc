#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spltest/expr.hpp"

namespace spltest {

// CNF over positive integer variables; a literal is +v or -v.
using Clause = std::vector<int>;
using Cnf = std::vector<Clause>;

// Tseitin-encodes a formula. Named variables get the indices recorded in
// `varIndex` (1-based); auxiliary gate variables follow. The returned CNF is
// satisfiable exactly when the formula is.
class CnfBuilder {
 public:
  // Reserves an index for `name`; idempotent.
  int varFor(const std::string& name);

  // Adds clauses asserting that `e` holds.
  void require(const Expr& e);

  const Cnf& cnf() const { return cnf_; }
  int varCount() const { return next_ - 1; }
  const std::map<std::string, int>& varIndex() const { return varIndex_; }

 private:
  int encode(const Expr& e);  // returns a literal equivalent to e
  int fresh() { return next_++; }

  std::map<std::string, int> varIndex_;
  Cnf cnf_;
  int next_ = 1;
};

// Plain DPLL with unit propagation. Returns a full assignment
// (index 1..varCount, assignment[v] = value) or nullopt if unsatisfiable.
std::optional<std::vector<bool>> solveSat(const Cnf& cnf, int varCount);

// Enumerates every distinct assignment to `projectVars` extendable to a model
// of the CNF, by iterative solving with blocking clauses over `projectVars`
// only. Each result maps variable index -> value.
std::vector<std::map<int, bool>> allSatProjected(Cnf cnf, int varCount,
                                                 const std::vector<int>& projectVars);

}  // namespace spltest
