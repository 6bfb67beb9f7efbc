#include "spltest/sat.hpp"

#include <cmath>
#include <cstdlib>

namespace spltest {

int CnfBuilder::varFor(const std::string& name) {
  auto it = varIndex_.find(name);
  if (it != varIndex_.end()) return it->second;
  int v = fresh();
  varIndex_.emplace(name, v);
  return v;
}

void CnfBuilder::require(const Expr& e) { cnf_.push_back({encode(e)}); }

int CnfBuilder::encode(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::True: {
      int v = fresh();
      cnf_.push_back({v});
      return v;
    }
    case Expr::Kind::False: {
      int v = fresh();
      cnf_.push_back({-v});
      return v;
    }
    case Expr::Kind::Var:
      return varFor(e.varName());
    case Expr::Kind::Not:
      return -encode(e.operand());
    case Expr::Kind::And: {
      int a = encode(e.lhs());
      int b = encode(e.rhs());
      int v = fresh();
      cnf_.push_back({-v, a});
      cnf_.push_back({-v, b});
      cnf_.push_back({v, -a, -b});
      return v;
    }
    case Expr::Kind::Or: {
      int a = encode(e.lhs());
      int b = encode(e.rhs());
      int v = fresh();
      cnf_.push_back({-v, a, b});
      cnf_.push_back({v, -a});
      cnf_.push_back({v, -b});
      return v;
    }
  }
  std::abort();
}

namespace {

// 0 = unassigned, 1 = true, -1 = false.
using Assignment = std::vector<int>;

bool literalTrue(int lit, const Assignment& a) {
  int v = a[std::abs(lit)];
  return v != 0 && (v > 0) == (lit > 0);
}

bool literalFalse(int lit, const Assignment& a) {
  int v = a[std::abs(lit)];
  return v != 0 && (v > 0) != (lit > 0);
}

// Exhaustive unit propagation; returns false on conflict.
bool propagate(const Cnf& cnf, Assignment& a) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Clause& clause : cnf) {
      int unassigned = 0;
      int unit = 0;
      bool satisfied = false;
      for (int lit : clause) {
        if (literalTrue(lit, a)) {
          satisfied = true;
          break;
        }
        if (!literalFalse(lit, a)) {
          ++unassigned;
          unit = lit;
        }
      }
      if (satisfied) continue;
      if (unassigned == 0) return false;
      if (unassigned == 1) {
        a[std::abs(unit)] = unit > 0 ? 1 : -1;
        changed = true;
      }
    }
  }
  return true;
}

bool dpll(const Cnf& cnf, Assignment& a) {
  if (!propagate(cnf, a)) return false;
  int branchVar = 0;
  for (size_t v = 1; v < a.size(); ++v) {
    if (a[v] == 0) {
      branchVar = static_cast<int>(v);
      break;
    }
  }
  if (branchVar == 0) return true;
  for (int value : {1, -1}) {
    Assignment saved = a;
    a[branchVar] = value;
    if (dpll(cnf, a)) return true;
    a = saved;
  }
  return false;
}

}  // namespace

std::optional<std::vector<bool>> solveSat(const Cnf& cnf, int varCount) {
  Assignment a(varCount + 1, 0);
  if (!dpll(cnf, a)) return std::nullopt;
  std::vector<bool> model(varCount + 1, false);
  for (int v = 1; v <= varCount; ++v) model[v] = a[v] > 0;
  return model;
}

std::vector<std::map<int, bool>> allSatProjected(
    Cnf cnf, int varCount, const std::vector<int>& projectVars) {
  std::vector<std::map<int, bool>> solutions;
  while (auto model = solveSat(cnf, varCount)) {
    std::map<int, bool> projected;
    Clause blocking;
    for (int v : projectVars) {
      bool value = (*model)[v];
      projected.emplace(v, value);
      blocking.push_back(value ? -v : v);
    }
    solutions.push_back(std::move(projected));
    if (blocking.empty()) break;  // no projection vars: one solution at most
    cnf.push_back(std::move(blocking));
  }
  return solutions;
}

}  // namespace spltest
