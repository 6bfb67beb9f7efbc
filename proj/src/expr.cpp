#include "spltest/expr.hpp"

#include <cctype>

#include "spltest/errors.hpp"

namespace spltest {

Expr Expr::constant(bool value) {
  auto node = std::make_shared<Node>();
  node->kind = value ? Kind::True : Kind::False;
  return Expr(node);
}

Expr Expr::var(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Var;
  node->name = std::move(name);
  return Expr(node);
}

Expr Expr::negate(Expr e) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Not;
  node->children.push_back(std::move(e));
  return Expr(node);
}

Expr Expr::conjunction(Expr lhs, Expr rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::And;
  node->children.push_back(std::move(lhs));
  node->children.push_back(std::move(rhs));
  return Expr(node);
}

Expr Expr::disjunction(Expr lhs, Expr rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Or;
  node->children.push_back(std::move(lhs));
  node->children.push_back(std::move(rhs));
  return Expr(node);
}

Expr Expr::implies(Expr lhs, Expr rhs) {
  return disjunction(negate(std::move(lhs)), std::move(rhs));
}

Expr Expr::conjunctionOf(const std::vector<Expr>& terms) {
  if (terms.empty()) return constant(true);
  Expr acc = terms[0];
  for (size_t i = 1; i < terms.size(); ++i) acc = conjunction(acc, terms[i]);
  return acc;
}

Expr Expr::disjunctionOf(const std::vector<Expr>& terms) {
  if (terms.empty()) return constant(false);
  Expr acc = terms[0];
  for (size_t i = 1; i < terms.size(); ++i) acc = disjunction(acc, terms[i]);
  return acc;
}

bool Expr::evaluate(const std::set<std::string>& trueVars) const {
  switch (kind()) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Var:
      return trueVars.count(varName()) != 0;
    case Kind::Not:
      return !operand().evaluate(trueVars);
    case Kind::And:
      return lhs().evaluate(trueVars) && rhs().evaluate(trueVars);
    case Kind::Or:
      return lhs().evaluate(trueVars) || rhs().evaluate(trueVars);
  }
  return false;
}

void Expr::collectVars(std::set<std::string>& out) const {
  switch (kind()) {
    case Kind::Var:
      out.insert(varName());
      break;
    case Kind::Not:
      operand().collectVars(out);
      break;
    case Kind::And:
    case Kind::Or:
      lhs().collectVars(out);
      rhs().collectVars(out);
      break;
    default:
      break;
  }
}

std::set<std::string> Expr::vars() const {
  std::set<std::string> out;
  collectVars(out);
  return out;
}

namespace {

// Precedence: Or = 1, And = 2, Not/atoms = 3.
int precedence(Expr::Kind kind) {
  switch (kind) {
    case Expr::Kind::Or:
      return 1;
    case Expr::Kind::And:
      return 2;
    default:
      return 3;
  }
}

void render(const Expr& e, int parentPrec, std::string& out) {
  int prec = precedence(e.kind());
  bool parens = prec < parentPrec;
  if (parens) out += '(';
  switch (e.kind()) {
    case Expr::Kind::True:
      out += "TRUE";
      break;
    case Expr::Kind::False:
      out += "FALSE";
      break;
    case Expr::Kind::Var:
      out += e.varName();
      break;
    case Expr::Kind::Not:
      out += '!';
      render(e.operand(), 3, out);
      break;
    case Expr::Kind::And:
      render(e.lhs(), 2, out);
      out += " && ";
      render(e.rhs(), 2, out);
      break;
    case Expr::Kind::Or:
      render(e.lhs(), 1, out);
      out += " || ";
      render(e.rhs(), 1, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string Expr::toString() const {
  std::string out;
  render(*this, 0, out);
  return out;
}

bool Expr::structurallyEqual(const Expr& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::True:
    case Kind::False:
      return true;
    case Kind::Var:
      return varName() == other.varName();
    case Kind::Not:
      return operand().structurallyEqual(other.operand());
    case Kind::And:
    case Kind::Or:
      return lhs().structurallyEqual(other.lhs()) &&
             rhs().structurallyEqual(other.rhs());
  }
  return false;
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Expr parse() {
    Expr e = parseOr();
    skipSpace();
    if (pos_ != text_.size())
      throw Error("SYNTAX", "trailing input at offset " + std::to_string(pos_) +
                                " in '" + text_ + "'");
    return e;
  }

 private:
  Expr parseOr() {
    Expr e = parseAnd();
    while (consume("||")) e = Expr::disjunction(e, parseAnd());
    return e;
  }

  Expr parseAnd() {
    Expr e = parseFactor();
    while (consume("&&")) e = Expr::conjunction(e, parseFactor());
    return e;
  }

  Expr parseFactor() {
    skipSpace();
    if (consume("!")) return Expr::negate(parseFactor());
    if (consume("(")) {
      Expr e = parseOr();
      if (!consume(")"))
        throw Error("SYNTAX", "expected ')' in '" + text_ + "'");
      return e;
    }
    std::string id = parseIdentifier();
    if (id == "TRUE") return Expr::constant(true);
    if (id == "FALSE") return Expr::constant(false);
    return Expr::var(id);
  }

  std::string parseIdentifier() {
    skipSpace();
    size_t start = pos_;
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
         text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        ++pos_;
    }
    if (start == pos_)
      throw Error("SYNTAX", "expected identifier at offset " +
                                std::to_string(pos_) + " in '" + text_ + "'");
    return text_.substr(start, pos_ - start);
  }

  bool consume(const std::string& token) {
    skipSpace();
    if (text_.compare(pos_, token.size(), token) == 0) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void skipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  const std::string& text_;
  size_t pos_ = 0;
};

}  // namespace

Expr parseExpr(const std::string& text) { return Parser(text).parse(); }

}  // namespace spltest
