#include "boxprune/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

namespace boxprune {

ExprPtr Expr::constant(double v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Constant;
  e->value = v;
  return e;
}

ExprPtr Expr::variable(std::string name, int index) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Variable;
  e->name = std::move(name);
  e->varIndex = index;
  return e;
}

ExprPtr Expr::apply(Op op, std::vector<ExprPtr> kids) {
  if (static_cast<int>(kids.size()) != arity(op.kind))
    throw std::logic_error("apply: arity mismatch for " + opName(op));
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Apply;
  e->op = op;
  e->kids = std::move(kids);
  return e;
}

int EquationSystem::varIndex(std::string_view name) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i].name == name) return static_cast<int>(i);
  return -1;
}

Box EquationSystem::initialBox(const Grid& g) const {
  Box b;
  b.comps.reserve(vars.size());
  for (const VarDecl& v : vars) b.comps.push_back(snapOutward(v.domain.lo, v.domain.hi, g));
  return b;
}

namespace {

struct Token {
  enum class Kind { Ident, Number, Symbol, End };
  Kind kind;
  std::string text;
  double number = 0.0;
  int line = 1, col = 1;
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') { ++line; col = 1; } else ++col;
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) { advance(1); continue; }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      t.kind = Token::Kind::Ident;
      t.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '.' && i + 1 < text.size() &&
                std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      const char* start = text.data() + i;
      char* end = nullptr;
      double v = std::strtod(start, &end);
      std::size_t n = static_cast<std::size_t>(end - start);
      t.kind = Token::Kind::Number;
      t.text = std::string(text.substr(i, n));
      t.number = v;
      advance(n);
    } else if (std::string("+-*/^()[],;=").find(c) != std::string::npos) {
      t.kind = Token::Kind::Symbol;
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Token::Kind::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

class Parser {
public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  EquationSystem run() {
    while (peek().kind == Token::Kind::Ident && peek().text == "var") parseDecl();
    while (peek().kind != Token::Kind::End) parseEquation();
    for (std::size_t i = 0; i < es_.vars.size(); ++i)
      if (!used_.count(static_cast<int>(i)))
        throw ParseError(declLine_[i], declCol_[i],
                         "variable '" + es_.vars[i].name + "' does not occur in any equation");
    if (es_.equations.empty()) throw ParseError(peek().line, peek().col, "no equations");
    return std::move(es_);
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseError(t.line, t.col, msg);
  }

  void expectSymbol(const std::string& s) {
    const Token& t = next();
    if (t.kind != Token::Kind::Symbol || t.text != s)
      fail(t, "expected '" + s + "'");
  }

  bool trySymbol(const std::string& s) {
    if (peek().kind == Token::Kind::Symbol && peek().text == s) { ++pos_; return true; }
    return false;
  }

  double parseBound() {
    double sign = 1.0;
    if (trySymbol("-")) sign = -1.0;
    else if (trySymbol("+")) sign = 1.0;
    const Token& t = next();
    if (t.kind == Token::Kind::Ident && t.text == "inf")
      return sign * std::numeric_limits<double>::infinity();
    if (t.kind == Token::Kind::Number) return sign * t.number;
    fail(t, "expected a bound (number or inf)");
  }

  void parseDecl() {
    next();  // 'var'
    const Token& nameTok = next();
    if (nameTok.kind != Token::Kind::Ident) fail(nameTok, "expected variable name");
    if (es_.varIndex(nameTok.text) >= 0)
      fail(nameTok, "variable '" + nameTok.text + "' declared twice");
    const Token& inTok = next();
    if (inTok.kind != Token::Kind::Ident || inTok.text != "in") fail(inTok, "expected 'in'");
    expectSymbol("[");
    double lo = parseBound();
    expectSymbol(",");
    double hi = parseBound();
    expectSymbol("]");
    expectSymbol(";");
    if (lo > hi) fail(nameTok, "domain lower bound above upper bound");
    es_.vars.push_back({nameTok.text, Interval::make(lo, hi)});
    declLine_.push_back(nameTok.line);
    declCol_.push_back(nameTok.col);
  }

  void parseEquation() {
    ExprPtr lhs = parseExpr();
    const Token& t = next();
    if (t.kind != Token::Kind::Symbol || t.text != "=")
      fail(t, "expected '=' in equation");
    ExprPtr rhs = parseExpr();
    expectSymbol(";");
    ExprPtr eq;
    if (rhs->kind == Expr::Kind::Constant && rhs->value == 0.0)
      eq = lhs;
    else if (lhs->kind == Expr::Kind::Constant && lhs->value == 0.0 &&
             rhs->kind == Expr::Kind::Constant && rhs->value == 0.0)
      eq = lhs;
    else
      eq = Expr::apply({OpKind::Sub}, {lhs, rhs});
    es_.equations.push_back(eq);
  }

  ExprPtr parseExpr() {
    ExprPtr e = parseTerm();
    while (true) {
      if (trySymbol("+")) e = Expr::apply({OpKind::Add}, {e, parseTerm()});
      else if (trySymbol("-")) e = Expr::apply({OpKind::Sub}, {e, parseTerm()});
      else return e;
    }
  }

  ExprPtr parseTerm() {
    ExprPtr e = parsePower();
    while (true) {
      if (trySymbol("*")) e = Expr::apply({OpKind::Mul}, {e, parsePower()});
      else if (trySymbol("/")) e = Expr::apply({OpKind::Div}, {e, parsePower()});
      else return e;
    }
  }

  ExprPtr parsePower() {
    ExprPtr base = parseUnary();
    if (trySymbol("^")) {
      bool negative = trySymbol("-");
      const Token& t = next();
      if (t.kind != Token::Kind::Number) fail(t, "expected integer exponent after '^'");
      if (t.text.find_first_of(".eE") != std::string::npos)
        fail(t, "non-integer exponent '" + t.text + "'");
      long k = std::lround(t.number);
      if (k > 4096) fail(t, "exponent too large");
      int exponent = static_cast<int>(negative ? -k : k);
      return Expr::apply({OpKind::Pow, exponent}, {base});
    }
    return base;
  }

  // unary minus binds tighter than '^' and is stored as 0 - x
  ExprPtr parseUnary() {
    if (trySymbol("-"))
      return Expr::apply({OpKind::Sub}, {Expr::constant(0.0), parseUnary()});
    return parseAtom();
  }

  ExprPtr parseAtom() {
    const Token& t = next();
    if (t.kind == Token::Kind::Number) return Expr::constant(t.number);
    if (t.kind == Token::Kind::Symbol && t.text == "(") {
      ExprPtr e = parseExpr();
      expectSymbol(")");
      return e;
    }
    if (t.kind == Token::Kind::Ident) {
      if (peek().kind == Token::Kind::Symbol && peek().text == "(") {
        Op op;
        if (t.text == "sin") op = {OpKind::Sin};
        else if (t.text == "cos") op = {OpKind::Cos};
        else if (t.text == "tan") op = {OpKind::Tan};
        else if (t.text == "exp") op = {OpKind::Exp};
        else if (t.text == "log") op = {OpKind::Log};
        else if (t.text == "abs") op = {OpKind::Abs};
        else if (t.text == "max") op = {OpKind::Max};
        else fail(t, "unknown function name '" + t.text + "'");
        next();  // '('
        std::vector<ExprPtr> args;
        args.push_back(parseExpr());
        while (trySymbol(",")) args.push_back(parseExpr());
        expectSymbol(")");
        if (static_cast<int>(args.size()) != arity(op.kind))
          fail(t, "'" + t.text + "' takes " + std::to_string(arity(op.kind)) + " argument(s)");
        return Expr::apply(op, std::move(args));
      }
      int idx = es_.varIndex(t.text);
      if (idx < 0) fail(t, "undeclared variable '" + t.text + "'");
      used_.insert(idx);
      return Expr::variable(t.text, idx);
    }
    fail(t, "expected an expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  EquationSystem es_;
  std::set<int> used_;
  std::vector<int> declLine_, declCol_;
};

std::string numberToString(double v) {
  if (v == std::numeric_limits<double>::infinity()) return "+inf";
  if (v == -std::numeric_limits<double>::infinity()) return "-inf";
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

}  // namespace

EquationSystem parse(std::string_view text) { return Parser(text).run(); }

std::string print(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Constant: return numberToString(e.value);
    case Expr::Kind::Variable: return e.name;
    case Expr::Kind::Apply: break;
  }
  switch (e.op.kind) {
    case OpKind::Add: return "(" + print(*e.kids[0]) + " + " + print(*e.kids[1]) + ")";
    case OpKind::Sub: return "(" + print(*e.kids[0]) + " - " + print(*e.kids[1]) + ")";
    case OpKind::Mul: return "(" + print(*e.kids[0]) + " * " + print(*e.kids[1]) + ")";
    case OpKind::Div: return "(" + print(*e.kids[0]) + " / " + print(*e.kids[1]) + ")";
    case OpKind::Pow:
      return "(" + print(*e.kids[0]) + "^" + std::to_string(e.op.exponent) + ")";
    case OpKind::Max: return "max(" + print(*e.kids[0]) + ", " + print(*e.kids[1]) + ")";
    default: break;
  }
  return opName(e.op) + "(" + print(*e.kids[0]) + ")";
}

std::string print(const EquationSystem& es) {
  std::string out;
  for (const VarDecl& v : es.vars)
    out += "var " + v.name + " in [" + numberToString(v.domain.lo) + ", " +
           numberToString(v.domain.hi) + "];\n";
  for (const ExprPtr& eq : es.equations) out += print(*eq) + " = 0;\n";
  return out;
}

Interval evalInterval(const Expr& e, std::span<const Interval> env, const Grid& g) {
  switch (e.kind) {
    case Expr::Kind::Constant: return snapOutward(e.value, e.value, g);
    case Expr::Kind::Variable: return env[static_cast<std::size_t>(e.varIndex)];
    case Expr::Kind::Apply: break;
  }
  std::vector<Interval> kids;
  kids.reserve(e.kids.size());
  for (const ExprPtr& k : e.kids) {
    Interval v = evalInterval(*k, env, g);
    if (v.empty) return Interval::emptySet();
    kids.push_back(v);
  }
  return extend(e.op, kids, g);
}

double evalReal(const Expr& e, std::span<const double> env) {
  switch (e.kind) {
    case Expr::Kind::Constant: return e.value;
    case Expr::Kind::Variable: return env[static_cast<std::size_t>(e.varIndex)];
    case Expr::Kind::Apply: break;
  }
  std::vector<double> kids;
  kids.reserve(e.kids.size());
  for (const ExprPtr& k : e.kids) {
    double v = evalReal(*k, env);
    if (std::isnan(v)) return v;
    kids.push_back(v);
  }
  return applyReal(e.op, kids);
}

std::vector<int> variablesOf(const Expr& e) {
  std::set<int> s;
  std::vector<const Expr*> stack{&e};
  while (!stack.empty()) {
    const Expr* cur = stack.back();
    stack.pop_back();
    if (cur->kind == Expr::Kind::Variable) s.insert(cur->varIndex);
    for (const ExprPtr& k : cur->kids) stack.push_back(k.get());
  }
  return std::vector<int>(s.begin(), s.end());
}

}  // namespace boxprune
