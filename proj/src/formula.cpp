#include "sahlkit/formula.hpp"

#include <cctype>
#include <sstream>

namespace sahl {

FormulaPtr Formula::variable(std::string name) {
  auto f = std::make_shared<Formula>();
  f->kind = NodeKind::Var;
  f->var = std::move(name);
  return f;
}

FormulaPtr Formula::bot() {
  auto f = std::make_shared<Formula>();
  f->kind = NodeKind::Bot;
  return f;
}

FormulaPtr Formula::top() {
  auto f = std::make_shared<Formula>();
  f->kind = NodeKind::Top;
  return f;
}

FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = NodeKind::And;
  f->args = {std::move(a), std::move(b)};
  return f;
}

FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = NodeKind::Or;
  f->args = {std::move(a), std::move(b)};
  return f;
}

FormulaPtr Formula::neg(FormulaPtr a) {
  auto f = std::make_shared<Formula>();
  f->kind = NodeKind::Neg;
  f->args = {std::move(a)};
  return f;
}

FormulaPtr Formula::app(Connective c, std::vector<FormulaPtr> args) {
  if (static_cast<int>(args.size()) != c.arity())
    throw std::invalid_argument("arity mismatch applying '" + c.name + "'");
  auto f = std::make_shared<Formula>();
  f->kind = NodeKind::App;
  f->conn = std::move(c);
  f->args = std::move(args);
  return f;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::Var: return a->var == b->var;
    case NodeKind::Bot:
    case NodeKind::Top: return true;
    case NodeKind::App:
      if (!(a->conn == b->conn)) return false;
      [[fallthrough]];
    case NodeKind::And:
    case NodeKind::Or:
    case NodeKind::Neg:
      if (a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!equal(a->args[i], b->args[i])) return false;
      return true;
  }
  return false;
}

bool equal(const Inequality& a, const Inequality& b) {
  return equal(a.lhs, b.lhs) && equal(a.rhs, b.rhs);
}

// ---------------------------------------------------------------------------
// Lexer / parser
// ---------------------------------------------------------------------------

namespace {

enum class Tok { Ident, Bot, Top, Neg, And, Or, Impl, Coimpl, Le, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : s_(text) { advance(); }

  const Token& cur() const { return cur_; }

  void advance() {
    skip_ws();
    cur_.pos = i_;
    if (i_ >= s_.size()) {
      cur_ = {Tok::End, "", i_};
      return;
    }
    char c = s_[i_];
    auto two = [&](char a, char b) { return c == a && i_ + 1 < s_.size() && s_[i_ + 1] == b; };
    if (two('-', '>')) { cur_ = {Tok::Impl, "->", i_}; i_ += 2; return; }
    if (two('>', '-')) { cur_ = {Tok::Coimpl, ">-", i_}; i_ += 2; return; }
    if (two('<', '=')) { cur_ = {Tok::Le, "<=", i_}; i_ += 2; return; }
    if (two('/', '\\')) { cur_ = {Tok::And, "/\\", i_}; i_ += 2; return; }
    if (two('\\', '/')) { cur_ = {Tok::Or, "\\/", i_}; i_ += 2; return; }
    if (c == '~') { cur_ = {Tok::Neg, "~", i_}; ++i_; return; }
    if (c == '(') { cur_ = {Tok::LParen, "(", i_}; ++i_; return; }
    if (c == ')') { cur_ = {Tok::RParen, ")", i_}; ++i_; return; }
    if (c == ',') { cur_ = {Tok::Comma, ",", i_}; ++i_; return; }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i_;
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
        ++i_;
      std::string word = s_.substr(start, i_ - start);
      if (word == "bot") cur_ = {Tok::Bot, word, start};
      else if (word == "top") cur_ = {Tok::Top, word, start};
      else cur_ = {Tok::Ident, word, start};
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i_);
  }

private:
  void skip_ws() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) { ++i_; continue; }
      if (s_[i_] == '#') {  // comment to end of line
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
        continue;
      }
      break;
    }
  }

  const std::string& s_;
  std::size_t i_ = 0;
  Token cur_;
};

class Parser {
public:
  Parser(const std::string& text, const Signature& sig) : lex_(text), sig_(sig) {}

  FormulaPtr formula() { return impl_level(); }

  std::variant<FormulaPtr, Inequality> any() {
    FormulaPtr l = formula();
    if (lex_.cur().kind == Tok::Le) {
      lex_.advance();
      FormulaPtr r = formula();
      expect_end();
      return Inequality{l, r};
    }
    expect_end();
    return l;
  }

  void expect_end() {
    if (lex_.cur().kind != Tok::End)
      throw ParseError("trailing input '" + lex_.cur().text + "'", lex_.cur().pos);
  }

private:
  FormulaPtr impl_level() {
    FormulaPtr l = or_level();
    Tok k = lex_.cur().kind;
    if (k == Tok::Impl || k == Tok::Coimpl) {
      std::size_t pos = lex_.cur().pos;
      const char* name = (k == Tok::Impl) ? "->" : ">-";
      const Connective* c = sig_.find(name);
      if (!c) throw ParseError(std::string("connective '") + name + "' not in signature", pos);
      lex_.advance();
      FormulaPtr r = impl_level();  // right-associative
      return Formula::app(*c, {l, r});
    }
    return l;
  }

  FormulaPtr or_level() {
    FormulaPtr l = and_level();
    while (lex_.cur().kind == Tok::Or) {
      lex_.advance();
      l = Formula::disj(l, and_level());
    }
    return l;
  }

  FormulaPtr and_level() {
    FormulaPtr l = unary_level();
    while (lex_.cur().kind == Tok::And) {
      lex_.advance();
      l = Formula::conj(l, unary_level());
    }
    return l;
  }

  FormulaPtr unary_level() {
    const Token& t = lex_.cur();
    if (t.kind == Tok::Neg) {
      if (sig_.dialect() != Dialect::BAE)
        throw ParseError("negation '~' requires a BAE signature", t.pos);
      lex_.advance();
      return Formula::neg(unary_level());
    }
    if (t.kind == Tok::Ident) {
      const Connective* c = sig_.find(t.text);
      if (c && c->arity() == 1) {
        std::size_t pos = t.pos;
        lex_.advance();
        if (lex_.cur().kind == Tok::LParen) return finish_app(*c, pos);
        return Formula::app(*c, {unary_level()});
      }
    }
    return primary();
  }

  FormulaPtr finish_app(const Connective& c, std::size_t pos) {
    lex_.advance();  // '('
    std::vector<FormulaPtr> args;
    if (lex_.cur().kind != Tok::RParen) {
      args.push_back(formula());
      while (lex_.cur().kind == Tok::Comma) {
        lex_.advance();
        args.push_back(formula());
      }
    }
    if (lex_.cur().kind != Tok::RParen)
      throw ParseError("expected ')'", lex_.cur().pos);
    lex_.advance();
    if (static_cast<int>(args.size()) != c.arity())
      throw ParseError("'" + c.name + "' expects " + std::to_string(c.arity()) +
                           " arguments, got " + std::to_string(args.size()),
                       pos);
    return Formula::app(c, std::move(args));
  }

  FormulaPtr primary() {
    const Token t = lex_.cur();
    switch (t.kind) {
      case Tok::Bot: lex_.advance(); return Formula::bot();
      case Tok::Top: lex_.advance(); return Formula::top();
      case Tok::LParen: {
        lex_.advance();
        FormulaPtr f = formula();
        if (lex_.cur().kind != Tok::RParen) throw ParseError("expected ')'", lex_.cur().pos);
        lex_.advance();
        return f;
      }
      case Tok::Ident: {
        const Connective* c = sig_.find(t.text);
        lex_.advance();
        if (c) {
          if (lex_.cur().kind == Tok::LParen) return finish_app(*c, t.pos);
          if (c->arity() == 0) return Formula::app(*c, {});
          throw ParseError("connective '" + c->name + "' needs arguments", t.pos);
        }
        return Formula::variable(t.text);
      }
      default:
        throw ParseError("unexpected token '" + t.text + "'", t.pos);
    }
  }

  Lexer lex_;
  const Signature& sig_;
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, const Signature& sig) {
  Parser p(text, sig);
  auto v = p.any();
  if (std::holds_alternative<Inequality>(v))
    throw ParseError("expected a formula, found an inequality", 0);
  return std::get<FormulaPtr>(v);
}

Inequality parse_inequality(const std::string& text, const Signature& sig) {
  Parser p(text, sig);
  auto v = p.any();
  if (std::holds_alternative<FormulaPtr>(v))
    throw ParseError("expected an inequality 'lhs <= rhs'", 0);
  return std::get<Inequality>(v);
}

std::variant<FormulaPtr, Inequality> parse_any(const std::string& text, const Signature& sig) {
  Parser p(text, sig);
  return p.any();
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace {

// Precedence levels: infix arrows = 1, \/ = 2, /\ = 3, prefix = 4, atoms = 5.
int precedence(const Formula& f) {
  switch (f.kind) {
    case NodeKind::Var:
    case NodeKind::Bot:
    case NodeKind::Top: return 5;
    case NodeKind::Neg: return 4;
    case NodeKind::And: return 3;
    case NodeKind::Or: return 2;
    case NodeKind::App:
      if (f.conn.name == "->" || f.conn.name == ">-") return 1;
      return f.conn.arity() == 1 ? 4 : 5;  // name(...) binds like an atom
  }
  return 5;
}

void render(const FormulaPtr& f, int minPrec, std::string& out) {
  int prec = precedence(*f);
  bool parens = prec < minPrec;
  if (parens) out.push_back('(');
  switch (f->kind) {
    case NodeKind::Var: out += f->var; break;
    case NodeKind::Bot: out += "bot"; break;
    case NodeKind::Top: out += "top"; break;
    case NodeKind::Neg:
      out.push_back('~');
      render(f->args[0], 4, out);
      break;
    case NodeKind::And:
      render(f->args[0], 3, out);
      out += " /\\ ";
      render(f->args[1], 4, out);
      break;
    case NodeKind::Or:
      render(f->args[0], 2, out);
      out += " \\/ ";
      render(f->args[1], 3, out);
      break;
    case NodeKind::App: {
      const std::string& n = f->conn.name;
      if (n == "->" || n == ">-") {
        render(f->args[0], 2, out);  // left operand must outrank the arrow
        out += " " + n + " ";
        render(f->args[1], 1, out);  // right-associative
      } else if (f->conn.arity() == 1) {
        out += n;
        out.push_back(' ');
        render(f->args[0], 4, out);
      } else {
        out += n;
        out.push_back('(');
        for (std::size_t i = 0; i < f->args.size(); ++i) {
          if (i) out += ", ";
          render(f->args[i], 0, out);
        }
        out.push_back(')');
      }
      break;
    }
  }
  if (parens) out.push_back(')');
}

}  // namespace

std::string print(const FormulaPtr& f) {
  std::string out;
  render(f, 0, out);
  return out;
}

std::string print(const Inequality& ineq) {
  return print(ineq.lhs) + " <= " + print(ineq.rhs);
}

namespace {

void collect_vars(const FormulaPtr& f, std::vector<std::string>& out) {
  if (f->kind == NodeKind::Var) {
    for (const auto& v : out)
      if (v == f->var) return;
    out.push_back(f->var);
    return;
  }
  for (const auto& a : f->args) collect_vars(a, out);
}

}  // namespace

std::vector<std::string> variables(const FormulaPtr& f) {
  std::vector<std::string> out;
  collect_vars(f, out);
  return out;
}

std::vector<std::string> variables(const Inequality& ineq) {
  std::vector<std::string> out;
  collect_vars(ineq.lhs, out);
  collect_vars(ineq.rhs, out);
  return out;
}

}  // namespace sahl
