#ifndef SAHLKIT_FORMULA_HPP
#define SAHLKIT_FORMULA_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sahlkit/signature.hpp"

namespace sahl {

enum class NodeKind : unsigned char { Var, Bot, Top, And, Or, Neg, App };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable formula node. And/Or are structural; declared connectives appear
/// as App nodes carrying a copy of their Connective; Neg is permitted only
/// over BAE signatures.
class Formula {
public:
  NodeKind kind;
  std::string var;               // Var
  Connective conn;               // App
  std::vector<FormulaPtr> args;  // And/Or: 2, Neg: 1, App: arity

  static FormulaPtr variable(std::string name);
  static FormulaPtr bot();
  static FormulaPtr top();
  static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr neg(FormulaPtr a);
  static FormulaPtr app(Connective c, std::vector<FormulaPtr> args);
};

struct Inequality {
  FormulaPtr lhs, rhs;
};

bool equal(const FormulaPtr& a, const FormulaPtr& b);
bool equal(const Inequality& a, const Inequality& b);

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"), pos_(pos) {}
  std::size_t position() const { return pos_; }

private:
  std::size_t pos_;
};

FormulaPtr parse_formula(const std::string& text, const Signature& sig);
Inequality parse_inequality(const std::string& text, const Signature& sig);

/// Accepts either a bare formula or `lhs <= rhs`.
std::variant<FormulaPtr, Inequality> parse_any(const std::string& text, const Signature& sig);

std::string print(const FormulaPtr& f);
std::string print(const Inequality& ineq);

/// Free variables in first-occurrence order (lhs before rhs for inequalities).
std::vector<std::string> variables(const FormulaPtr& f);
std::vector<std::string> variables(const Inequality& ineq);

}  // namespace sahl

#endif
