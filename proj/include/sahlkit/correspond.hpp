#ifndef SAHLKIT_CORRESPOND_HPP
#define SAHLKIT_CORRESPOND_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sahlkit/algebra.hpp"
#include "sahlkit/semantics.hpp"

namespace sahl {
namespace alba {

/// Working language of the reduction: Boolean-target formulas extended with
/// nominals, conominals, and the coordinatewise residuals of the companion
/// connectives (ResidF is the right residual of an f-companion, ResidG the
/// left residual of a g-companion; the residuated slot is `coord`).
enum class TKind : unsigned char {
  Var, Nominal, Conominal, Bot, Top, And, Or, Neg, BoxLe, DiaGe, App, ResidF, ResidG
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TKind kind;
  std::string name;  // Var / Nominal / Conominal
  Connective conn;   // App / Resid*: the companion connective
  int coord = -1;    // Resid*: residuated slot; args[coord] holds the bound
  std::vector<TermPtr> args;

  static TermPtr var(std::string n);
  static TermPtr nominal(std::string n);
  static TermPtr conominal(std::string n);
  static TermPtr bot();
  static TermPtr top();
  static TermPtr conj(TermPtr a, TermPtr b);
  static TermPtr disj(TermPtr a, TermPtr b);
  static TermPtr neg(TermPtr a);
  static TermPtr boxle(TermPtr a);
  static TermPtr diage(TermPtr a);
  static TermPtr app(Connective c, std::vector<TermPtr> args);
  static TermPtr residF(Connective c, int coord, std::vector<TermPtr> args);
  static TermPtr residG(Connective c, int coord, std::vector<TermPtr> args);
};

std::string print(const TermPtr& t);
bool pure(const TermPtr& t);  // no proposition variables
TermPtr from_formula(const FormulaPtr& f);

struct TermIneq {
  TermPtr lhs, rhs;
};

struct QuasiInequality {
  std::vector<TermIneq> antecedent;
  std::string nomI = "j0";   // conclusion nominal
  std::string conomM = "m0"; // conclusion conominal
  std::vector<std::string> nominals;
  std::vector<std::string> conominals;
};

std::string print(const QuasiInequality& q);

}  // namespace alba

/// Fresh nominal below the left side, fresh conominal above the right side,
/// conclusion j0 <= m0.
alba::QuasiInequality first_approximation(const Inequality& ineq);

struct AlbaOutcome {
  bool supported = false;
  std::vector<alba::QuasiInequality> systems;  // pure on success
  std::string reason;                          // set when unsupported
  std::vector<std::string> trace;
};

/// Surfaces critical variable occurrences with approximation, splitting,
/// contraposition, adjunction and residuation, then eliminates variables in
/// dependency order by minimal (polarity 1) or maximal (polarity d)
/// valuations. Inputs must be classified inductive for (omega, eps);
/// anything outside the supported fragment returns an explanation instead.
AlbaOutcome alba_reduce(const alba::QuasiInequality& q, const Epsilon& eps,
                        const DependencyOrder& omega);

// --- first-order layer -------------------------------------------------------

enum class FoKind : unsigned char {
  Forall, Exists, And, Or, Not, Implies, Rel, Leq, Eq, True, False
};

struct Fo;
using FoPtr = std::shared_ptr<const Fo>;

struct Fo {
  FoKind k;
  std::string var;                 // quantifiers
  std::string rel;                 // Rel: relation name
  std::vector<std::string> args;   // Rel/Leq/Eq: world variables
  std::vector<FoPtr> sub;

  static FoPtr forall(std::string v, FoPtr b);
  static FoPtr exists(std::string v, FoPtr b);
  static FoPtr conj(std::vector<FoPtr> xs);
  static FoPtr disj(std::vector<FoPtr> xs);
  static FoPtr impl(FoPtr a, FoPtr b);
  static FoPtr neg(FoPtr a);
  static FoPtr atom(std::string name, std::vector<std::string> args);
  static FoPtr leq(std::string a, std::string b);
  static FoPtr eq(std::string a, std::string b);
  static FoPtr truth(bool b);
};

FoPtr simplify(const FoPtr& f);
std::string to_sexpr(const FoPtr& f);
std::string to_infix(const FoPtr& f);

/// Direct evaluation of a closed sentence by quantifier enumeration.
bool fo_eval(const FoPtr& f, const Frame& fr);

/// Nominals denote singletons and conominals complements of singletons;
/// both become universally quantified world variables.
FoPtr standard_translation(const std::vector<alba::QuasiInequality>& pure);

struct Correspondent {
  FoPtr fo;
  Epsilon eps;
  DependencyOrder omega;
  std::vector<std::string> trace;
};

/// Classification gate + translation (for DLE inputs) + reduction +
/// standard translation. Throws UnsupportedReduction when the inequality is
/// not inductive or the reduction leaves the implemented fragment.
class UnsupportedReduction : public std::runtime_error {
public:
  explicit UnsupportedReduction(const std::string& what) : std::runtime_error(what) {}
};

Correspondent correspondent(const Inequality& ineq, const Signature& sig,
                            std::optional<Epsilon> eps = std::nullopt);

enum class OracleVerdict : unsigned char { Verified, Refuted };

struct OracleResult {
  OracleVerdict verdict = OracleVerdict::Verified;
  std::optional<Frame> refutingFrame;
  long framesChecked = 0;
};

/// Checks, for every valid frame of the signature up to maxWorlds worlds,
/// that validity of the inequality (persistent valuations for DLE
/// signatures, arbitrary for BAE ones) coincides with truth of the
/// sentence. Signatures containing -> or >- use the order-generated
/// relations for those two connectives and enumerate all others.
OracleResult oracle_equivalence(const Inequality& ineq, const Signature& sig, const FoPtr& fo,
                                int maxWorlds, const Limits& lim = default_limits());

/// Truth of a quasi-inequality on a frame: all valuations, all placements
/// of nominals at singletons and conominals at co-singletons. Used by the
/// step-invariance tests.
bool quasi_holds(const alba::QuasiInequality& q, const Frame& fr, const Limits& lim);

}  // namespace sahl

#endif
