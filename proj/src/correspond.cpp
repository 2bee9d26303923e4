#include "sahlkit/correspond.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace sahl {
namespace alba {

// Small constructor helpers; shared_ptr<const Term> built in place.
static std::shared_ptr<Term> raw(TKind k) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  return t;
}

TermPtr Term::var(std::string n) {
  auto t = raw(TKind::Var);
  t->name = std::move(n);
  return t;
}
TermPtr Term::nominal(std::string n) {
  auto t = raw(TKind::Nominal);
  t->name = std::move(n);
  return t;
}
TermPtr Term::conominal(std::string n) {
  auto t = raw(TKind::Conominal);
  t->name = std::move(n);
  return t;
}
TermPtr Term::bot() { return raw(TKind::Bot); }
TermPtr Term::top() { return raw(TKind::Top); }
TermPtr Term::conj(TermPtr a, TermPtr b) {
  auto t = raw(TKind::And);
  t->args = {std::move(a), std::move(b)};
  return t;
}
TermPtr Term::disj(TermPtr a, TermPtr b) {
  auto t = raw(TKind::Or);
  t->args = {std::move(a), std::move(b)};
  return t;
}
TermPtr Term::neg(TermPtr a) {
  auto t = raw(TKind::Neg);
  t->args = {std::move(a)};
  return t;
}
TermPtr Term::boxle(TermPtr a) {
  auto t = raw(TKind::BoxLe);
  t->args = {std::move(a)};
  return t;
}
TermPtr Term::diage(TermPtr a) {
  auto t = raw(TKind::DiaGe);
  t->args = {std::move(a)};
  return t;
}
TermPtr Term::app(Connective c, std::vector<TermPtr> args) {
  auto t = raw(TKind::App);
  t->conn = std::move(c);
  t->args = std::move(args);
  return t;
}
TermPtr Term::residF(Connective c, int coord, std::vector<TermPtr> args) {
  auto t = raw(TKind::ResidF);
  t->conn = std::move(c);
  t->coord = coord;
  t->args = std::move(args);
  return t;
}
TermPtr Term::residG(Connective c, int coord, std::vector<TermPtr> args) {
  auto t = raw(TKind::ResidG);
  t->conn = std::move(c);
  t->coord = coord;
  t->args = std::move(args);
  return t;
}

std::string print(const TermPtr& t) {
  switch (t->kind) {
    case TKind::Var:
    case TKind::Nominal:
    case TKind::Conominal: return t->name;
    case TKind::Bot: return "bot";
    case TKind::Top: return "top";
    case TKind::And: return "(" + print(t->args[0]) + " /\\ " + print(t->args[1]) + ")";
    case TKind::Or: return "(" + print(t->args[0]) + " \\/ " + print(t->args[1]) + ")";
    case TKind::Neg: return "~" + print(t->args[0]);
    case TKind::BoxLe: return "boxle " + print(t->args[0]);
    case TKind::DiaGe: return "diage " + print(t->args[0]);
    case TKind::App:
    case TKind::ResidF:
    case TKind::ResidG: {
      std::string head = t->conn.name;
      if (t->kind != TKind::App)
        head += ":r" + std::to_string(t->coord + 1);
      std::string s = head + "(";
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (i) s += ", ";
        s += print(t->args[i]);
      }
      return s + ")";
    }
  }
  return "?";
}

bool pure(const TermPtr& t) {
  if (t->kind == TKind::Var) return false;
  for (const auto& a : t->args)
    if (!pure(a)) return false;
  return true;
}

TermPtr from_formula(const FormulaPtr& f) {
  switch (f->kind) {
    case NodeKind::Var: return Term::var(f->var);
    case NodeKind::Bot: return Term::bot();
    case NodeKind::Top: return Term::top();
    case NodeKind::And: return Term::conj(from_formula(f->args[0]), from_formula(f->args[1]));
    case NodeKind::Or: return Term::disj(from_formula(f->args[0]), from_formula(f->args[1]));
    case NodeKind::Neg: return Term::neg(from_formula(f->args[0]));
    case NodeKind::App: {
      if (f->conn.name == kBoxLe) return Term::boxle(from_formula(f->args[0]));
      if (f->conn.name == kDiaGe) return Term::diage(from_formula(f->args[0]));
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      for (const auto& a : f->args) args.push_back(from_formula(a));
      return Term::app(f->conn, std::move(args));
    }
  }
  throw std::logic_error("unreachable");
}

std::string print(const QuasiInequality& q) {
  std::string s;
  for (std::size_t i = 0; i < q.antecedent.size(); ++i) {
    if (i) s += " & ";
    s += print(q.antecedent[i].lhs) + " <= " + print(q.antecedent[i].rhs);
  }
  return (s.empty() ? std::string("true") : s) + " => " + q.nomI + " <= " + q.conomM;
}

}  // namespace alba

alba::QuasiInequality first_approximation(const Inequality& ineq) {
  alba::QuasiInequality q;
  q.nominals = {"j0"};
  q.conominals = {"m0"};
  q.antecedent.push_back({alba::Term::nominal("j0"), alba::from_formula(ineq.lhs)});
  q.antecedent.push_back({alba::from_formula(ineq.rhs), alba::Term::conominal("m0")});
  return q;
}

// ---------------------------------------------------------------------------
// Reduction
// ---------------------------------------------------------------------------

namespace {

using alba::Term;
using alba::TermIneq;
using alba::TermPtr;
using alba::TKind;

struct Unsupported {
  std::string why;
};

// Polarity of a variable's occurrences inside a term: .first collects
// monotone positions, .second antitone ones. Residual parameters flip.
void occ_polarity(const TermPtr& t, const std::string& v, bool positive, bool& pos,
                  bool& neg) {
  switch (t->kind) {
    case TKind::Var:
      if (t->name == v) (positive ? pos : neg) = true;
      return;
    case TKind::Neg:
      occ_polarity(t->args[0], v, !positive, pos, neg);
      return;
    case TKind::ResidF:
    case TKind::ResidG:
      for (std::size_t i = 0; i < t->args.size(); ++i)
        occ_polarity(t->args[i], v, static_cast<int>(i) == t->coord ? positive : !positive,
                     pos, neg);
      return;
    default:
      for (const auto& a : t->args) occ_polarity(a, v, positive, pos, neg);
      return;
  }
}

// Sign of critical occurrences: the right side of an antecedent inequality
// reads at +, the left side at -.
bool has_critical(const TermPtr& t, bool plusSeed, const Epsilon& eps) {
  switch (t->kind) {
    case TKind::Var: {
      auto it = eps.find(t->name);
      if (it == eps.end()) return false;
      return plusSeed ? it->second == Pol::One : it->second == Pol::Dual;
    }
    case TKind::Neg:
      return has_critical(t->args[0], !plusSeed, eps);
    case TKind::ResidF:
    case TKind::ResidG: {
      for (std::size_t i = 0; i < t->args.size(); ++i)
        if (has_critical(t->args[i], static_cast<int>(i) == t->coord ? plusSeed : !plusSeed,
                         eps))
          return true;
      return false;
    }
    default:
      for (const auto& a : t->args)
        if (has_critical(a, plusSeed, eps)) return true;
      return false;
  }
}

TermPtr subst(const TermPtr& t, const std::string& v, const TermPtr& theta) {
  switch (t->kind) {
    case TKind::Var:
      return t->name == v ? theta : t;
    case TKind::Nominal:
    case TKind::Conominal:
    case TKind::Bot:
    case TKind::Top:
      return t;
    default: {
      std::vector<TermPtr> args;
      args.reserve(t->args.size());
      bool changed = false;
      for (const auto& a : t->args) {
        TermPtr s = subst(a, v, theta);
        changed |= s.get() != a.get();
        args.push_back(std::move(s));
      }
      if (!changed) return t;
      auto copy = std::make_shared<Term>(*t);
      copy->args = std::move(args);
      return copy;
    }
  }
}

struct System {
  std::deque<TermIneq> pending;
  std::vector<TermIneq> done;
  std::vector<std::string> nominals;
  std::vector<std::string> conominals;
};

class Reducer {
public:
  Reducer(const Epsilon& eps, const DependencyOrder& omega, std::vector<std::string>* trace)
      : eps_(eps), omega_(omega), trace_(trace) {}

  std::vector<System> run(System initial) {
    std::vector<System> work{std::move(initial)};
    std::vector<System> complete;
    while (!work.empty()) {
      System s = std::move(work.back());
      work.pop_back();
      if (s.pending.empty()) {
        ackermann(s);
        complete.push_back(std::move(s));
        continue;
      }
      TermIneq in = std::move(s.pending.front());
      s.pending.pop_front();
      for (System& next : step(std::move(s), in)) work.push_back(std::move(next));
    }
    std::reverse(complete.begin(), complete.end());
    return complete;
  }

private:
  std::vector<System> step(System s, TermIneq in) {
    bool critRight = has_critical(in.rhs, true, eps_);
    bool critLeft = has_critical(in.lhs, false, eps_);
    if (!critRight && !critLeft) {
      s.done.push_back(std::move(in));
      return one(std::move(s));
    }
    // Surfacing alternates sides; work on the right first.
    return critRight ? right(std::move(s), std::move(in)) : left(std::move(s), std::move(in));
  }

  std::vector<System> right(System s, TermIneq in) {
    const TermPtr& l = in.lhs;
    const TermPtr& r = in.rhs;
    switch (r->kind) {
      case TKind::Var:
        log("provider", in);
        s.done.push_back(std::move(in));
        return one(std::move(s));
      case TKind::And:
        log("splitting", in);
        s.pending.push_back({l, r->args[0]});
        s.pending.push_back({l, r->args[1]});
        return one(std::move(s));
      case TKind::Or: {
        if (l->kind == TKind::Nominal) {
          log("choice", in);
          System s2 = s;
          s.pending.push_back({l, r->args[0]});
          s2.pending.push_back({l, r->args[1]});
          std::vector<System> out;
          out.push_back(std::move(s));
          out.push_back(std::move(s2));
          return out;
        }
        bool c0 = has_critical(r->args[0], true, eps_);
        bool c1 = has_critical(r->args[1], true, eps_);
        if (c0 && c1)
          throw Unsupported{"critical occurrences in both disjuncts of " + alba::print(r) +
                            " under a non-nominal left side"};
        std::size_t crit = c0 ? 0 : 1, side = c0 ? 1 : 0;
        log("residuation (\\/)", in);
        s.pending.push_back({Term::conj(l, Term::neg(r->args[side])), r->args[crit]});
        return one(std::move(s));
      }
      case TKind::Neg:
        log("contraposition", in);
        s.pending.push_back({r->args[0], Term::neg(l)});
        return one(std::move(s));
      case TKind::BoxLe:
        log("adjunction", in);
        s.pending.push_back({Term::diage(l), r->args[0]});
        return one(std::move(s));
      case TKind::DiaGe: {
        if (l->kind != TKind::Nominal)
          throw Unsupported{"diage in PIA position over " + alba::print(l)};
        std::string j = fresh_nominal(s);
        log("approximation", in);
        s.done.push_back({l, Term::diage(Term::nominal(j))});
        s.pending.push_back({Term::nominal(j), r->args[0]});
        return one(std::move(s));
      }
      case TKind::App: {
        if (r->conn.family == Family::F) {
          if (l->kind != TKind::Nominal)
            throw Unsupported{"f-companion in PIA position over " + alba::print(l)};
          log("approximation", in);
          std::vector<TermPtr> slots = r->args;
          for (std::size_t i = 0; i < slots.size(); ++i)
            if (has_critical(slots[i], true, eps_)) {
              std::string j = fresh_nominal(s);
              s.pending.push_back({Term::nominal(j), slots[i]});
              slots[i] = Term::nominal(j);
            }
          s.done.push_back({l, Term::app(r->conn, std::move(slots))});
          return one(std::move(s));
        }
        // g-companion: residuate toward the unique critical coordinate.
        int crit = -1;
        for (std::size_t i = 0; i < r->args.size(); ++i)
          if (has_critical(r->args[i], true, eps_)) {
            if (crit >= 0)
              throw Unsupported{"several critical coordinates under " + r->conn.name};
            crit = static_cast<int>(i);
          }
        log("residuation (" + r->conn.name + ")", in);
        std::vector<TermPtr> slots = r->args;
        slots[static_cast<std::size_t>(crit)] = l;
        s.pending.push_back(
            {Term::residG(r->conn, crit, std::move(slots)), r->args[static_cast<std::size_t>(crit)]});
        return one(std::move(s));
      }
      default:
        throw Unsupported{"cannot surface critical occurrence in " + alba::print(r)};
    }
  }

  std::vector<System> left(System s, TermIneq in) {
    const TermPtr& l = in.lhs;
    const TermPtr& r = in.rhs;
    switch (l->kind) {
      case TKind::Var:
        log("provider", in);
        s.done.push_back(std::move(in));
        return one(std::move(s));
      case TKind::Or:
        log("splitting", in);
        s.pending.push_back({l->args[0], r});
        s.pending.push_back({l->args[1], r});
        return one(std::move(s));
      case TKind::And: {
        if (r->kind == TKind::Conominal) {
          log("choice", in);
          System s2 = s;
          s.pending.push_back({l->args[0], r});
          s2.pending.push_back({l->args[1], r});
          std::vector<System> out;
          out.push_back(std::move(s));
          out.push_back(std::move(s2));
          return out;
        }
        bool c0 = has_critical(l->args[0], false, eps_);
        bool c1 = has_critical(l->args[1], false, eps_);
        if (c0 && c1)
          throw Unsupported{"critical occurrences in both conjuncts of " + alba::print(l) +
                            " under a non-conominal right side"};
        std::size_t crit = c0 ? 0 : 1, side = c0 ? 1 : 0;
        log("residuation (/\\)", in);
        s.pending.push_back({l->args[crit], Term::disj(r, Term::neg(l->args[side]))});
        return one(std::move(s));
      }
      case TKind::Neg:
        log("contraposition", in);
        s.pending.push_back({Term::neg(r), l->args[0]});
        return one(std::move(s));
      case TKind::DiaGe:
        log("adjunction", in);
        s.pending.push_back({l->args[0], Term::boxle(r)});
        return one(std::move(s));
      case TKind::BoxLe: {
        if (r->kind != TKind::Conominal)
          throw Unsupported{"boxle in PIA position over " + alba::print(r)};
        std::string m = fresh_conominal(s);
        log("approximation", in);
        s.done.push_back({Term::boxle(Term::conominal(m)), r});
        s.pending.push_back({l->args[0], Term::conominal(m)});
        return one(std::move(s));
      }
      case TKind::App: {
        if (l->conn.family == Family::G) {
          if (r->kind != TKind::Conominal)
            throw Unsupported{"g-companion in PIA position over " + alba::print(r)};
          log("approximation", in);
          std::vector<TermPtr> slots = l->args;
          for (std::size_t i = 0; i < slots.size(); ++i)
            if (has_critical(slots[i], false, eps_)) {
              std::string m = fresh_conominal(s);
              s.pending.push_back({slots[i], Term::conominal(m)});
              slots[i] = Term::conominal(m);
            }
          s.done.push_back({Term::app(l->conn, std::move(slots)), r});
          return one(std::move(s));
        }
        int crit = -1;
        for (std::size_t i = 0; i < l->args.size(); ++i)
          if (has_critical(l->args[i], false, eps_)) {
            if (crit >= 0)
              throw Unsupported{"several critical coordinates under " + l->conn.name};
            crit = static_cast<int>(i);
          }
        log("residuation (" + l->conn.name + ")", in);
        std::vector<TermPtr> slots = l->args;
        slots[static_cast<std::size_t>(crit)] = r;
        s.pending.push_back(
            {l->args[static_cast<std::size_t>(crit)], Term::residF(l->conn, crit, std::move(slots))});
        return one(std::move(s));
      }
      default:
        throw Unsupported{"cannot surface critical occurrence in " + alba::print(l)};
    }
  }

  void ackermann(System& s) {
    std::set<std::string> varsPresent;
    std::function<void(const TermPtr&)> collect = [&](const TermPtr& t) {
      if (t->kind == TKind::Var) varsPresent.insert(t->name);
      for (const auto& a : t->args) collect(a);
    };
    for (const auto& in : s.done) {
      collect(in.lhs);
      collect(in.rhs);
    }
    std::vector<std::string> order =
        omega_.topo_order(std::vector<std::string>(varsPresent.begin(), varsPresent.end()));

    for (const std::string& p : order) {
      auto it = eps_.find(p);
      if (it == eps_.end()) throw Unsupported{"variable '" + p + "' has no polarity"};
      bool minimal = it->second == Pol::One;

      std::vector<TermIneq> providers, rest;
      for (auto& in : s.done) {
        bool isProvider = minimal ? (in.rhs->kind == TKind::Var && in.rhs->name == p)
                                  : (in.lhs->kind == TKind::Var && in.lhs->name == p);
        (isProvider ? providers : rest).push_back(in);
      }

      TermPtr theta;
      for (const auto& in : providers) {
        const TermPtr& side = minimal ? in.lhs : in.rhs;
        if (!alba::pure(side))
          throw Unsupported{"valuation bound for '" + p + "' is not pure: " +
                            alba::print(side)};
        theta = !theta ? side
                       : (minimal ? Term::disj(theta, side) : Term::conj(theta, side));
      }
      if (!theta) theta = minimal ? Term::bot() : Term::top();

      for (auto& in : rest) {
        bool posL = false, negL = false, posR = false, negR = false;
        occ_polarity(in.lhs, p, true, posL, negL);
        occ_polarity(in.rhs, p, true, posR, negR);
        bool ok = minimal ? (!negL && !posR) : (!posL && !negR);
        if (!ok)
          throw Unsupported{"occurrence of '" + p + "' blocks the Ackermann rule in " +
                            alba::print(in.lhs) + " <= " + alba::print(in.rhs)};
        in.lhs = subst(in.lhs, p, theta);
        in.rhs = subst(in.rhs, p, theta);
      }
      if (trace_)
        trace_->push_back("ackermann " + p + " := " + alba::print(theta));
      s.done = std::move(rest);
    }
  }

  std::vector<System> one(System s) {
    std::vector<System> out;
    out.push_back(std::move(s));
    return out;
  }

  std::string fresh_nominal(System& s) {
    std::string n = "j" + std::to_string(nextNom_++);
    s.nominals.push_back(n);
    return n;
  }
  std::string fresh_conominal(System& s) {
    std::string n = "m" + std::to_string(nextConom_++);
    s.conominals.push_back(n);
    return n;
  }

  void log(const std::string& rule, const TermIneq& in) {
    if (trace_)
      trace_->push_back(rule + ": " + alba::print(in.lhs) + " <= " + alba::print(in.rhs));
  }

  const Epsilon& eps_;
  const DependencyOrder& omega_;
  std::vector<std::string>* trace_;
  int nextNom_ = 1;
  int nextConom_ = 1;
};

}  // namespace

AlbaOutcome alba_reduce(const alba::QuasiInequality& q, const Epsilon& eps,
                        const DependencyOrder& omega) {
  AlbaOutcome out;
  System init;
  init.pending.assign(q.antecedent.begin(), q.antecedent.end());
  init.nominals = q.nominals;
  init.conominals = q.conominals;
  try {
    Reducer red(eps, omega, &out.trace);
    std::vector<System> systems = red.run(std::move(init));
    for (System& s : systems) {
      alba::QuasiInequality pureQ;
      pureQ.nomI = q.nomI;
      pureQ.conomM = q.conomM;
      pureQ.nominals = std::move(s.nominals);
      pureQ.conominals = std::move(s.conominals);
      pureQ.antecedent = std::move(s.done);
      for (const auto& in : pureQ.antecedent)
        if (!alba::pure(in.lhs) || !alba::pure(in.rhs))
          throw Unsupported{"residual variable after elimination in " + alba::print(in.lhs) +
                            " <= " + alba::print(in.rhs)};
      out.systems.push_back(std::move(pureQ));
    }
    out.supported = true;
  } catch (const Unsupported& u) {
    out.supported = false;
    out.reason = u.why;
    out.systems.clear();
  }
  return out;
}

// ---------------------------------------------------------------------------
// First-order layer
// ---------------------------------------------------------------------------

static FoPtr mkfo(FoKind k) { return std::make_shared<Fo>(Fo{k, "", "", {}, {}}); }

FoPtr Fo::forall(std::string v, FoPtr b) {
  auto f = std::make_shared<Fo>();
  f->k = FoKind::Forall;
  f->var = std::move(v);
  f->sub = {std::move(b)};
  return f;
}
FoPtr Fo::exists(std::string v, FoPtr b) {
  auto f = std::make_shared<Fo>();
  f->k = FoKind::Exists;
  f->var = std::move(v);
  f->sub = {std::move(b)};
  return f;
}
FoPtr Fo::conj(std::vector<FoPtr> xs) {
  if (xs.empty()) return truth(true);
  if (xs.size() == 1) return xs[0];
  auto f = std::make_shared<Fo>();
  f->k = FoKind::And;
  f->sub = std::move(xs);
  return f;
}
FoPtr Fo::disj(std::vector<FoPtr> xs) {
  if (xs.empty()) return truth(false);
  if (xs.size() == 1) return xs[0];
  auto f = std::make_shared<Fo>();
  f->k = FoKind::Or;
  f->sub = std::move(xs);
  return f;
}
FoPtr Fo::impl(FoPtr a, FoPtr b) {
  auto f = std::make_shared<Fo>();
  f->k = FoKind::Implies;
  f->sub = {std::move(a), std::move(b)};
  return f;
}
FoPtr Fo::neg(FoPtr a) {
  auto f = std::make_shared<Fo>();
  f->k = FoKind::Not;
  f->sub = {std::move(a)};
  return f;
}
FoPtr Fo::atom(std::string name, std::vector<std::string> args) {
  auto f = std::make_shared<Fo>();
  f->k = FoKind::Rel;
  f->rel = std::move(name);
  f->args = std::move(args);
  return f;
}
FoPtr Fo::leq(std::string a, std::string b) {
  auto f = std::make_shared<Fo>();
  f->k = FoKind::Leq;
  f->args = {std::move(a), std::move(b)};
  return f;
}
FoPtr Fo::eq(std::string a, std::string b) {
  auto f = std::make_shared<Fo>();
  f->k = FoKind::Eq;
  f->args = {std::move(a), std::move(b)};
  return f;
}
FoPtr Fo::truth(bool b) { return mkfo(b ? FoKind::True : FoKind::False); }

namespace {

bool fo_equal(const FoPtr& a, const FoPtr& b) {
  if (a->k != b->k || a->var != b->var || a->rel != b->rel || a->args != b->args ||
      a->sub.size() != b->sub.size())
    return false;
  for (std::size_t i = 0; i < a->sub.size(); ++i)
    if (!fo_equal(a->sub[i], b->sub[i])) return false;
  return true;
}

void fo_free_vars(const FoPtr& f, std::set<std::string>& bound, std::set<std::string>& out) {
  if (f->k == FoKind::Forall || f->k == FoKind::Exists) {
    bool fresh = bound.insert(f->var).second;
    fo_free_vars(f->sub[0], bound, out);
    if (fresh) bound.erase(f->var);
    return;
  }
  for (const auto& a : f->args)
    if (!bound.count(a)) out.insert(a);
  for (const auto& s : f->sub) fo_free_vars(s, bound, out);
}

std::set<std::string> fo_free_vars(const FoPtr& f) {
  std::set<std::string> bound, out;
  fo_free_vars(f, bound, out);
  return out;
}

FoPtr fo_subst(const FoPtr& f, const std::string& v, const std::string& t) {
  if ((f->k == FoKind::Forall || f->k == FoKind::Exists) && f->var == v) return f;
  auto copy = std::make_shared<Fo>(*f);
  for (auto& a : copy->args)
    if (a == v) a = t;
  for (auto& s : copy->sub) s = fo_subst(s, v, t);
  return copy;
}

// One bottom-up simplification pass.
FoPtr simp(const FoPtr& f0) {
  Fo node = *f0;
  for (auto& s : node.sub) s = simp(s);
  FoPtr f = std::make_shared<Fo>(std::move(node));

  auto isTrue = [](const FoPtr& x) { return x->k == FoKind::True; };
  auto isFalse = [](const FoPtr& x) { return x->k == FoKind::False; };

  switch (f->k) {
    case FoKind::Eq:
    case FoKind::Leq:
      if (f->args[0] == f->args[1]) return Fo::truth(true);  // order reflexive
      return f;
    case FoKind::Not:
      if (isTrue(f->sub[0])) return Fo::truth(false);
      if (isFalse(f->sub[0])) return Fo::truth(true);
      if (f->sub[0]->k == FoKind::Not) return f->sub[0]->sub[0];
      return f;
    case FoKind::And: {
      std::vector<FoPtr> xs;
      for (const auto& s : f->sub) {
        if (isFalse(s)) return Fo::truth(false);
        if (isTrue(s)) continue;
        if (s->k == FoKind::And)
          xs.insert(xs.end(), s->sub.begin(), s->sub.end());
        else
          xs.push_back(s);
      }
      std::vector<FoPtr> dedup;
      for (const auto& x : xs) {
        bool seen = false;
        for (const auto& d : dedup) seen |= fo_equal(x, d);
        if (!seen) dedup.push_back(x);
      }
      return Fo::conj(std::move(dedup));
    }
    case FoKind::Or: {
      std::vector<FoPtr> xs;
      for (const auto& s : f->sub) {
        if (isTrue(s)) return Fo::truth(true);
        if (isFalse(s)) continue;
        if (s->k == FoKind::Or)
          xs.insert(xs.end(), s->sub.begin(), s->sub.end());
        else
          xs.push_back(s);
      }
      std::vector<FoPtr> dedup;
      for (const auto& x : xs) {
        bool seen = false;
        for (const auto& d : dedup) seen |= fo_equal(x, d);
        if (!seen) dedup.push_back(x);
      }
      return Fo::disj(std::move(dedup));
    }
    case FoKind::Implies: {
      const FoPtr& a = f->sub[0];
      const FoPtr& b = f->sub[1];
      if (isTrue(a)) return b;
      if (isFalse(a)) return Fo::truth(true);
      if (isTrue(b)) return Fo::truth(true);
      if (isFalse(b)) return simp(Fo::neg(a));
      if (fo_equal(a, b)) return Fo::truth(true);
      if (b->k == FoKind::Implies)
        return simp(Fo::impl(Fo::conj({a, b->sub[0]}), b->sub[1]));
      return f;
    }
    case FoKind::Exists: {
      const FoPtr& body = f->sub[0];
      if (isTrue(body) || isFalse(body)) return body;
      if (!fo_free_vars(body).count(f->var)) return body;
      // exists x (... /\ x = t /\ ...)  ~>  substitute t.
      std::vector<FoPtr> conj =
          body->k == FoKind::And ? body->sub : std::vector<FoPtr>{body};
      for (std::size_t i = 0; i < conj.size(); ++i) {
        if (conj[i]->k != FoKind::Eq) continue;
        std::string other;
        if (conj[i]->args[0] == f->var && conj[i]->args[1] != f->var)
          other = conj[i]->args[1];
        else if (conj[i]->args[1] == f->var && conj[i]->args[0] != f->var)
          other = conj[i]->args[0];
        else
          continue;
        std::vector<FoPtr> rest;
        for (std::size_t j = 0; j < conj.size(); ++j)
          if (j != i) rest.push_back(conj[j]);
        return simp(fo_subst(Fo::conj(std::move(rest)), f->var, other));
      }
      return f;
    }
    case FoKind::Forall: {
      const FoPtr& body = f->sub[0];
      if (isTrue(body) || isFalse(body)) return body;
      if (!fo_free_vars(body).count(f->var)) return body;
      // forall x (prem -> concl): an equality premise on x pins it down;
      // an equality-free negated conclusion x != t likewise.
      if (body->k == FoKind::Implies) {
        std::vector<FoPtr> prem = body->sub[0]->k == FoKind::And
                                      ? body->sub[0]->sub
                                      : std::vector<FoPtr>{body->sub[0]};
        for (std::size_t i = 0; i < prem.size(); ++i) {
          if (prem[i]->k != FoKind::Eq) continue;
          std::string other;
          if (prem[i]->args[0] == f->var && prem[i]->args[1] != f->var)
            other = prem[i]->args[1];
          else if (prem[i]->args[1] == f->var && prem[i]->args[0] != f->var)
            other = prem[i]->args[0];
          else
            continue;
          std::vector<FoPtr> rest;
          for (std::size_t j = 0; j < prem.size(); ++j)
            if (j != i) rest.push_back(prem[j]);
          return simp(fo_subst(Fo::impl(Fo::conj(std::move(rest)), body->sub[1]), f->var,
                               other));
        }
        const FoPtr& concl = body->sub[1];
        if (concl->k == FoKind::Not && concl->sub[0]->k == FoKind::Eq) {
          const auto& e = concl->sub[0];
          std::string other;
          if (e->args[0] == f->var && e->args[1] != f->var) other = e->args[1];
          else if (e->args[1] == f->var && e->args[0] != f->var) other = e->args[0];
          if (!other.empty())
            return simp(Fo::neg(fo_subst(body->sub[0], f->var, other)));
        }
      }
      // forall x (... \/ x != t \/ ...)  ~>  substitute t in the rest.
      if (body->k == FoKind::Or) {
        for (std::size_t i = 0; i < body->sub.size(); ++i) {
          const FoPtr& d = body->sub[i];
          if (d->k != FoKind::Not || d->sub[0]->k != FoKind::Eq) continue;
          const auto& e = d->sub[0];
          std::string other;
          if (e->args[0] == f->var && e->args[1] != f->var) other = e->args[1];
          else if (e->args[1] == f->var && e->args[0] != f->var) other = e->args[0];
          if (other.empty()) continue;
          std::vector<FoPtr> rest;
          for (std::size_t j = 0; j < body->sub.size(); ++j)
            if (j != i) rest.push_back(body->sub[j]);
          return simp(fo_subst(Fo::disj(std::move(rest)), f->var, other));
        }
      }
      if (body->k == FoKind::Not && body->sub[0]->k == FoKind::Eq) {
        // forall x (x != t) is false in a nonempty domain once t avoids x.
        const auto& e = body->sub[0];
        if ((e->args[0] == f->var && e->args[1] != f->var) ||
            (e->args[1] == f->var && e->args[0] != f->var))
          return Fo::truth(false);
      }
      return f;
    }
    default:
      return f;
  }
}

}  // namespace

FoPtr simplify(const FoPtr& f) {
  FoPtr cur = f;
  for (int i = 0; i < 20; ++i) {
    FoPtr next = simp(cur);
    if (fo_equal(next, cur)) return next;
    cur = next;
  }
  return cur;
}

std::string to_sexpr(const FoPtr& f) {
  switch (f->k) {
    case FoKind::Forall: return "(forall " + f->var + " " + to_sexpr(f->sub[0]) + ")";
    case FoKind::Exists: return "(exists " + f->var + " " + to_sexpr(f->sub[0]) + ")";
    case FoKind::And: {
      std::string s = "(and";
      for (const auto& x : f->sub) s += " " + to_sexpr(x);
      return s + ")";
    }
    case FoKind::Or: {
      std::string s = "(or";
      for (const auto& x : f->sub) s += " " + to_sexpr(x);
      return s + ")";
    }
    case FoKind::Not: return "(not " + to_sexpr(f->sub[0]) + ")";
    case FoKind::Implies:
      return "(=> " + to_sexpr(f->sub[0]) + " " + to_sexpr(f->sub[1]) + ")";
    case FoKind::Rel: {
      std::string s = "(" + f->rel;
      for (const auto& a : f->args) s += " " + a;
      return s + ")";
    }
    case FoKind::Leq: return "(leq " + f->args[0] + " " + f->args[1] + ")";
    case FoKind::Eq: return "(= " + f->args[0] + " " + f->args[1] + ")";
    case FoKind::True: return "true";
    case FoKind::False: return "false";
  }
  return "?";
}

namespace {

int fo_prec(const Fo& f) {
  switch (f.k) {
    case FoKind::Forall:
    case FoKind::Exists: return 1;
    case FoKind::Implies: return 2;
    case FoKind::Or: return 3;
    case FoKind::And: return 4;
    default: return 5;
  }
}

void render_infix(const FoPtr& f, int minPrec, std::string& out) {
  int prec = fo_prec(*f);
  bool parens = prec < minPrec;
  if (parens) out.push_back('(');
  switch (f->k) {
    case FoKind::Forall:
    case FoKind::Exists: {
      out += f->k == FoKind::Forall ? "forall " : "exists ";
      out += f->var;
      const Fo* cur = f->sub[0].get();
      while (cur->k == f->k) {
        out += ", " + cur->var;
        cur = cur->sub[0].get();
      }
      out += ". ";
      FoPtr body = f->sub[0];
      while (body->k == f->k) body = body->sub[0];
      render_infix(body, 1, out);
      break;
    }
    case FoKind::Implies:
      render_infix(f->sub[0], 3, out);
      out += " -> ";
      render_infix(f->sub[1], 2, out);
      break;
    case FoKind::Or:
      for (std::size_t i = 0; i < f->sub.size(); ++i) {
        if (i) out += " | ";
        render_infix(f->sub[i], 4, out);
      }
      break;
    case FoKind::And:
      for (std::size_t i = 0; i < f->sub.size(); ++i) {
        if (i) out += " & ";
        render_infix(f->sub[i], 5, out);
      }
      break;
    case FoKind::Not:
      if (f->sub[0]->k == FoKind::Eq) {
        out += f->sub[0]->args[0] + " != " + f->sub[0]->args[1];
        break;
      }
      out += "~";
      render_infix(f->sub[0], 5, out);
      break;
    case FoKind::Rel: {
      out += f->rel + "(";
      for (std::size_t i = 0; i < f->args.size(); ++i) {
        if (i) out += ",";
        out += f->args[i];
      }
      out += ")";
      break;
    }
    case FoKind::Leq: out += f->args[0] + " <= " + f->args[1]; break;
    case FoKind::Eq: out += f->args[0] + " = " + f->args[1]; break;
    case FoKind::True: out += "true"; break;
    case FoKind::False: out += "false"; break;
  }
  if (parens) out.push_back(')');
}

}  // namespace

std::string to_infix(const FoPtr& f) {
  std::string out;
  render_infix(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Standard translation
// ---------------------------------------------------------------------------

namespace {

class StdTranslator {
public:
  FoPtr ineq_sentence(const alba::TermIneq& in) {
    if (in.lhs->kind == TKind::Nominal) return at(in.lhs->name, in.rhs);
    if (in.rhs->kind == TKind::Conominal) return Fo::neg(at(in.rhs->name, in.lhs));
    std::string x = fresh();
    return Fo::forall(x, Fo::impl(at(x, in.lhs), at(x, in.rhs)));
  }

  FoPtr at(const std::string& x, const TermPtr& t) {
    switch (t->kind) {
      case TKind::Var:
        throw std::logic_error("standard translation of a non-pure term");
      case TKind::Nominal: return Fo::eq(x, t->name);
      case TKind::Conominal: return Fo::neg(Fo::eq(x, t->name));
      case TKind::Bot: return Fo::truth(false);
      case TKind::Top: return Fo::truth(true);
      case TKind::And: return Fo::conj({at(x, t->args[0]), at(x, t->args[1])});
      case TKind::Or: return Fo::disj({at(x, t->args[0]), at(x, t->args[1])});
      case TKind::Neg: return Fo::neg(at(x, t->args[0]));
      case TKind::BoxLe: {
        std::string y = fresh();
        return Fo::forall(y, Fo::impl(Fo::leq(x, y), at(y, t->args[0])));
      }
      case TKind::DiaGe: {
        std::string y = fresh();
        return Fo::exists(y, Fo::conj({Fo::leq(y, x), at(y, t->args[0])}));
      }
      case TKind::App: {
        std::string rname = rel_name(t->conn);
        std::vector<std::string> ys;
        std::vector<std::string> atomArgs{x};
        for (std::size_t i = 0; i < t->args.size(); ++i) {
          ys.push_back(fresh());
          atomArgs.push_back(ys.back());
        }
        if (t->conn.family == Family::F) {
          std::vector<FoPtr> parts{Fo::atom(rname, atomArgs)};
          for (std::size_t i = 0; i < t->args.size(); ++i)
            parts.push_back(at(ys[i], t->args[i]));
          FoPtr body = Fo::conj(std::move(parts));
          for (auto it = ys.rbegin(); it != ys.rend(); ++it) body = Fo::exists(*it, body);
          return body;
        }
        std::vector<FoPtr> alts;
        for (std::size_t i = 0; i < t->args.size(); ++i)
          alts.push_back(at(ys[i], t->args[i]));
        FoPtr body = Fo::impl(Fo::atom(rname, atomArgs), Fo::disj(std::move(alts)));
        for (auto it = ys.rbegin(); it != ys.rend(); ++it) body = Fo::forall(*it, body);
        return body;
      }
      case TKind::ResidF: {
        // Largest set X in the residuated slot with f(..X..) below the bound.
        std::string w = fresh();
        std::vector<std::string> ys;
        std::vector<std::string> atomArgs{w};
        for (std::size_t i = 0; i < t->args.size(); ++i) {
          if (static_cast<int>(i) == t->coord) {
            atomArgs.push_back(x);
            ys.push_back("");
          } else {
            ys.push_back(fresh());
            atomArgs.push_back(ys.back());
          }
        }
        std::vector<FoPtr> prem{Fo::atom(rel_name(t->conn), atomArgs)};
        for (std::size_t i = 0; i < t->args.size(); ++i)
          if (static_cast<int>(i) != t->coord) prem.push_back(at(ys[i], t->args[i]));
        FoPtr body = Fo::impl(Fo::conj(std::move(prem)),
                              at(w, t->args[static_cast<std::size_t>(t->coord)]));
        for (auto it = ys.rbegin(); it != ys.rend(); ++it)
          if (!it->empty()) body = Fo::forall(*it, body);
        return Fo::forall(w, body);
      }
      case TKind::ResidG: {
        // Smallest set X in the residuated slot with the bound below g(..X..).
        std::string w = fresh();
        std::vector<std::string> ys;
        std::vector<std::string> atomArgs{w};
        for (std::size_t i = 0; i < t->args.size(); ++i) {
          if (static_cast<int>(i) == t->coord) {
            atomArgs.push_back(x);
            ys.push_back("");
          } else {
            ys.push_back(fresh());
            atomArgs.push_back(ys.back());
          }
        }
        std::vector<FoPtr> parts{Fo::atom(rel_name(t->conn), atomArgs),
                                 at(w, t->args[static_cast<std::size_t>(t->coord)])};
        for (std::size_t i = 0; i < t->args.size(); ++i)
          if (static_cast<int>(i) != t->coord)
            parts.push_back(Fo::neg(at(ys[i], t->args[i])));
        FoPtr body = Fo::conj(std::move(parts));
        for (auto it = ys.rbegin(); it != ys.rend(); ++it)
          if (!it->empty()) body = Fo::exists(*it, body);
        return Fo::exists(w, body);
      }
    }
    throw std::logic_error("unreachable");
  }

private:
  static std::string rel_name(const Connective& c) {
    std::string base = companion_base(c.name);
    return base.empty() ? c.name : base;
  }

  std::string fresh() { return "x" + std::to_string(next_++); }
  int next_ = 0;
};

}  // namespace

FoPtr standard_translation(const std::vector<alba::QuasiInequality>& pure) {
  std::vector<FoPtr> parts;
  StdTranslator st;
  for (const auto& q : pure) {
    std::vector<FoPtr> ante;
    for (const auto& in : q.antecedent) ante.push_back(st.ineq_sentence(in));
    FoPtr concl = Fo::neg(Fo::eq(q.nomI, q.conomM));
    FoPtr body = Fo::impl(Fo::conj(std::move(ante)), concl);
    std::vector<std::string> quants;
    quants.push_back(q.nomI);
    for (const auto& n : q.nominals)
      if (n != q.nomI) quants.push_back(n);
    quants.push_back(q.conomM);
    for (const auto& m : q.conominals)
      if (m != q.conomM) quants.push_back(m);
    for (auto it = quants.rbegin(); it != quants.rend(); ++it)
      body = Fo::forall(*it, body);
    parts.push_back(std::move(body));
  }
  return Fo::conj(std::move(parts));
}

// ---------------------------------------------------------------------------
// Evaluation and oracle
// ---------------------------------------------------------------------------

namespace {

const Rel* find_relation(const Frame& fr, const std::string& name) {
  auto it = fr.rels.find(name);
  if (it != fr.rels.end()) return &it->second;
  std::string base = companion_base(name);
  if (!base.empty()) {
    it = fr.rels.find(base);
    if (it != fr.rels.end()) return &it->second;
  }
  it = fr.rels.find(companion_name(name));
  if (it != fr.rels.end()) return &it->second;
  return nullptr;
}

bool fo_eval_env(const FoPtr& f, const Frame& fr, std::map<std::string, int>& env) {
  switch (f->k) {
    case FoKind::True: return true;
    case FoKind::False: return false;
    case FoKind::Not: return !fo_eval_env(f->sub[0], fr, env);
    case FoKind::And:
      for (const auto& s : f->sub)
        if (!fo_eval_env(s, fr, env)) return false;
      return true;
    case FoKind::Or:
      for (const auto& s : f->sub)
        if (fo_eval_env(s, fr, env)) return true;
      return false;
    case FoKind::Implies:
      return !fo_eval_env(f->sub[0], fr, env) || fo_eval_env(f->sub[1], fr, env);
    case FoKind::Forall:
    case FoKind::Exists: {
      bool forall = f->k == FoKind::Forall;
      auto saved = env.find(f->var) != env.end()
                       ? std::optional<int>(env[f->var])
                       : std::nullopt;
      for (int w = 0; w < fr.worlds; ++w) {
        env[f->var] = w;
        bool v = fo_eval_env(f->sub[0], fr, env);
        if (forall && !v) {
          if (saved) env[f->var] = *saved; else env.erase(f->var);
          return false;
        }
        if (!forall && v) {
          if (saved) env[f->var] = *saved; else env.erase(f->var);
          return true;
        }
      }
      if (saved) env[f->var] = *saved; else env.erase(f->var);
      return forall;
    }
    case FoKind::Leq: {
      return fr.leq(env.at(f->args[0]), env.at(f->args[1]));
    }
    case FoKind::Eq:
      return env.at(f->args[0]) == env.at(f->args[1]);
    case FoKind::Rel: {
      const Rel* r = find_relation(fr, f->rel);
      if (!r) throw std::invalid_argument("frame lacks relation '" + f->rel + "'");
      std::vector<int> t;
      t.reserve(f->args.size());
      for (const auto& a : f->args) t.push_back(env.at(a));
      return std::binary_search(r->begin(), r->end(), t);
    }
  }
  return false;
}

}  // namespace

bool fo_eval(const FoPtr& f, const Frame& fr) {
  std::map<std::string, int> env;
  return fo_eval_env(f, fr, env);
}

namespace {

std::uint32_t term_extension(const TermPtr& t, const Frame& fr,
                             const std::map<std::string, std::uint32_t>& vars,
                             const std::map<std::string, int>& noms) {
  std::uint32_t full = fr.all();
  switch (t->kind) {
    case TKind::Var: return vars.at(t->name) & full;
    case TKind::Nominal: return 1u << noms.at(t->name);
    case TKind::Conominal: return full & ~(1u << noms.at(t->name));
    case TKind::Bot: return 0;
    case TKind::Top: return full;
    case TKind::And:
      return term_extension(t->args[0], fr, vars, noms) &
             term_extension(t->args[1], fr, vars, noms);
    case TKind::Or:
      return term_extension(t->args[0], fr, vars, noms) |
             term_extension(t->args[1], fr, vars, noms);
    case TKind::Neg: return ~term_extension(t->args[0], fr, vars, noms) & full;
    case TKind::BoxLe: {
      std::uint32_t e = term_extension(t->args[0], fr, vars, noms);
      std::uint32_t out = 0;
      for (int w = 0; w < fr.worlds; ++w)
        if ((fr.up[static_cast<std::size_t>(w)] & ~e) == 0) out |= 1u << w;
      return out;
    }
    case TKind::DiaGe: {
      std::uint32_t e = term_extension(t->args[0], fr, vars, noms);
      std::uint32_t out = 0;
      for (int w = 0; w < fr.worlds; ++w)
        if (fr.down[static_cast<std::size_t>(w)] & e) out |= 1u << w;
      return out;
    }
    case TKind::App: {
      const Rel* rel = find_relation(fr, t->conn.name);
      if (!rel) throw std::invalid_argument("frame lacks relation for '" + t->conn.name + "'");
      std::vector<std::uint32_t> exts;
      exts.reserve(t->args.size());
      for (const auto& a : t->args) exts.push_back(term_extension(a, fr, vars, noms));
      std::uint32_t out;
      if (t->conn.family == Family::F) {
        out = 0;
        for (const auto& tup : *rel) {
          if ((out >> tup[0]) & 1) continue;
          bool hit = true;
          for (std::size_t i = 0; i < exts.size(); ++i)
            if (!((exts[i] >> tup[i + 1]) & 1)) { hit = false; break; }
          if (hit) out |= 1u << tup[0];
        }
      } else {
        out = full;
        for (const auto& tup : *rel) {
          if (!((out >> tup[0]) & 1)) continue;
          bool some = false;
          for (std::size_t i = 0; i < exts.size(); ++i)
            if ((exts[i] >> tup[i + 1]) & 1) { some = true; break; }
          if (!some) out &= ~(1u << tup[0]);
        }
      }
      return out;
    }
    case TKind::ResidF: {
      const Rel* rel = find_relation(fr, t->conn.name);
      if (!rel) throw std::invalid_argument("frame lacks relation for '" + t->conn.name + "'");
      std::uint32_t bound =
          term_extension(t->args[static_cast<std::size_t>(t->coord)], fr, vars, noms);
      std::vector<std::uint32_t> exts(t->args.size(), 0);
      for (std::size_t i = 0; i < t->args.size(); ++i)
        if (static_cast<int>(i) != t->coord)
          exts[i] = term_extension(t->args[i], fr, vars, noms);
      std::uint32_t out = full;
      for (const auto& tup : *rel) {
        bool sides = true;
        for (std::size_t i = 0; i < t->args.size(); ++i)
          if (static_cast<int>(i) != t->coord && !((exts[i] >> tup[i + 1]) & 1)) {
            sides = false;
            break;
          }
        if (sides && !((bound >> tup[0]) & 1))
          out &= ~(1u << tup[static_cast<std::size_t>(t->coord) + 1]);
      }
      return out;
    }
    case TKind::ResidG: {
      const Rel* rel = find_relation(fr, t->conn.name);
      if (!rel) throw std::invalid_argument("frame lacks relation for '" + t->conn.name + "'");
      std::uint32_t bound =
          term_extension(t->args[static_cast<std::size_t>(t->coord)], fr, vars, noms);
      std::vector<std::uint32_t> exts(t->args.size(), 0);
      for (std::size_t i = 0; i < t->args.size(); ++i)
        if (static_cast<int>(i) != t->coord)
          exts[i] = term_extension(t->args[i], fr, vars, noms);
      std::uint32_t out = 0;
      for (const auto& tup : *rel) {
        if (!((bound >> tup[0]) & 1)) continue;
        bool sides = true;
        for (std::size_t i = 0; i < t->args.size(); ++i)
          if (static_cast<int>(i) != t->coord && ((exts[i] >> tup[i + 1]) & 1)) {
            sides = false;
            break;
          }
        if (sides) out |= 1u << tup[static_cast<std::size_t>(t->coord) + 1];
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

void term_vars(const TermPtr& t, std::set<std::string>& out) {
  if (t->kind == TKind::Var) out.insert(t->name);
  for (const auto& a : t->args) term_vars(a, out);
}

}  // namespace

bool quasi_holds(const alba::QuasiInequality& q, const Frame& fr, const Limits& lim) {
  std::set<std::string> varSet;
  for (const auto& in : q.antecedent) {
    term_vars(in.lhs, varSet);
    term_vars(in.rhs, varSet);
  }
  std::vector<std::string> vars(varSet.begin(), varSet.end());
  if (static_cast<int>(vars.size()) > lim.maxVars)
    throw BoundExceeded("too many variables in quasi-inequality");

  std::vector<std::string> points;
  points.insert(points.end(), q.nominals.begin(), q.nominals.end());
  points.insert(points.end(), q.conominals.begin(), q.conominals.end());

  std::uint32_t full = fr.all();
  std::vector<int> pointIdx(points.size(), 0);
  while (true) {
    std::map<std::string, int> noms;
    for (std::size_t i = 0; i < points.size(); ++i) noms[points[i]] = pointIdx[i];

    std::vector<std::uint32_t> valIdx(vars.size(), 0);
    bool broke = false;
    while (true) {
      std::map<std::string, std::uint32_t> vals;
      for (std::size_t i = 0; i < vars.size(); ++i) vals[vars[i]] = valIdx[i];
      bool ante = true;
      for (const auto& in : q.antecedent) {
        std::uint32_t l = term_extension(in.lhs, fr, vals, noms);
        std::uint32_t r = term_extension(in.rhs, fr, vals, noms);
        if (l & ~r) { ante = false; break; }
      }
      if (ante && noms.at(q.nomI) == noms.at(q.conomM)) {
        broke = true;  // conclusion j0 <= m0 fails exactly on equal points
        break;
      }
      if (vars.empty()) break;
      std::size_t i = 0;
      while (i < vars.size() && ++valIdx[i] > full) {
        valIdx[i] = 0;
        ++i;
      }
      if (i == vars.size()) break;
    }
    if (broke) return false;

    if (points.empty()) break;
    std::size_t i = 0;
    while (i < points.size() && ++pointIdx[i] == fr.worlds) {
      pointIdx[i] = 0;
      ++i;
    }
    if (i == points.size()) break;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Pipeline and oracle
// ---------------------------------------------------------------------------

Correspondent correspondent(const Inequality& ineq, const Signature& sig,
                            std::optional<Epsilon> epsOpt) {
  ClassificationReport rep = find_witnesses(ineq, ClassifyMode::Inductive);
  const Witness* chosen = nullptr;
  if (epsOpt) {
    for (const auto& w : rep.witnesses)
      if (w.eps == *epsOpt) chosen = &w;
    if (!chosen)
      throw UnsupportedReduction(
          "inequality is not inductive for the requested polarity assignment");
  } else {
    // Prefer a polarity under which the inequality is plain Sahlqvist.
    ClassificationReport sahl = find_witnesses(ineq, ClassifyMode::Sahlqvist);
    for (const auto& w : rep.witnesses) {
      for (const auto& sw : sahl.witnesses)
        if (sw.eps == w.eps) { chosen = &w; break; }
      if (chosen) break;
    }
    if (!chosen && !rep.witnesses.empty()) chosen = &rep.witnesses.front();
    if (!chosen)
      throw UnsupportedReduction("inequality is not inductive for any polarity assignment" +
                                 (rep.diagnostics.empty() ? std::string()
                                                          : "; " + rep.diagnostics.front()));
  }

  Correspondent out;
  out.eps = chosen->eps;
  out.omega = chosen->omega.value_or(DependencyOrder{});

  Inequality target = ineq;
  if (sig.dialect() == Dialect::DLE) {
    Signature tgt = target_signature(sig);
    target = tau_eps(ineq, out.eps, sig, tgt);
    out.trace.push_back("translation: " + print(target));
  }
  alba::QuasiInequality q = first_approximation(target);
  out.trace.push_back("first approximation: " + alba::print(q));
  AlbaOutcome red = alba_reduce(q, out.eps, out.omega);
  out.trace.insert(out.trace.end(), red.trace.begin(), red.trace.end());
  if (!red.supported) throw UnsupportedReduction(red.reason);
  for (const auto& sys : red.systems)
    out.trace.push_back("pure system: " + alba::print(sys));
  out.fo = simplify(standard_translation(red.systems));
  return out;
}

OracleResult oracle_equivalence(const Inequality& ineq, const Signature& sig, const FoPtr& fo,
                                int maxWorlds, const Limits& lim) {
  if (maxWorlds > lim.maxWorlds)
    throw BoundExceeded("maxWorlds " + std::to_string(maxWorlds) + " exceeds the cap of " +
                        std::to_string(lim.maxWorlds));
  OracleResult res;
  ValKind kind = sig.dialect() == Dialect::DLE ? ValKind::Persistent : ValKind::Arbitrary;

  // Relations of connectives absent from the inequality influence neither
  // side of the equivalence, so only the occurring ones are enumerated.
  // Residuated arrows get their order-generated relations.
  std::set<std::string> occurring;
  std::function<void(const FormulaPtr&)> conns = [&](const FormulaPtr& f) {
    if (f->kind == NodeKind::App) occurring.insert(f->conn.name);
    for (const auto& a : f->args) conns(a);
  };
  conns(ineq.lhs);
  conns(ineq.rhs);

  std::vector<FrameRelationType> enumerated;
  bool heyting = false;
  for (const auto& c : sig.connectives()) {
    if (c.name == kBoxLe || c.name == kDiaGe) continue;
    if (!occurring.count(c.name)) continue;
    if (c.name == "->" || c.name == ">-") {
      heyting = true;
      continue;
    }
    enumerated.push_back(frame_relation_type(c));
  }

  Limits evalLim = lim;
  evalLim.maxVars = std::max(lim.maxVars, static_cast<int>(variables(ineq).size()));

  bool refuted = false;
  for (int n = 1; n <= maxWorlds && !refuted; ++n) {
    for_each_labeled_poset(n, [&](const Frame& poset) {
      if (refuted) return;
      Frame base = heyting ? canonical_heyting_frame(poset, sig) : poset;
      std::function<void(std::size_t, Frame&)> rec = [&](std::size_t k, Frame& acc) {
        if (refuted) return;
        if (k == enumerated.size()) {
          ++res.framesChecked;
          bool valid = is_valid(ineq, acc, kind, evalLim).valid;
          bool foHolds = fo_eval(fo, acc);
          if (valid != foHolds) {
            refuted = true;
            res.verdict = OracleVerdict::Refuted;
            res.refutingFrame = acc;
          }
          return;
        }
        for_each_closed_relation(poset, enumerated[k], [&](const Rel& r) {
          if (refuted) return;
          acc.rels[enumerated[k].connective.name] = r;
          rec(k + 1, acc);
        });
        acc.rels.erase(enumerated[k].connective.name);
      };
      rec(0, base);
    });
  }
  return res;
}

}  // namespace sahl
