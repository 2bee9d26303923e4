#include "sahlkit/translate.hpp"

namespace sahl {

namespace {

class Translator {
public:
  Translator(const Epsilon& eps, const Signature& src, const Signature& tgt,
             const TranslateOptions& opts)
      : eps_(eps), src_(src), tgt_(tgt), opts_(opts) {
    boxle_ = require(kBoxLe);
    diage_ = require(kDiaGe);
  }

  FormulaPtr run(const FormulaPtr& f) {
    switch (f->kind) {
      case NodeKind::Bot: return Formula::bot();
      case NodeKind::Top: return Formula::top();
      case NodeKind::And: return Formula::conj(run(f->args[0]), run(f->args[1]));
      case NodeKind::Or: return Formula::disj(run(f->args[0]), run(f->args[1]));
      case NodeKind::Neg:
        throw std::invalid_argument("translation input must be a DLE formula");
      case NodeKind::Var: {
        auto it = eps_.find(f->var);
        if (it == eps_.end())
          throw std::invalid_argument("polarity assignment does not cover variable '" +
                                      f->var + "'");
        return it->second == Pol::One ? Formula::app(*boxle_, {f})
                                      : Formula::app(*diage_, {f});
      }
      case NodeKind::App: return app(f);
    }
    throw std::logic_error("unreachable");
  }

private:
  FormulaPtr app(const FormulaPtr& f) {
    const Connective& c = f->conn;
    if (!src_.find(c.name) || !(*src_.find(c.name) == c))
      throw std::invalid_argument("connective '" + c.name + "' not in source signature");

    std::vector<FormulaPtr> args;
    args.reserve(f->args.size());
    for (int i = 0; i < c.arity(); ++i) {
      FormulaPtr t = run(f->args[static_cast<std::size_t>(i)]);
      if (c.coordTypes[static_cast<std::size_t>(i)] == Pol::Dual) t = Formula::neg(t);
      args.push_back(std::move(t));
    }

    FormulaPtr body;
    if (c.name == "->") {
      body = Formula::disj(args[0], args[1]);
    } else if (c.name == ">-") {
      body = Formula::conj(args[0], args[1]);
    } else {
      const Connective* comp = tgt_.find(companion_name(c.name));
      if (!comp)
        throw std::invalid_argument("target signature lacks companion of '" + c.name + "'");
      body = Formula::app(*comp, std::move(args));
    }

    if (!opts_.s4Prefix) return body;
    return c.family == Family::F ? Formula::app(*diage_, {std::move(body)})
                                 : Formula::app(*boxle_, {std::move(body)});
  }

  const Connective* require(const char* name) {
    const Connective* c = tgt_.find(name);
    if (!c) throw std::invalid_argument("target signature must declare " + std::string(name));
    return c;
  }

  const Epsilon& eps_;
  const Signature& src_;
  const Signature& tgt_;
  const TranslateOptions& opts_;
  const Connective* boxle_ = nullptr;
  const Connective* diage_ = nullptr;
};

}  // namespace

FormulaPtr tau_eps(const FormulaPtr& f, const Epsilon& eps, const Signature& src,
                   const Signature& tgt, const TranslateOptions& opts) {
  return Translator(eps, src, tgt, opts).run(f);
}

Inequality tau_eps(const Inequality& ineq, const Epsilon& eps, const Signature& src,
                   const Signature& tgt, const TranslateOptions& opts) {
  Translator t(eps, src, tgt, opts);
  return Inequality{t.run(ineq.lhs), t.run(ineq.rhs)};
}

FormulaPtr gmt(const FormulaPtr& f, GmtVariant variant) {
  std::string sigName;
  Pol pol = Pol::One;
  switch (variant) {
    case GmtVariant::Tau: sigName = "intuitionistic"; pol = Pol::One; break;
    case GmtVariant::Sigma: sigName = "co-intuitionistic"; pol = Pol::Dual; break;
    case GmtVariant::TauPrime: sigName = "bi-intuitionistic"; pol = Pol::One; break;
    case GmtVariant::SigmaPrime: sigName = "bi-intuitionistic"; pol = Pol::Dual; break;
  }
  Signature src = builtin_signature(sigName);
  Signature tgt = target_signature(src);
  Epsilon eps;
  for (const auto& v : variables(f)) eps[v] = pol;
  return tau_eps(f, eps, src, tgt);
}

}  // namespace sahl
