#ifndef SAHLKIT_TRANSLATE_HPP
#define SAHLKIT_TRANSLATE_HPP

#include "sahlkit/formula.hpp"
#include "sahlkit/gentree.hpp"

namespace sahl {

struct TranslateOptions {
  /// Emit the extra diage/boxle prefix on every connective application.
  /// Switching it off gives the simpler variant that boxes variables only,
  /// which is sound only on frames whose relations satisfy the frame
  /// compatibility conditions (equivalently, where the mix axioms hold).
  bool s4Prefix = true;
};

/// Polarity-parametric translation into the Boolean target signature:
/// variables become boxle p or diage p according to eps, lattice structure
/// maps homomorphically, f-applications gain a diage prefix and
/// g-applications a boxle prefix, and arguments at d coordinates are
/// negated. The companions of -> and >- are expanded on the fly:
/// impl_o(~a, b) = ~a \/ b and coimpl_o(~a, b) = ~a /\ b.
FormulaPtr tau_eps(const FormulaPtr& f, const Epsilon& eps, const Signature& src,
                   const Signature& tgt, const TranslateOptions& opts = {});

Inequality tau_eps(const Inequality& ineq, const Epsilon& eps, const Signature& src,
                   const Signature& tgt, const TranslateOptions& opts = {});

enum class GmtVariant { Tau, Sigma, TauPrime, SigmaPrime };

/// The four classical translations as fixed-polarity instances: tau is
/// all-1 over the intuitionistic signature, sigma all-d over the
/// co-intuitionistic one, and the primed pair the same two polarities over
/// the bi-intuitionistic signature.
FormulaPtr gmt(const FormulaPtr& f, GmtVariant variant);

}  // namespace sahl

#endif
