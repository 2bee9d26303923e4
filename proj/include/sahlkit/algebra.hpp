#ifndef SAHLKIT_ALGEBRA_HPP
#define SAHLKIT_ALGEBRA_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sahlkit/semantics.hpp"

namespace sahl {

enum class AlgebraRole : unsigned char { DLE, BAE };

/// A finite lattice with explicit order and operation tables. Element count
/// stays small (up-set lattices and powersets of frames with at most a
/// handful of worlds), so n-ary tables are stored densely in mixed radix.
struct FiniteAlgebra {
  std::string name;
  AlgebraRole role = AlgebraRole::DLE;
  int size = 0;
  int bot = 0, top = 0;
  std::vector<std::uint32_t> leqRow;     // leqRow[a]: mask of b with a <= b
  std::vector<int> meetTab, joinTab;     // size*size

  struct Op {
    Connective conn;
    std::vector<int> table;  // size^arity entries, index = sum args[i]*size^i
  };
  std::map<std::string, Op> ops;  // includes "neg" for BAE algebras

  bool leq(int a, int b) const { return (leqRow[static_cast<std::size_t>(a)] >> b) & 1; }
  int meet(int a, int b) const { return meetTab[static_cast<std::size_t>(a * size + b)]; }
  int join(int a, int b) const { return joinTab[static_cast<std::size_t>(a * size + b)]; }
  int apply(const Op& op, const std::vector<int>& args) const;

  /// Builds meet/join tables from the order; throws if some pair lacks a
  /// meet or a join.
  void derive_lattice();
};

/// Lattice axioms, distributivity, and per-coordinate normality of every
/// declared operation.
std::vector<std::string> validate_algebra(const FiniteAlgebra& a);

/// Evaluates an inequality under every assignment of carrier elements.
ValidityResult algebra_valid(const Inequality& ineq, const FiniteAlgebra& a,
                             const Limits& lim = default_limits());

/// Up-set algebra of a frame, with operations induced by the relations.
FiniteAlgebra complex_algebra(const Frame& fr, const Signature& sig);

/// e embeds A into B; c and iota are its left and right adjoints.
struct EmbeddingTriple {
  std::vector<int> e;     // A -> B
  std::vector<int> c;     // B -> A, c(b) <= a  iff  b <= e(a)
  std::vector<int> iota;  // B -> A, e(a) <= b  iff  a <= iota(b)
};

struct Companion {
  FiniteAlgebra algebra;  // powerset algebra with companion operations
  EmbeddingTriple emb;
};

/// Powerset algebra of the frame with boxle/diage from the order, the
/// companions of every connective from the same relations read with all
/// coordinates at polarity 1, and negation as complement. c is up-closure
/// and iota is complement-down-complement.
Companion boolean_companion(const Frame& fr, const Signature& sig);

struct CheckReport {
  bool ok = true;
  std::vector<std::string> failures;

  void fail(std::string what) {
    ok = false;
    failures.push_back(std::move(what));
  }
};

/// Pointwise adjunction laws plus the interior/closure laws for e.iota and
/// e.c (deflation/inflation, monotonicity, idempotence, e.iota.e = e,
/// e.c.e = e).
CheckReport adjunction_check(const FiniteAlgebra& a, const FiniteAlgebra& b,
                             const EmbeddingTriple& t);

/// boxle := e.iota preserves finite meets and satisfies T and 4; dually
/// diage := e.c.
CheckReport s4_check(const FiniteAlgebra& a, const FiniteAlgebra& b,
                     const EmbeddingTriple& t);

/// Commutation of the embedding squares: every f-operation of A equals
/// c . f_companion . e (negating embedded arguments at d coordinates), and
/// every g-operation equals iota . g_companion . e.
CheckReport check_diagrams(const FiniteAlgebra& a, const FiniteAlgebra& b,
                           const EmbeddingTriple& t, const Signature& sig);

/// Finite lattices are complete and coincide with their canonical
/// extension; the operation is exposed for interface completeness.
FiniteAlgebra canonical_extension(const FiniteAlgebra& a);

/// The finite witness that the embedding squares can commute while the mix
/// axiom fails: a five-element lattice with a box operation embedded in the
/// eight-element Boolean algebra on atoms {b, x, c} with a = b|x, d = x|c,
/// y = b|c. Everything in the report is recomputed from the two structures.
struct MixReport {
  bool ok = false;
  bool diagramCommutes = false;
  bool mixFails = false;
  std::vector<std::string> lines;  // human-readable recomputation log

  std::string render() const;
};

MixReport mix_counterexample();

}  // namespace sahl

#endif
