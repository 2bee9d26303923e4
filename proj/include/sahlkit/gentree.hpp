#ifndef SAHLKIT_GENTREE_HPP
#define SAHLKIT_GENTREE_HPP

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sahlkit/formula.hpp"

namespace sahl {

enum class Sign : unsigned char { Plus, Minus };
inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

/// Node classes of the skeleton/PIA table. A single signed node may be
/// eligible for several classes (+/\ is a Delta-adjoint, an SLR and an SRA);
/// branch checks read the eligibility existentially.
enum class NodeClass : unsigned char { DeltaAdjoint, SRA, SLR, SRR, Leaf };

enum class PiaRole : unsigned char { None, Sra, Srr };

struct SignedNode {
  const Formula* node = nullptr;
  Sign sign = Sign::Plus;
  std::vector<NodeClass> classes;
  bool skeletonEligible = false;  // Delta-adjoint or SLR
  PiaRole pia = PiaRole::None;    // SRA or SRR eligibility (never both)
  std::vector<SignedNode> children;

  std::string symbol() const;  // display name of the node's main symbol
};

struct SignedTree {
  FormulaPtr formula;  // keeps the borrowed Formula* nodes alive
  Sign rootSign = Sign::Plus;
  SignedNode root;
};

/// Builds the signed generation tree: /\ and \/ propagate the sign, a
/// connective flips the sign at its d-polarity coordinates, ~ always flips
/// and is eligible both as SRA and as SLR.
SignedTree build_signed_tree(const FormulaPtr& f, Sign rootSign);

/// Variable polarity assignment for an inequality.
using Epsilon = std::map<std::string, Pol>;

inline bool critical(Sign leafSign, Pol epsOfVar) {
  return (leafSign == Sign::Plus && epsOfVar == Pol::One) ||
         (leafSign == Sign::Minus && epsOfVar == Pol::Dual);
}

/// One step of a leaf-to-root path: an inner node together with the index of
/// the child through which the path passes.
struct BranchStep {
  const SignedNode* node = nullptr;
  int childIndex = 0;
};

/// A leaf-to-root path: `path[0].node` is the parent of the leaf,
/// `path.back().node` the root. Constant leaves never generate branches.
struct Branch {
  std::string leafVar;
  Sign leafSign = Sign::Plus;
  std::vector<BranchStep> path;

  std::string describe() const;
};

std::vector<Branch> all_branches(const SignedTree& t);
std::vector<Branch> critical_branches(const SignedTree& t, const Epsilon& eps);

enum class BranchQuality : unsigned char { Excellent, Good, Bad };

struct BranchReport {
  BranchQuality quality = BranchQuality::Bad;
  /// Index of the first skeleton node for the minimal PIA/skeleton split.
  std::size_t split = 0;
  std::string diagnostic;
};

/// Shape-only check: Good iff the path is PIA nodes followed by skeleton
/// nodes, Excellent iff the PIA prefix is all SRA. SRR side conditions are
/// not inspected here.
BranchReport branch_quality(const Branch& b);

/// Strict dependency order on variables, kept transitively closed.
class DependencyOrder {
public:
  DependencyOrder() = default;

  /// Transitive closure of the given edges; nullopt if that closure is
  /// reflexive (i.e. the edge set is cyclic).
  static std::optional<DependencyOrder> from_edges(
      const std::set<std::pair<std::string, std::string>>& edges);

  bool less(const std::string& a, const std::string& b) const {
    return edges_.count({a, b}) > 0;
  }
  const std::set<std::pair<std::string, std::string>>& edges() const { return edges_; }

  /// Variables sorted so that omega-smaller ones come first.
  std::vector<std::string> topo_order(const std::vector<std::string>& vars) const;

  std::string to_string() const;

private:
  std::set<std::pair<std::string, std::string>> edges_;
};

struct CheckResult {
  bool ok = false;
  std::vector<std::string> diagnostics;
};

/// Every critical branch of +lhs and -rhs is excellent.
CheckResult is_sahlqvist(const Inequality& ineq, const Epsilon& eps);

/// Every critical branch is good, and every SRR node in a PIA prefix admits
/// the critical branch through exactly one child while the others agree with
/// the opposite polarity and sit strictly below the branch variable in omega.
CheckResult is_inductive(const Inequality& ineq, const Epsilon& eps,
                         const DependencyOrder& omega);

enum class ClassifyMode : unsigned char { Sahlqvist, Inductive };

struct Witness {
  Epsilon eps;
  std::optional<DependencyOrder> omega;  // present in inductive mode
};

struct ClassificationReport {
  ClassifyMode mode = ClassifyMode::Sahlqvist;
  std::vector<std::string> vars;
  std::vector<Witness> witnesses;
  std::vector<std::string> diagnostics;  // first failure reason per rejected eps

  bool positive() const { return !witnesses.empty(); }
};

class BoundExceeded : public std::runtime_error {
public:
  explicit BoundExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Sweeps all 2^n polarity assignments. In inductive mode the dependency
/// order reported per witness is the transitive closure of the constraints
/// forced by the SRR side condition; an assignment is a witness iff that
/// constraint graph is acyclic.
ClassificationReport find_witnesses(const Inequality& ineq, ClassifyMode mode,
                                    int maxVars = 12);

std::string eps_to_string(const Epsilon& eps, const std::vector<std::string>& order);

}  // namespace sahl

#endif
