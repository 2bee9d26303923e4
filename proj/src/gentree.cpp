#include "sahlkit/gentree.hpp"

#include <algorithm>
#include <sstream>

namespace sahl {

std::string SignedNode::symbol() const {
  switch (node->kind) {
    case NodeKind::Var: return node->var;
    case NodeKind::Bot: return "bot";
    case NodeKind::Top: return "top";
    case NodeKind::And: return "/\\";
    case NodeKind::Or: return "\\/";
    case NodeKind::Neg: return "~";
    case NodeKind::App: return node->conn.name;
  }
  return "?";
}

namespace {

// Class table for a signed node. +/\ and -\/ double as Delta-adjoints, SLR
// and SRA; +\/ and -/\ as Delta-adjoints and SRR. ~ acts as a unary member
// of both families with a d coordinate, so it is SRA and SLR under either
// sign. Nullary applications behave like constants.
void assign_classes(SignedNode& n) {
  const Formula& f = *n.node;
  bool plus = n.sign == Sign::Plus;
  auto add = [&](NodeClass c) { n.classes.push_back(c); };
  switch (f.kind) {
    case NodeKind::Var:
    case NodeKind::Bot:
    case NodeKind::Top:
      add(NodeClass::Leaf);
      return;
    case NodeKind::And:
      if (plus) { add(NodeClass::DeltaAdjoint); add(NodeClass::SRA); add(NodeClass::SLR); }
      else      { add(NodeClass::DeltaAdjoint); add(NodeClass::SRR); }
      break;
    case NodeKind::Or:
      if (plus) { add(NodeClass::DeltaAdjoint); add(NodeClass::SRR); }
      else      { add(NodeClass::DeltaAdjoint); add(NodeClass::SRA); add(NodeClass::SLR); }
      break;
    case NodeKind::Neg:
      add(NodeClass::SRA);
      add(NodeClass::SLR);
      break;
    case NodeKind::App: {
      int ar = f.conn.arity();
      if (ar == 0) { add(NodeClass::Leaf); return; }
      bool isF = f.conn.family == Family::F;
      if (plus == isF) {
        add(NodeClass::SLR);  // +f / -g
      } else {
        add(ar == 1 ? NodeClass::SRA : NodeClass::SRR);  // +g / -f
      }
      break;
    }
  }
  for (NodeClass c : n.classes) {
    if (c == NodeClass::DeltaAdjoint || c == NodeClass::SLR) n.skeletonEligible = true;
    if (c == NodeClass::SRA) n.pia = PiaRole::Sra;
    if (c == NodeClass::SRR) n.pia = PiaRole::Srr;
  }
}

SignedNode build_node(const Formula* f, Sign sign) {
  SignedNode n;
  n.node = f;
  n.sign = sign;
  assign_classes(n);
  switch (f->kind) {
    case NodeKind::And:
    case NodeKind::Or:
      n.children.push_back(build_node(f->args[0].get(), sign));
      n.children.push_back(build_node(f->args[1].get(), sign));
      break;
    case NodeKind::Neg:
      n.children.push_back(build_node(f->args[0].get(), flip(sign)));
      break;
    case NodeKind::App:
      for (int i = 0; i < f->conn.arity(); ++i) {
        Sign child = f->conn.coordTypes[static_cast<std::size_t>(i)] == Pol::One
                         ? sign
                         : flip(sign);
        n.children.push_back(build_node(f->args[static_cast<std::size_t>(i)].get(), child));
      }
      break;
    default:
      break;
  }
  return n;
}

}  // namespace

SignedTree build_signed_tree(const FormulaPtr& f, Sign rootSign) {
  SignedTree t;
  t.formula = f;
  t.rootSign = rootSign;
  t.root = build_node(f.get(), rootSign);
  return t;
}

std::string Branch::describe() const {
  std::ostringstream os;
  os << sign_char(leafSign) << leafVar;
  for (const BranchStep& s : path) os << " < " << sign_char(s.node->sign) << s.node->symbol();
  return os.str();
}

namespace {

void collect_branches(const SignedNode& n, std::vector<BranchStep>& stack,
                      std::vector<Branch>& out) {
  if (n.node->kind == NodeKind::Var) {
    Branch b;
    b.leafVar = n.node->var;
    b.leafSign = n.sign;
    b.path.assign(stack.rbegin(), stack.rend());
    out.push_back(std::move(b));
    return;
  }
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    stack.push_back({&n, static_cast<int>(i)});
    collect_branches(n.children[i], stack, out);
    stack.pop_back();
  }
}

}  // namespace

std::vector<Branch> all_branches(const SignedTree& t) {
  std::vector<Branch> out;
  std::vector<BranchStep> stack;
  collect_branches(t.root, stack, out);
  return out;
}

std::vector<Branch> critical_branches(const SignedTree& t, const Epsilon& eps) {
  std::vector<Branch> out;
  for (Branch& b : all_branches(t)) {
    auto it = eps.find(b.leafVar);
    if (it != eps.end() && critical(b.leafSign, it->second)) out.push_back(std::move(b));
  }
  return out;
}

namespace {

// Smallest k such that path[k..] are all skeleton-eligible. Any valid
// PIA/skeleton split sits at or after this point and obligates a superset
// of path[0..k) as PIA, so the branch admits a valid split iff this one is.
std::size_t min_skeleton_split(const std::vector<BranchStep>& path) {
  std::size_t k = path.size();
  while (k > 0 && path[k - 1].node->skeletonEligible) --k;
  return k;
}

}  // namespace

BranchReport branch_quality(const Branch& b) {
  BranchReport r;
  r.split = min_skeleton_split(b.path);
  bool sraOnly = true;
  for (std::size_t i = 0; i < r.split; ++i) {
    const SignedNode* n = b.path[i].node;
    if (n->pia == PiaRole::None) {
      r.quality = BranchQuality::Bad;
      r.diagnostic = "skeleton-only node " + std::string(1, sign_char(n->sign)) +
                     n->symbol() + " below a PIA node on branch " + b.describe();
      return r;
    }
    if (n->pia != PiaRole::Sra) sraOnly = false;
  }
  r.quality = sraOnly ? BranchQuality::Excellent : BranchQuality::Good;
  return r;
}

std::optional<DependencyOrder> DependencyOrder::from_edges(
    const std::set<std::pair<std::string, std::string>>& edges) {
  DependencyOrder o;
  o.edges_ = edges;
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::pair<std::string, std::string>> add;
    for (const auto& [a, b] : o.edges_)
      for (const auto& [c, d] : o.edges_)
        if (b == c && !o.edges_.count({a, d})) add.push_back({a, d});
    for (auto& e : add) grew |= o.edges_.insert(std::move(e)).second;
  }
  for (const auto& [a, b] : o.edges_)
    if (a == b) return std::nullopt;
  return o;
}

std::vector<std::string> DependencyOrder::topo_order(
    const std::vector<std::string>& vars) const {
  std::vector<std::string> out;
  std::vector<bool> used(vars.size(), false);
  while (out.size() < vars.size()) {
    bool progress = false;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (used[i]) continue;
      bool minimal = true;
      for (std::size_t j = 0; j < vars.size(); ++j)
        if (!used[j] && j != i && less(vars[j], vars[i])) minimal = false;
      if (minimal) {
        used[i] = true;
        out.push_back(vars[i]);
        progress = true;
        break;
      }
    }
    if (!progress) {  // unreachable: the order is acyclic by construction
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (!used[i]) out.push_back(vars[i]);
      break;
    }
  }
  return out;
}

std::string DependencyOrder::to_string() const {
  std::string s;
  for (const auto& [a, b] : edges_) {
    if (!s.empty()) s += ", ";
    s += a + "<" + b;
  }
  return s.empty() ? "(empty)" : s;
}

namespace {

void leaf_signs(const SignedNode& n, std::vector<std::pair<std::string, Sign>>& out) {
  if (n.node->kind == NodeKind::Var) {
    out.push_back({n.node->var, n.sign});
    return;
  }
  for (const SignedNode& c : n.children) leaf_signs(c, out);
}

// Condition 2(a): every variable leaf of the side subtree is non-critical,
// i.e. agrees with the opposite polarity assignment. Constants are ignored.
bool agrees_with_eps_dual(const SignedNode& n, const Epsilon& eps, std::string* offender) {
  std::vector<std::pair<std::string, Sign>> leaves;
  leaf_signs(n, leaves);
  for (const auto& [v, s] : leaves) {
    auto it = eps.find(v);
    if (it == eps.end()) continue;
    if (critical(s, it->second)) {
      if (offender) *offender = std::string(1, sign_char(s)) + v;
      return false;
    }
  }
  return true;
}

void subtree_vars(const SignedNode& n, std::set<std::string>& out) {
  if (n.node->kind == NodeKind::Var) {
    out.insert(n.node->var);
    return;
  }
  for (const SignedNode& c : n.children) subtree_vars(c, out);
}

struct BranchCheck {
  bool good = false;
  bool excellent = false;
  std::set<std::pair<std::string, std::string>> forced;  // q < leafVar
  std::string diagnostic;
};

// Evaluates one critical branch at the minimal split, recording the
// dependency edges forced by SRR nodes in the PIA prefix.
BranchCheck check_branch(const Branch& b, const Epsilon& eps) {
  BranchCheck out;
  out.excellent = true;
  std::size_t split = min_skeleton_split(b.path);
  for (std::size_t i = 0; i < split; ++i) {
    const SignedNode* n = b.path[i].node;
    int through = b.path[i].childIndex;
    if (n->pia == PiaRole::None) {
      out.diagnostic = "branch " + b.describe() + ": skeleton-only node " +
                       std::string(1, sign_char(n->sign)) + n->symbol() +
                       " below a PIA node";
      return out;
    }
    if (n->pia == PiaRole::Srr) {
      out.excellent = false;
      for (std::size_t h = 0; h < n->children.size(); ++h) {
        if (static_cast<int>(h) == through) continue;
        const SignedNode& side = n->children[h];
        std::string offender;
        if (!agrees_with_eps_dual(side, eps, &offender)) {
          out.diagnostic = "branch " + b.describe() + ": side child " +
                           std::to_string(h + 1) + " of SRR node " +
                           std::string(1, sign_char(n->sign)) + n->symbol() +
                           " carries critical occurrence " + offender;
          return out;
        }
        std::set<std::string> vs;
        subtree_vars(side, vs);
        for (const auto& q : vs) out.forced.insert({q, b.leafVar});
      }
    }
  }
  out.good = true;
  return out;
}

std::vector<Branch> critical_branches_of(const Inequality& ineq, const Epsilon& eps,
                                         SignedTree& lhsTree, SignedTree& rhsTree) {
  lhsTree = build_signed_tree(ineq.lhs, Sign::Plus);
  rhsTree = build_signed_tree(ineq.rhs, Sign::Minus);
  std::vector<Branch> out = critical_branches(lhsTree, eps);
  std::vector<Branch> r = critical_branches(rhsTree, eps);
  out.insert(out.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  return out;
}

void require_coverage(const Inequality& ineq, const Epsilon& eps) {
  for (const auto& v : variables(ineq))
    if (!eps.count(v))
      throw std::invalid_argument("polarity assignment does not cover variable '" + v + "'");
}

}  // namespace

CheckResult is_sahlqvist(const Inequality& ineq, const Epsilon& eps) {
  require_coverage(ineq, eps);
  CheckResult res;
  res.ok = true;
  SignedTree lt, rt;
  for (const Branch& b : critical_branches_of(ineq, eps, lt, rt)) {
    BranchReport r = branch_quality(b);
    if (r.quality != BranchQuality::Excellent) {
      res.ok = false;
      res.diagnostics.push_back(r.quality == BranchQuality::Bad
                                    ? r.diagnostic
                                    : "branch " + b.describe() + " is good but not excellent");
    }
  }
  return res;
}

CheckResult is_inductive(const Inequality& ineq, const Epsilon& eps,
                         const DependencyOrder& omega) {
  require_coverage(ineq, eps);
  CheckResult res;
  res.ok = true;
  SignedTree lt, rt;
  for (const Branch& b : critical_branches_of(ineq, eps, lt, rt)) {
    BranchCheck c = check_branch(b, eps);
    if (!c.good) {
      res.ok = false;
      res.diagnostics.push_back(c.diagnostic);
      continue;
    }
    for (const auto& [q, p] : c.forced) {
      if (!omega.less(q, p)) {
        res.ok = false;
        res.diagnostics.push_back("branch " + b.describe() + ": dependency " + q + "<" + p +
                                  " required but not in the given order");
      }
    }
  }
  return res;
}

std::string eps_to_string(const Epsilon& eps, const std::vector<std::string>& order) {
  std::string s;
  for (const auto& v : order) {
    if (!s.empty()) s += ",";
    auto it = eps.find(v);
    s += v + "=" + (it == eps.end() ? '?' : pol_char(it->second));
  }
  return s;
}

ClassificationReport find_witnesses(const Inequality& ineq, ClassifyMode mode, int maxVars) {
  ClassificationReport rep;
  rep.mode = mode;
  rep.vars = variables(ineq);
  int n = static_cast<int>(rep.vars.size());
  if (n > maxVars)
    throw BoundExceeded("inequality has " + std::to_string(n) +
                        " variables, exceeding the bound of " + std::to_string(maxVars));

  SignedTree lhsTree = build_signed_tree(ineq.lhs, Sign::Plus);
  SignedTree rhsTree = build_signed_tree(ineq.rhs, Sign::Minus);
  std::vector<Branch> branches = all_branches(lhsTree);
  {
    std::vector<Branch> r = all_branches(rhsTree);
    branches.insert(branches.end(), std::make_move_iterator(r.begin()),
                    std::make_move_iterator(r.end()));
  }

  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    Epsilon eps;
    for (int i = 0; i < n; ++i)
      eps[rep.vars[static_cast<std::size_t>(i)]] =
          (bits >> i) & 1 ? Pol::Dual : Pol::One;

    bool ok = true;
    bool needOmega = mode == ClassifyMode::Inductive;
    std::set<std::pair<std::string, std::string>> forced;
    std::string failure;
    for (const Branch& b : branches) {
      auto it = eps.find(b.leafVar);
      if (!critical(b.leafSign, it->second)) continue;
      if (needOmega) {
        BranchCheck c = check_branch(b, eps);
        if (!c.good) {
          ok = false;
          failure = c.diagnostic;
          break;
        }
        forced.insert(c.forced.begin(), c.forced.end());
      } else {
        BranchReport r = branch_quality(b);
        if (r.quality != BranchQuality::Excellent) {
          ok = false;
          failure = r.quality == BranchQuality::Bad
                        ? r.diagnostic
                        : "branch " + b.describe() + " is good but not excellent";
          break;
        }
      }
    }

    std::string epsStr = eps_to_string(eps, rep.vars);
    if (!ok) {
      rep.diagnostics.push_back("eps " + epsStr + ": " + failure);
      continue;
    }
    if (needOmega) {
      auto omega = DependencyOrder::from_edges(forced);
      if (!omega) {
        rep.diagnostics.push_back("eps " + epsStr + ": forced dependency constraints are cyclic");
        continue;
      }
      rep.witnesses.push_back(Witness{std::move(eps), std::move(*omega)});
    } else {
      rep.witnesses.push_back(Witness{std::move(eps), std::nullopt});
    }
  }
  return rep;
}

}  // namespace sahl
