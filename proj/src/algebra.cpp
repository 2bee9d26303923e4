#include "sahlkit/algebra.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace sahl {

int FiniteAlgebra::apply(const Op& op, const std::vector<int>& args) const {
  std::size_t idx = 0, stride = 1;
  for (int a : args) {
    idx += static_cast<std::size_t>(a) * stride;
    stride *= static_cast<std::size_t>(size);
  }
  return op.table.at(idx);
}

void FiniteAlgebra::derive_lattice() {
  meetTab.assign(static_cast<std::size_t>(size) * size, -1);
  joinTab.assign(static_cast<std::size_t>(size) * size, -1);
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b) {
      int m = -1, j = -1;
      for (int x = 0; x < size; ++x) {
        if (leq(x, a) && leq(x, b) && (m < 0 || leq(m, x))) m = x;
        if (leq(a, x) && leq(b, x) && (j < 0 || leq(x, j))) j = x;
      }
      // verify the candidates really bound every other bound
      for (int x = 0; x < size; ++x) {
        if (leq(x, a) && leq(x, b) && (m < 0 || !leq(x, m))) m = -2;
        if (leq(a, x) && leq(b, x) && (j < 0 || !leq(j, x))) j = -2;
      }
      if (m < 0 || j < 0)
        throw std::invalid_argument("carrier is not a lattice at (" + std::to_string(a) +
                                    "," + std::to_string(b) + ")");
      meetTab[static_cast<std::size_t>(a * size + b)] = m;
      joinTab[static_cast<std::size_t>(a * size + b)] = j;
    }
  bot = 0;
  top = 0;
  for (int x = 0; x < size; ++x) {
    if (leq(x, bot)) bot = x;
    if (leq(top, x)) top = x;
  }
  for (int x = 0; x < size; ++x)
    if (!leq(bot, x) || !leq(x, top))
      throw std::invalid_argument("carrier has no bottom or top");
}

std::vector<std::string> validate_algebra(const FiniteAlgebra& a) {
  std::vector<std::string> out;
  for (int x = 0; x < a.size; ++x) {
    if (!a.leq(x, x)) out.push_back("order not reflexive");
    for (int y = 0; y < a.size; ++y) {
      if (x != y && a.leq(x, y) && a.leq(y, x)) out.push_back("order not antisymmetric");
      for (int z = 0; z < a.size; ++z) {
        if (a.leq(x, y) && a.leq(y, z) && !a.leq(x, z)) out.push_back("order not transitive");
        if (a.meet(x, a.join(y, z)) != a.join(a.meet(x, y), a.meet(x, z))) {
          out.push_back("distributivity fails");
          x = y = z = a.size;  // one report is enough
        }
      }
    }
  }

  // Normality: f-operations preserve joins / reverse meets coordinatewise,
  // g-operations dually, with the matching unit laws.
  for (const auto& [name, op] : a.ops) {
    if (name == "neg") continue;
    const Connective& c = op.conn;
    int n = c.arity();
    std::vector<int> args(static_cast<std::size_t>(n), 0);
    std::function<void(int)> sweep = [&](int fixed) {
      if (fixed == n) {
        for (int i = 0; i < n; ++i) {
          bool one = c.coordTypes[static_cast<std::size_t>(i)] == Pol::One;
          bool isF = c.family == Family::F;
          for (int u = 0; u < a.size; ++u)
            for (int v = 0; v < a.size; ++v) {
              std::vector<int> l = args, r = args, m = args;
              l[static_cast<std::size_t>(i)] = u;
              r[static_cast<std::size_t>(i)] = v;
              m[static_cast<std::size_t>(i)] = one == isF ? a.join(u, v) : a.meet(u, v);
              int combined = a.apply(op, m);
              int split = isF ? a.join(a.apply(op, l), a.apply(op, r))
                              : a.meet(a.apply(op, l), a.apply(op, r));
              if (combined != split) {
                out.push_back("operation '" + name + "' not normal in coordinate " +
                              std::to_string(i + 1));
                u = v = a.size;
              }
            }
          std::vector<int> unit = args;
          unit[static_cast<std::size_t>(i)] = one == isF ? a.bot : a.top;
          int val = a.apply(op, unit);
          if (isF ? val != a.bot : val != a.top)
            out.push_back("operation '" + name + "' misses the unit law in coordinate " +
                          std::to_string(i + 1));
        }
        return;
      }
      for (int x = 0; x < a.size; ++x) {
        args[static_cast<std::size_t>(fixed)] = x;
        sweep(fixed + 1);
      }
    };
    if (n > 0) sweep(0);
  }
  return out;
}

namespace {

int eval_on_algebra(const FormulaPtr& f, const FiniteAlgebra& a,
                    const std::map<std::string, int>& asg) {
  switch (f->kind) {
    case NodeKind::Var: {
      auto it = asg.find(f->var);
      if (it == asg.end())
        throw std::invalid_argument("assignment does not cover '" + f->var + "'");
      return it->second;
    }
    case NodeKind::Bot: return a.bot;
    case NodeKind::Top: return a.top;
    case NodeKind::And:
      return a.meet(eval_on_algebra(f->args[0], a, asg), eval_on_algebra(f->args[1], a, asg));
    case NodeKind::Or:
      return a.join(eval_on_algebra(f->args[0], a, asg), eval_on_algebra(f->args[1], a, asg));
    case NodeKind::Neg: {
      auto it = a.ops.find("neg");
      if (it == a.ops.end()) throw std::invalid_argument("algebra has no negation");
      return a.apply(it->second, {eval_on_algebra(f->args[0], a, asg)});
    }
    case NodeKind::App: {
      auto it = a.ops.find(f->conn.name);
      if (it == a.ops.end())
        throw std::invalid_argument("algebra has no operation '" + f->conn.name + "'");
      std::vector<int> args;
      args.reserve(f->args.size());
      for (const auto& arg : f->args) args.push_back(eval_on_algebra(arg, a, asg));
      return a.apply(it->second, args);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

ValidityResult algebra_valid(const Inequality& ineq, const FiniteAlgebra& a,
                             const Limits& lim) {
  std::vector<std::string> vars = variables(ineq);
  if (static_cast<int>(vars.size()) > lim.maxVars)
    throw BoundExceeded("too many variables for algebra sweep");
  std::map<std::string, int> asg;
  std::vector<int> idx(vars.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < vars.size(); ++i) asg[vars[i]] = idx[i];
    int l = eval_on_algebra(ineq.lhs, a, asg);
    int r = eval_on_algebra(ineq.rhs, a, asg);
    if (!a.leq(l, r)) {
      Valuation v;
      for (std::size_t i = 0; i < vars.size(); ++i)
        v.v[vars[i]] = static_cast<std::uint32_t>(idx[i]);
      return ValidityResult{false, v};
    }
    if (vars.empty()) break;
    std::size_t i = 0;
    while (i < vars.size() && ++idx[i] == a.size) {
      idx[i] = 0;
      ++i;
    }
    if (i == vars.size()) break;
  }
  return ValidityResult{true, std::nullopt};
}

namespace {

// Applies the forcing clause of a connective to argument masks and returns
// the result mask. Mirrors extension() but takes raw sets.
std::uint32_t clause(const Frame& fr, const Connective& c, const Rel& rel,
                     const std::vector<std::uint32_t>& argMasks) {
  std::uint32_t full = fr.all(), out;
  if (c.family == Family::F) {
    out = 0;
    for (const auto& t : rel) {
      if ((out >> t[0]) & 1) continue;
      bool hit = true;
      for (int i = 0; i < c.arity(); ++i) {
        bool in = (argMasks[static_cast<std::size_t>(i)] >>
                   t[static_cast<std::size_t>(i) + 1]) & 1;
        if (c.coordTypes[static_cast<std::size_t>(i)] == Pol::Dual) in = !in;
        if (!in) { hit = false; break; }
      }
      if (hit) out |= 1u << t[0];
    }
  } else {
    out = full;
    for (const auto& t : rel) {
      if (!((out >> t[0]) & 1)) continue;
      bool some = false;
      for (int i = 0; i < c.arity(); ++i) {
        bool in = (argMasks[static_cast<std::size_t>(i)] >>
                   t[static_cast<std::size_t>(i) + 1]) & 1;
        if (c.coordTypes[static_cast<std::size_t>(i)] == Pol::Dual) in = !in;
        if (in) { some = true; break; }
      }
      if (!some) out &= ~(1u << t[0]);
    }
  }
  return out;
}

void build_op_table(FiniteAlgebra& alg, const std::vector<std::uint32_t>& carrier,
                    const std::map<std::uint32_t, int>& index, const Frame& fr,
                    const Connective& c, const Rel& rel) {
  int n = c.arity();
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= carrier.size();
  FiniteAlgebra::Op op;
  op.conn = c;
  op.table.resize(total);
  std::vector<std::uint32_t> argMasks(static_cast<std::size_t>(n));
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (int i = 0; i < n; ++i) {
      argMasks[static_cast<std::size_t>(i)] = carrier[rest % carrier.size()];
      rest /= carrier.size();
    }
    op.table[idx] = index.at(clause(fr, c, rel, argMasks));
  }
  alg.ops[c.name] = std::move(op);
}

FiniteAlgebra algebra_on_carrier(const Frame& fr, std::vector<std::uint32_t> carrier,
                                 AlgebraRole role) {
  FiniteAlgebra a;
  a.role = role;
  a.size = static_cast<int>(carrier.size());
  a.leqRow.assign(carrier.size(), 0);
  for (std::size_t i = 0; i < carrier.size(); ++i)
    for (std::size_t j = 0; j < carrier.size(); ++j)
      if ((carrier[i] & ~carrier[j]) == 0) a.leqRow[i] |= 1u << j;
  a.derive_lattice();
  (void)fr;
  return a;
}

}  // namespace

FiniteAlgebra complex_algebra(const Frame& fr, const Signature& sig) {
  std::vector<std::uint32_t> carrier = upsets(fr);
  std::map<std::uint32_t, int> index;
  for (std::size_t i = 0; i < carrier.size(); ++i)
    index[carrier[i]] = static_cast<int>(i);
  FiniteAlgebra a = algebra_on_carrier(fr, carrier, AlgebraRole::DLE);
  a.name = "upsets";
  for (const auto& c : sig.connectives()) {
    auto it = fr.rels.find(c.name);
    if (it == fr.rels.end())
      throw std::invalid_argument("frame has no relation for '" + c.name + "'");
    build_op_table(a, carrier, index, fr, c, it->second);
  }
  return a;
}

Companion boolean_companion(const Frame& fr, const Signature& sig) {
  std::uint32_t full = fr.all();
  std::vector<std::uint32_t> carrier;
  carrier.reserve(full + 1);
  for (std::uint32_t m = 0;; ++m) {
    carrier.push_back(m);
    if (m == full) break;
  }
  std::map<std::uint32_t, int> index;
  for (std::size_t i = 0; i < carrier.size(); ++i)
    index[carrier[i]] = static_cast<int>(i);

  Companion comp;
  FiniteAlgebra& b = comp.algebra;
  b = algebra_on_carrier(fr, carrier, AlgebraRole::BAE);
  b.name = "powerset";

  // negation, boxle, diage from the order
  {
    FiniteAlgebra::Op neg;
    neg.conn = Connective{"neg", Family::F, OrderType::duals(1)};
    neg.table.resize(carrier.size());
    for (std::size_t i = 0; i < carrier.size(); ++i)
      neg.table[i] = index.at(~carrier[i] & full);
    b.ops["neg"] = std::move(neg);

    FiniteAlgebra::Op boxle;
    boxle.conn = Connective{kBoxLe, Family::G, OrderType::ones(1)};
    boxle.table.resize(carrier.size());
    FiniteAlgebra::Op diage;
    diage.conn = Connective{kDiaGe, Family::F, OrderType::ones(1)};
    diage.table.resize(carrier.size());
    for (std::size_t i = 0; i < carrier.size(); ++i) {
      boxle.table[i] = index.at(~fr.down_closure(~carrier[i] & full) & full);
      diage.table[i] = index.at(fr.up_closure(carrier[i]));
    }
    b.ops[kBoxLe] = std::move(boxle);
    b.ops[kDiaGe] = std::move(diage);
  }

  // companions read the same relations with every coordinate at polarity 1
  for (const auto& c : sig.connectives()) {
    auto it = fr.rels.find(c.name);
    if (it == fr.rels.end())
      throw std::invalid_argument("frame has no relation for '" + c.name + "'");
    Connective comp_conn{companion_name(c.name), c.family,
                         OrderType::ones(static_cast<std::size_t>(c.arity()))};
    build_op_table(b, carrier, index, fr, comp_conn, it->second);
  }

  // e: up-sets into the powerset; c and iota from the order
  std::vector<std::uint32_t> ups = upsets(fr);
  comp.emb.e.resize(ups.size());
  std::map<std::uint32_t, int> upIndex;
  for (std::size_t i = 0; i < ups.size(); ++i) {
    comp.emb.e[i] = index.at(ups[i]);
    upIndex[ups[i]] = static_cast<int>(i);
  }
  comp.emb.c.resize(carrier.size());
  comp.emb.iota.resize(carrier.size());
  for (std::size_t i = 0; i < carrier.size(); ++i) {
    comp.emb.c[i] = upIndex.at(fr.up_closure(carrier[i]));
    comp.emb.iota[i] = upIndex.at(~fr.down_closure(~carrier[i] & full) & full);
  }
  return comp;
}

CheckReport adjunction_check(const FiniteAlgebra& a, const FiniteAlgebra& b,
                             const EmbeddingTriple& t) {
  CheckReport rep;
  for (int x = 0; x < a.size; ++x)
    for (int y = 0; y < a.size; ++y) {
      if (a.leq(x, y) != b.leq(t.e[static_cast<std::size_t>(x)],
                               t.e[static_cast<std::size_t>(y)]))
        rep.fail("e is not an order embedding");
      if (t.e[static_cast<std::size_t>(a.meet(x, y))] !=
          b.meet(t.e[static_cast<std::size_t>(x)], t.e[static_cast<std::size_t>(y)]))
        rep.fail("e does not preserve meets");
      if (t.e[static_cast<std::size_t>(a.join(x, y))] !=
          b.join(t.e[static_cast<std::size_t>(x)], t.e[static_cast<std::size_t>(y)]))
        rep.fail("e does not preserve joins");
    }
  if (t.e[static_cast<std::size_t>(a.bot)] != b.bot ||
      t.e[static_cast<std::size_t>(a.top)] != b.top)
    rep.fail("e does not preserve the bounds");

  for (int bb = 0; bb < b.size; ++bb)
    for (int aa = 0; aa < a.size; ++aa) {
      bool lhs = a.leq(t.c[static_cast<std::size_t>(bb)], aa);
      bool rhs = b.leq(bb, t.e[static_cast<std::size_t>(aa)]);
      if (lhs != rhs) rep.fail("c is not left adjoint to e");
      lhs = b.leq(t.e[static_cast<std::size_t>(aa)], bb);
      rhs = a.leq(aa, t.iota[static_cast<std::size_t>(bb)]);
      if (lhs != rhs) rep.fail("iota is not right adjoint to e");
    }

  auto eIota = [&](int x) { return t.e[static_cast<std::size_t>(t.iota[static_cast<std::size_t>(x)])]; };
  auto eC = [&](int x) { return t.e[static_cast<std::size_t>(t.c[static_cast<std::size_t>(x)])]; };
  for (int x = 0; x < b.size; ++x) {
    if (!b.leq(eIota(x), x)) rep.fail("e.iota is not deflationary (i1)");
    if (!b.leq(x, eC(x))) rep.fail("e.c is not inflationary (c1)");
    if (b.leq(eIota(x), eIota(eIota(x))) == false) rep.fail("e.iota not idempotent (i3)");
    if (b.leq(eC(eC(x)), eC(x)) == false) rep.fail("e.c not idempotent (c3)");
    for (int y = 0; y < b.size; ++y)
      if (b.leq(x, y)) {
        if (!b.leq(eIota(x), eIota(y))) rep.fail("e.iota not monotone (i2)");
        if (!b.leq(eC(x), eC(y))) rep.fail("e.c not monotone (c2)");
      }
  }
  for (int x = 0; x < a.size; ++x) {
    int ex = t.e[static_cast<std::size_t>(x)];
    if (eIota(ex) != ex) rep.fail("e.iota.e differs from e");
    if (eC(ex) != ex) rep.fail("e.c.e differs from e");
  }
  return rep;
}

CheckReport s4_check(const FiniteAlgebra& a, const FiniteAlgebra& b,
                     const EmbeddingTriple& t) {
  CheckReport rep;
  (void)a;
  auto box = [&](int x) { return t.e[static_cast<std::size_t>(t.iota[static_cast<std::size_t>(x)])]; };
  auto dia = [&](int x) { return t.e[static_cast<std::size_t>(t.c[static_cast<std::size_t>(x)])]; };
  if (box(b.top) != b.top) rep.fail("box does not preserve the empty meet");
  if (dia(b.bot) != b.bot) rep.fail("dia does not preserve the empty join");
  for (int x = 0; x < b.size; ++x) {
    if (!b.leq(box(x), x)) rep.fail("box fails T");
    if (!b.leq(box(x), box(box(x)))) rep.fail("box fails 4");
    if (!b.leq(x, dia(x))) rep.fail("dia fails T");
    if (!b.leq(dia(dia(x)), dia(x))) rep.fail("dia fails 4");
    for (int y = 0; y < b.size; ++y) {
      if (box(b.meet(x, y)) != b.meet(box(x), box(y)))
        rep.fail("box does not preserve binary meets");
      if (dia(b.join(x, y)) != b.join(dia(x), dia(y)))
        rep.fail("dia does not preserve binary joins");
    }
  }
  return rep;
}

CheckReport check_diagrams(const FiniteAlgebra& a, const FiniteAlgebra& b,
                           const EmbeddingTriple& t, const Signature& sig) {
  CheckReport rep;
  auto negOp = b.ops.find("neg");
  for (const auto& c : sig.connectives()) {
    auto aIt = a.ops.find(c.name);
    auto bIt = b.ops.find(companion_name(c.name));
    if (aIt == a.ops.end() || bIt == b.ops.end()) {
      rep.fail("missing operation pair for '" + c.name + "'");
      continue;
    }
    int n = c.arity();
    std::vector<int> args(static_cast<std::size_t>(n), 0);
    std::function<void(int)> sweep = [&](int k) {
      if (k == n) {
        std::vector<int> embedded(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
          int e = t.e[static_cast<std::size_t>(args[static_cast<std::size_t>(i)])];
          if (c.coordTypes[static_cast<std::size_t>(i)] == Pol::Dual) {
            if (negOp == b.ops.end()) { rep.fail("companion algebra lacks negation"); return; }
            e = b.apply(negOp->second, {e});
          }
          embedded[static_cast<std::size_t>(i)] = e;
        }
        int viaB = b.apply(bIt->second, embedded);
        int back = c.family == Family::F ? t.c[static_cast<std::size_t>(viaB)]
                                         : t.iota[static_cast<std::size_t>(viaB)];
        int direct = a.apply(aIt->second, args);
        if (back != direct)
          rep.fail("diagram for '" + c.name + "' fails at argument tuple");
        return;
      }
      for (int x = 0; x < a.size; ++x) {
        args[static_cast<std::size_t>(k)] = x;
        sweep(k + 1);
      }
    };
    sweep(0);
  }
  return rep;
}

FiniteAlgebra canonical_extension(const FiniteAlgebra& a) {
  // A finite lattice is complete, so the extension adds nothing.
  return a;
}

// ---------------------------------------------------------------------------
// Mix counterexample
// ---------------------------------------------------------------------------

namespace {

// Left structure: bot < b,c < y < top with box fixing bot, b, c, top and
// sending y to top.
FiniteAlgebra mix_lattice_a() {
  FiniteAlgebra a;
  a.role = AlgebraRole::DLE;
  a.size = 5;  // 0=bot 1=b 2=c 3=y 4=top
  a.leqRow.assign(5, 0);
  auto le = [&](int x, int y) { a.leqRow[static_cast<std::size_t>(x)] |= 1u << y; };
  for (int x = 0; x < 5; ++x) le(x, x);
  le(0, 1); le(0, 2); le(0, 3); le(0, 4);
  le(1, 3); le(1, 4);
  le(2, 3); le(2, 4);
  le(3, 4);
  a.derive_lattice();
  FiniteAlgebra::Op box;
  box.conn = Connective{"box", Family::G, OrderType::ones(1)};
  box.table = {0, 1, 2, 4, 4};
  a.ops["box"] = std::move(box);
  return a;
}

// Right structure: the Boolean algebra on atoms b=1, x=2, c=4, with
// box_o: 0->x, b->b|x, c->x|c, y=b|c->top, everything else fixed.
FiniteAlgebra mix_algebra_b() {
  FiniteAlgebra b;
  b.role = AlgebraRole::BAE;
  b.size = 8;
  b.leqRow.assign(8, 0);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y)
      if ((x & ~y) == 0) b.leqRow[static_cast<std::size_t>(x)] |= 1u << y;
  b.derive_lattice();
  FiniteAlgebra::Op neg;
  neg.conn = Connective{"neg", Family::F, OrderType::duals(1)};
  neg.table.resize(8);
  for (int x = 0; x < 8; ++x) neg.table[static_cast<std::size_t>(x)] = ~x & 7;
  b.ops["neg"] = std::move(neg);
  FiniteAlgebra::Op boxo;
  boxo.conn = Connective{"box_o", Family::G, OrderType::ones(1)};
  boxo.table.resize(8);
  boxo.table[0] = 2;           // bot -> x
  boxo.table[1] = 3;           // b -> a = b|x
  boxo.table[4] = 6;           // c -> d = x|c
  boxo.table[2] = 2;           // x fixed
  boxo.table[3] = 3;           // a fixed
  boxo.table[6] = 6;           // d fixed
  boxo.table[5] = 7;           // y = b|c -> top
  boxo.table[7] = 7;           // top fixed
  b.ops["box_o"] = std::move(boxo);
  return b;
}

std::string mix_name_a(int x) {
  static const char* names[] = {"bot", "b", "c", "y", "top"};
  return names[x];
}

std::string mix_name_b(int x) {
  static const char* names[] = {"bot", "b", "x", "a", "c", "y", "d", "top"};
  return names[x];
}

}  // namespace

std::string MixReport::render() const {
  std::ostringstream os;
  for (const auto& l : lines) os << l << "\n";
  os << (ok ? "mix counterexample verified" : "mix counterexample FAILED") << "\n";
  return os.str();
}

MixReport mix_counterexample() {
  MixReport rep;
  FiniteAlgebra a = mix_lattice_a();
  FiniteAlgebra b = mix_algebra_b();

  for (const auto& msg : validate_algebra(a)) rep.lines.push_back("A: " + msg);
  for (const auto& msg : validate_algebra(b)) rep.lines.push_back("B: " + msg);

  // Embedding: bot, b, c, y = b|c, top = b|x|c.
  EmbeddingTriple t;
  t.e = {0, 1, 4, 5, 7};

  // Recompute the adjoints from the order rather than asserting them:
  // c(u) = least element of A above u, iota(u) = greatest below.
  t.c.assign(8, -1);
  t.iota.assign(8, -1);
  bool adjointsExist = true;
  for (int u = 0; u < 8; ++u) {
    int lo = -1, hi = -1;
    for (int x = 0; x < a.size; ++x) {
      int ex = t.e[static_cast<std::size_t>(x)];
      if (b.leq(u, ex) && (lo < 0 || a.leq(x, lo))) lo = x;
      if (b.leq(ex, u) && (hi < 0 || a.leq(hi, x))) hi = x;
    }
    for (int x = 0; x < a.size; ++x) {
      int ex = t.e[static_cast<std::size_t>(x)];
      if (b.leq(u, ex) && !a.leq(lo, x)) adjointsExist = false;
      if (b.leq(ex, u) && !a.leq(x, hi)) adjointsExist = false;
    }
    t.c[static_cast<std::size_t>(u)] = lo;
    t.iota[static_cast<std::size_t>(u)] = hi;
  }
  if (!adjointsExist) rep.lines.push_back("adjoints of e do not exist");

  CheckReport adj = adjunction_check(a, b, t);
  for (const auto& f : adj.failures) rep.lines.push_back(f);

  // The induced S4 box on B.
  auto boxLe = [&](int u) { return t.e[static_cast<std::size_t>(t.iota[static_cast<std::size_t>(u)])]; };
  const int elA = 3 /* a = b|x */, elD = 6, elX = 2, elB = 1;
  rep.lines.push_back("boxle(a) = " + mix_name_b(boxLe(elA)));
  rep.lines.push_back("boxle(d) = " + mix_name_b(boxLe(elD)));
  rep.lines.push_back("boxle(x) = " + mix_name_b(boxLe(elX)));
  bool actions = boxLe(elA) == elB && boxLe(elD) == 4 && boxLe(elX) == 0;
  if (!actions) rep.lines.push_back("boxle action differs from the expected one");
  bool fixesRest = true;
  for (int u : {0, 1, 4, 5, 7})
    if (boxLe(u) != u) fixesRest = false;
  if (!fixesRest) rep.lines.push_back("boxle fails to fix the embedded elements");

  // Diagram: box on A equals iota . box_o . e.
  const auto& boxA = a.ops.at("box");
  const auto& boxO = b.ops.at("box_o");
  rep.diagramCommutes = true;
  for (int x = 0; x < a.size; ++x) {
    int viaB = t.iota[static_cast<std::size_t>(
        b.apply(boxO, {t.e[static_cast<std::size_t>(x)]}))];
    int direct = a.apply(boxA, {x});
    rep.lines.push_back("iota(box_o(e(" + mix_name_a(x) + "))) = " + mix_name_a(viaB) +
                        ", box(" + mix_name_a(x) + ") = " + mix_name_a(direct));
    if (viaB != direct) rep.diagramCommutes = false;
  }

  // Mix axiom: boxle box_o boxle b against box_o b.
  int lhs = boxLe(b.apply(boxO, {boxLe(elB)}));
  int rhs = b.apply(boxO, {elB});
  rep.lines.push_back("boxle(box_o(boxle(b))) = " + mix_name_b(lhs) + ", box_o(b) = " +
                      mix_name_b(rhs));
  rep.mixFails = lhs == elB && rhs == elA && lhs != rhs;

  rep.ok = rep.diagramCommutes && rep.mixFails && adj.ok && adjointsExist && actions &&
           fixesRest && validate_algebra(a).empty() && validate_algebra(b).empty();
  return rep;
}

}  // namespace sahl
