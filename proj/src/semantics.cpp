#include "sahlkit/semantics.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace sahl {

Frame Frame::from_order_pairs(int n, const std::vector<std::pair<int, int>>& leqPairs) {
  Frame f;
  f.worlds = n;
  f.up.assign(static_cast<std::size_t>(n), 0);
  f.down.assign(static_cast<std::size_t>(n), 0);
  for (int w = 0; w < n; ++w) {
    f.up[static_cast<std::size_t>(w)] |= 1u << w;
    f.down[static_cast<std::size_t>(w)] |= 1u << w;
  }
  for (auto [a, b] : leqPairs) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw std::out_of_range("world out of range");
    f.up[static_cast<std::size_t>(a)] |= 1u << b;
    f.down[static_cast<std::size_t>(b)] |= 1u << a;
  }
  return f;
}

std::uint32_t Frame::up_closure(std::uint32_t m) const {
  std::uint32_t out = 0;
  for (int w = 0; w < worlds; ++w)
    if ((m >> w) & 1) out |= up[static_cast<std::size_t>(w)];
  return out;
}

std::uint32_t Frame::down_closure(std::uint32_t m) const {
  std::uint32_t out = 0;
  for (int w = 0; w < worlds; ++w)
    if ((m >> w) & 1) out |= down[static_cast<std::size_t>(w)];
  return out;
}

Frame load_frame_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  int n = j.at("worlds").get<int>();
  if (n <= 0 || n > 31) throw std::out_of_range("worlds must be in 1..31");
  std::vector<std::pair<int, int>> pairs;
  if (j.contains("leq"))
    for (const auto& p : j["leq"]) pairs.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
  Frame f = Frame::from_order_pairs(n, pairs);
  if (j.contains("rel"))
    for (auto it = j["rel"].begin(); it != j["rel"].end(); ++it) {
      Rel r;
      for (const auto& tup : it.value()) {
        std::vector<int> t;
        for (const auto& w : tup) t.push_back(w.get<int>());
        r.push_back(std::move(t));
      }
      std::sort(r.begin(), r.end());
      f.rels[it.key()] = std::move(r);
    }
  return f;
}

std::string save_frame_json(const Frame& f) {
  nlohmann::json j;
  j["worlds"] = f.worlds;
  auto leq = nlohmann::json::array();
  for (int a = 0; a < f.worlds; ++a)
    for (int b = 0; b < f.worlds; ++b)
      if (a != b && f.leq(a, b)) leq.push_back({a, b});
  j["leq"] = leq;
  auto rel = nlohmann::json::object();
  for (const auto& [name, r] : f.rels) rel[name] = r;
  j["rel"] = rel;
  return j.dump();
}

namespace {

// Coordinatewise lifted comparison of relation tuples under the slot
// polarities: slot i compares forward at 1 and backward at d.
bool tuple_leq(const Frame& f, const OrderType& slots, const std::vector<int>& a,
               const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    bool ok = slots[i] == Pol::One ? f.leq(a[i], b[i]) : f.leq(b[i], a[i]);
    if (!ok) return false;
  }
  return true;
}

std::string tuple_str(const std::vector<int>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + ")";
}

void all_tuples(int worlds, int len, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(static_cast<std::size_t>(len), 0);
  while (true) {
    out.push_back(cur);
    int i = len - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == worlds - 1) {
      cur[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
  }
}

}  // namespace

std::vector<std::string> validate_frame(const Frame& f, const Signature& sig) {
  std::vector<std::string> out;
  for (int a = 0; a < f.worlds; ++a) {
    if (!f.leq(a, a)) out.push_back("order not reflexive at " + std::to_string(a));
    for (int b = 0; b < f.worlds; ++b) {
      if (a != b && f.leq(a, b) && f.leq(b, a))
        out.push_back("order not antisymmetric on " + std::to_string(a) + "," +
                      std::to_string(b));
      for (int c = 0; c < f.worlds; ++c)
        if (f.leq(a, b) && f.leq(b, c) && !f.leq(a, c))
          out.push_back("order not transitive via " + std::to_string(b));
    }
  }
  // up/down must mirror each other
  for (int a = 0; a < f.worlds; ++a)
    for (int b = 0; b < f.worlds; ++b)
      if (((f.up[static_cast<std::size_t>(a)] >> b) & 1) !=
          ((f.down[static_cast<std::size_t>(b)] >> a) & 1))
        out.push_back("up/down tables disagree");

  for (const auto& frt : frame_relation_types(sig)) {
    if (frt.connective.name == kBoxLe || frt.connective.name == kDiaGe)
      continue;  // interpreted through the order itself
    auto it = f.rels.find(frt.connective.name);
    if (it == f.rels.end()) {
      out.push_back("missing relation for '" + frt.connective.name + "'");
      continue;
    }
    Rel sorted = it->second;
    std::sort(sorted.begin(), sorted.end());
    // F: closed upward in the lifted order; G: closed downward.
    bool upward = frt.connective.family == Family::F;
    for (const auto& t : sorted) {
      if (static_cast<int>(t.size()) != frt.relArity()) {
        out.push_back("bad tuple arity in relation '" + frt.connective.name + "'");
        continue;
      }
      std::vector<std::vector<int>> cands;
      all_tuples(f.worlds, frt.relArity(), cands);
      for (const auto& c : cands) {
        bool reachable = upward ? tuple_leq(f, frt.relOrderType, t, c)
                                : tuple_leq(f, frt.relOrderType, c, t);
        if (reachable && !std::binary_search(sorted.begin(), sorted.end(), c))
          out.push_back("relation '" + frt.connective.name + "' must contain " +
                        tuple_str(c) + " (forced by " + tuple_str(t) + ")");
      }
    }
  }
  return out;
}

Frame close_frame(Frame f, const Signature& sig) {
  for (const auto& frt : frame_relation_types(sig)) {
    auto it = f.rels.find(frt.connective.name);
    if (it == f.rels.end()) continue;
    bool upward = frt.connective.family == Family::F;
    std::vector<std::vector<int>> cands;
    all_tuples(f.worlds, frt.relArity(), cands);
    Rel closed;
    for (const auto& c : cands) {
      for (const auto& t : it->second) {
        bool reachable = upward ? tuple_leq(f, frt.relOrderType, t, c)
                                : tuple_leq(f, frt.relOrderType, c, t);
        if (reachable) {
          closed.push_back(c);
          break;
        }
      }
    }
    it->second = std::move(closed);  // cands are generated in sorted order
  }
  return f;
}

std::vector<std::uint32_t> upsets(const Frame& f) {
  std::vector<std::uint32_t> out;
  std::uint32_t full = f.all();
  for (std::uint32_t m = 0;; ++m) {
    if (f.is_upset(m)) out.push_back(m);
    if (m == full) break;
  }
  return out;
}

namespace {

const Rel* relation_for(const Frame& fr, const Connective& c) {
  auto it = fr.rels.find(c.name);
  if (it != fr.rels.end()) return &it->second;
  std::string base = companion_base(c.name);
  if (!base.empty()) {
    it = fr.rels.find(base);
    if (it != fr.rels.end()) return &it->second;
  }
  return nullptr;
}

}  // namespace

std::uint32_t extension(const FormulaPtr& f, const Frame& fr, const Valuation& val) {
  std::uint32_t full = fr.all();
  switch (f->kind) {
    case NodeKind::Var: {
      auto it = val.v.find(f->var);
      if (it == val.v.end())
        throw std::invalid_argument("valuation does not cover variable '" + f->var + "'");
      return it->second & full;
    }
    case NodeKind::Bot: return 0;
    case NodeKind::Top: return full;
    case NodeKind::And: return extension(f->args[0], fr, val) & extension(f->args[1], fr, val);
    case NodeKind::Or: return extension(f->args[0], fr, val) | extension(f->args[1], fr, val);
    case NodeKind::Neg: return ~extension(f->args[0], fr, val) & full;
    case NodeKind::App: break;
  }

  const Connective& c = f->conn;
  if (c.name == kBoxLe) {
    std::uint32_t e = extension(f->args[0], fr, val);
    std::uint32_t out = 0;
    for (int w = 0; w < fr.worlds; ++w)
      if ((fr.up[static_cast<std::size_t>(w)] & ~e) == 0) out |= 1u << w;
    return out;
  }
  if (c.name == kDiaGe) {
    std::uint32_t e = extension(f->args[0], fr, val);
    std::uint32_t out = 0;
    for (int w = 0; w < fr.worlds; ++w)
      if (fr.down[static_cast<std::size_t>(w)] & e) out |= 1u << w;
    return out;
  }

  const Rel* rel = relation_for(fr, c);
  if (!rel)
    throw std::invalid_argument("frame has no relation for connective '" + c.name + "'");
  std::vector<std::uint32_t> exts;
  exts.reserve(f->args.size());
  for (const auto& a : f->args) exts.push_back(extension(a, fr, val));

  std::uint32_t out = 0;
  if (c.family == Family::F) {
    for (const auto& t : *rel) {
      if ((out >> t[0]) & 1) continue;
      bool hit = true;
      for (int i = 0; i < c.arity(); ++i) {
        bool in = (exts[static_cast<std::size_t>(i)] >> t[static_cast<std::size_t>(i) + 1]) & 1;
        if (c.coordTypes[static_cast<std::size_t>(i)] == Pol::Dual) in = !in;
        if (!in) { hit = false; break; }
      }
      if (hit) out |= 1u << t[0];
    }
  } else {
    out = full;
    for (const auto& t : *rel) {
      if (!((out >> t[0]) & 1)) continue;
      bool some = false;
      for (int i = 0; i < c.arity(); ++i) {
        bool in = (exts[static_cast<std::size_t>(i)] >> t[static_cast<std::size_t>(i) + 1]) & 1;
        if (c.coordTypes[static_cast<std::size_t>(i)] == Pol::Dual) in = !in;
        if (in) { some = true; break; }
      }
      if (!some) out &= ~(1u << t[0]);
    }
  }
  return out;
}

Limits default_limits() {
  Limits lim;
  if (const char* env = std::getenv("SK_MAX_WORLDS")) {
    int v = std::atoi(env);
    if (v > 0) lim.maxWorlds = v;
  }
  return lim;
}

ValidityResult is_valid(const Inequality& ineq, const Frame& fr, ValKind kind,
                        const Limits& lim) {
  std::vector<std::string> vars = variables(ineq);
  if (static_cast<int>(vars.size()) > lim.maxVars)
    throw BoundExceeded("inequality has " + std::to_string(vars.size()) +
                        " variables, exceeding the bound of " + std::to_string(lim.maxVars));

  std::vector<std::uint32_t> domain;
  if (kind == ValKind::Persistent) {
    domain = upsets(fr);
  } else {
    std::uint32_t full = fr.all();
    domain.reserve(full + 1);
    for (std::uint32_t m = 0;; ++m) {
      domain.push_back(m);
      if (m == full) break;
    }
  }

  std::size_t n = vars.size();
  std::vector<std::size_t> idx(n, 0);
  Valuation val;
  val.kind = kind;
  while (true) {
    for (std::size_t i = 0; i < n; ++i) val.v[vars[i]] = domain[idx[i]];
    std::uint32_t l = extension(ineq.lhs, fr, val);
    std::uint32_t r = extension(ineq.rhs, fr, val);
    if (l & ~r) return ValidityResult{false, val};
    if (n == 0) break;
    std::size_t i = 0;
    while (i < n && ++idx[i] == domain.size()) {
      idx[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  return ValidityResult{true, std::nullopt};
}

Valuation lift_valuation(const Valuation& u, const Epsilon& eps, const Frame& fr) {
  Valuation out;
  out.kind = ValKind::Persistent;
  std::uint32_t full = fr.all();
  for (const auto& [p, m] : u.v) {
    auto it = eps.find(p);
    Pol pol = it == eps.end() ? Pol::One : it->second;
    out.v[p] = pol == Pol::One ? (~fr.down_closure(~m & full) & full) : fr.up_closure(m);
  }
  return out;
}

TransferReport transfer_check(const Inequality& ineq, const Epsilon& eps, const Frame& fr,
                              const Signature& src, const Signature& tgt, const Limits& lim) {
  TransferReport rep;
  ValidityResult dle = is_valid(ineq, fr, ValKind::Persistent, lim);
  Inequality translated = tau_eps(ineq, eps, src, tgt);
  ValidityResult bae = is_valid(translated, fr, ValKind::Arbitrary, lim);
  rep.dleValid = dle.valid;
  rep.baeValid = bae.valid;
  rep.agree = dle.valid == bae.valid;
  if (!rep.agree) rep.counterexample = dle.valid ? bae.counterexample : dle.counterexample;
  return rep;
}

// --- enumeration ------------------------------------------------------------

void for_each_labeled_poset(int n, const std::function<void(const Frame&)>& fn) {
  // All strict-containment candidate pairs (a,b), a != b.
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) pairs.push_back({a, b});
  std::size_t m = pairs.size();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    std::vector<std::pair<int, int>> sel;
    for (std::size_t i = 0; i < m; ++i)
      if ((bits >> i) & 1) sel.push_back(pairs[i]);
    Frame f = Frame::from_order_pairs(n, sel);
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b) {
        if (a != b && f.leq(a, b) && f.leq(b, a)) ok = false;
        for (int c = 0; c < n && ok; ++c)
          if (f.leq(a, b) && f.leq(b, c) && !f.leq(a, c)) ok = false;
      }
    if (!ok) continue;
    // Require the selected pair set to be exactly the strict part, so each
    // poset is produced once.
    std::size_t count = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b && f.leq(a, b)) ++count;
    if (count != sel.size()) continue;
    fn(f);
  }
}

void for_each_closed_relation(const Frame& poset, const FrameRelationType& frt,
                              const std::function<void(const Rel&)>& fn) {
  std::vector<std::vector<int>> tuples;
  all_tuples(poset.worlds, frt.relArity(), tuples);
  std::size_t m = tuples.size();
  bool upward = frt.connective.family == Family::F;

  // implies[i] -> j : tuple i in R forces tuple j in R.
  std::vector<std::vector<int>> forcedBy(m);  // j's implicants
  std::vector<std::vector<int>> forces(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      bool f = upward ? tuple_leq(poset, frt.relOrderType, tuples[i], tuples[j])
                      : tuple_leq(poset, frt.relOrderType, tuples[j], tuples[i]);
      if (f) {
        forces[i].push_back(static_cast<int>(j));
        forcedBy[j].push_back(static_cast<int>(i));
      }
    }

  // Topological order of the implication DAG: implicants first.
  std::vector<int> order;
  {
    std::vector<int> indeg(m, 0);
    for (std::size_t j = 0; j < m; ++j) indeg[j] = static_cast<int>(forcedBy[j].size());
    std::vector<int> queue;
    for (std::size_t j = 0; j < m; ++j)
      if (indeg[j] == 0) queue.push_back(static_cast<int>(j));
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      order.push_back(v);
      for (int w : forces[static_cast<std::size_t>(v)])
        if (--indeg[static_cast<std::size_t>(w)] == 0) queue.push_back(w);
    }
  }

  std::vector<signed char> state(m, -1);  // -1 unset, 0 out, 1 in
  Rel current;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == order.size()) {
      Rel sorted = current;
      std::sort(sorted.begin(), sorted.end());
      fn(sorted);
      return;
    }
    int e = order[k];
    bool forced = false;
    for (int p : forcedBy[static_cast<std::size_t>(e)])
      if (state[static_cast<std::size_t>(p)] == 1) { forced = true; break; }
    if (forced) {
      state[static_cast<std::size_t>(e)] = 1;
      current.push_back(tuples[static_cast<std::size_t>(e)]);
      rec(k + 1);
      current.pop_back();
      state[static_cast<std::size_t>(e)] = -1;
      return;
    }
    state[static_cast<std::size_t>(e)] = 0;
    rec(k + 1);
    state[static_cast<std::size_t>(e)] = 1;
    current.push_back(tuples[static_cast<std::size_t>(e)]);
    rec(k + 1);
    current.pop_back();
    state[static_cast<std::size_t>(e)] = -1;
  };
  rec(0);
}

void for_each_frame(const Signature& sig, int n, const std::function<void(const Frame&)>& fn) {
  // boxle/diage read the order, and the residuated arrows carry their
  // order-generated relations; every other connective is enumerated.
  std::vector<FrameRelationType> frts;
  for (const auto& frt : frame_relation_types(sig)) {
    const std::string& name = frt.connective.name;
    if (name == kBoxLe || name == kDiaGe || name == "->" || name == ">-") continue;
    frts.push_back(frt);
  }
  for_each_labeled_poset(n, [&](const Frame& poset) {
    // Streams the cartesian product of per-connective closed relations.
    std::function<void(std::size_t, Frame&)> rec = [&](std::size_t k, Frame& acc) {
      if (k == frts.size()) {
        fn(acc);
        return;
      }
      for_each_closed_relation(poset, frts[k], [&](const Rel& r) {
        acc.rels[frts[k].connective.name] = r;
        rec(k + 1, acc);
      });
      acc.rels.erase(frts[k].connective.name);
    };
    Frame acc = canonical_heyting_frame(poset, sig);
    rec(0, acc);
  });
}

std::vector<std::uint64_t> canonical_encoding(const Frame& f, const Signature& sig) {
  std::vector<FrameRelationType> frts = frame_relation_types(sig);
  int n = f.worlds;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint64_t> best;
  do {
    std::vector<std::uint64_t> enc;
    std::uint64_t ord = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (f.leq(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]))
          ord |= std::uint64_t{1} << (a * n + b);
    enc.push_back(ord);
    for (const auto& frt : frts) {
      auto it = f.rels.find(frt.connective.name);
      std::set<std::vector<int>> mapped;
      if (it != f.rels.end()) {
        std::vector<int> inv(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i;
        for (const auto& t : it->second) {
          std::vector<int> mt;
          mt.reserve(t.size());
          for (int w : t) mt.push_back(inv[static_cast<std::size_t>(w)]);
          mapped.insert(std::move(mt));
        }
      }
      // pack each tuple into a word (worlds <= 31, arity small)
      std::uint64_t h = 1469598103934665603ull;
      for (const auto& t : mapped) {
        std::uint64_t word = 0;
        for (int w : t) word = word * 37 + static_cast<std::uint64_t>(w) + 1;
        h = (h ^ word) * 1099511628211ull;
        enc.push_back(word);
      }
      enc.push_back(h);
    }
    if (best.empty() || enc < best) best = std::move(enc);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<Frame> enumerate_frames(const Signature& sig, int maxWorlds, bool dedupIso,
                                    const Limits& lim) {
  if (maxWorlds > lim.maxWorlds)
    throw BoundExceeded("maxWorlds " + std::to_string(maxWorlds) + " exceeds the cap of " +
                        std::to_string(lim.maxWorlds));
  std::vector<Frame> out;
  std::set<std::vector<std::uint64_t>> seen;
  for (int n = 1; n <= maxWorlds; ++n)
    for_each_frame(sig, n, [&](const Frame& f) {
      if (dedupIso && !seen.insert(canonical_encoding(f, sig)).second) return;
      out.push_back(f);
    });
  return out;
}

Frame canonical_heyting_frame(Frame poset, const Signature& sig) {
  for (const char* name : {"->", ">-"}) {
    const Connective* c = sig.find(name);
    if (!c) continue;
    Rel seed;
    for (int w = 0; w < poset.worlds; ++w)
      for (int v = 0; v < poset.worlds; ++v) {
        bool in = (name[0] == '-') ? poset.leq(w, v) : poset.leq(v, w);
        if (in) seed.push_back({w, v, v});
      }
    poset.rels[name] = std::move(seed);
  }
  return close_frame(std::move(poset), sig);
}

}  // namespace sahl
