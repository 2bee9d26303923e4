#ifndef SAHLKIT_SEMANTICS_HPP
#define SAHLKIT_SEMANTICS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sahlkit/gentree.hpp"
#include "sahlkit/translate.hpp"

namespace sahl {

using Rel = std::vector<std::vector<int>>;  // (n+1)-tuples of worlds

/// A finite poset of worlds with one accessibility relation per connective.
/// Subsets of worlds are bitmasks, so at most 31 worlds.
struct Frame {
  int worlds = 0;
  std::vector<std::uint32_t> up;    // up[w]: mask of v with w <= v (reflexive)
  std::vector<std::uint32_t> down;  // down[w]: mask of v with v <= w
  std::map<std::string, Rel> rels;

  static Frame from_order_pairs(int n, const std::vector<std::pair<int, int>>& leqPairs);

  bool leq(int a, int b) const { return (up[static_cast<std::size_t>(a)] >> b) & 1; }
  std::uint32_t all() const { return (worlds >= 32) ? ~0u : ((1u << worlds) - 1); }

  std::uint32_t up_closure(std::uint32_t m) const;
  std::uint32_t down_closure(std::uint32_t m) const;
  bool is_upset(std::uint32_t m) const { return up_closure(m) == m; }
};

Frame load_frame_json(const std::string& text);
std::string save_frame_json(const Frame& f);

/// Poset axioms plus both relation compatibility conditions, exhaustively.
std::vector<std::string> validate_frame(const Frame& f, const Signature& sig);

/// Least extension of every relation satisfying its compatibility condition.
Frame close_frame(Frame f, const Signature& sig);

enum class ValKind : unsigned char { Persistent, Arbitrary };

struct Valuation {
  std::map<std::string, std::uint32_t> v;
  ValKind kind = ValKind::Persistent;
};

/// All up-set masks of the poset, ascending.
std::vector<std::uint32_t> upsets(const Frame& f);

/// The set of worlds forcing the formula. DLE connectives read their tuples
/// existentially (family F) or universally (family G) with non-forcing at d
/// coordinates; boxle/diage quantify along the order itself; companions fall
/// back to the relation of their base connective.
std::uint32_t extension(const FormulaPtr& f, const Frame& fr, const Valuation& val);

struct Limits {
  int maxWorlds = 4;
  int maxVars = 3;
};

/// Reads SK_MAX_WORLDS if set, otherwise the built-in default of 4.
Limits default_limits();

struct ValidityResult {
  bool valid = true;
  std::optional<Valuation> counterexample;
};

ValidityResult is_valid(const Inequality& ineq, const Frame& fr, ValKind kind,
                        const Limits& lim = default_limits());

/// Interior (complement-down-complement) at polarity-1 variables, up-closure
/// at polarity-d variables; the result is persistent.
Valuation lift_valuation(const Valuation& u, const Epsilon& eps, const Frame& fr);

struct TransferReport {
  bool dleValid = false;
  bool baeValid = false;
  bool agree = false;
  std::optional<Valuation> counterexample;
};

/// Validity of the inequality under persistent valuations against validity
/// of its translation under arbitrary valuations, on the same frame.
TransferReport transfer_check(const Inequality& ineq, const Epsilon& eps, const Frame& fr,
                              const Signature& src, const Signature& tgt,
                              const Limits& lim = default_limits());

// --- enumeration ------------------------------------------------------------

/// All labeled posets on n worlds (orders only, no relations).
void for_each_labeled_poset(int n, const std::function<void(const Frame&)>& fn);

/// Streams every relation satisfying the compatibility condition of the
/// given connective over the poset, by walking the closed subsets of the
/// lifted coordinatewise order.
void for_each_closed_relation(const Frame& poset, const FrameRelationType& frt,
                              const std::function<void(const Rel&)>& fn);

/// Streams every valid frame of the signature with exactly n worlds
/// (posets times closed relation tuples), in a fixed deterministic order.
void for_each_frame(const Signature& sig, int n, const std::function<void(const Frame&)>& fn);

/// All valid frames with 1..maxWorlds worlds. Throws BoundExceeded when
/// maxWorlds tops the configured cap.
std::vector<Frame> enumerate_frames(const Signature& sig, int maxWorlds, bool dedupIso,
                                    const Limits& lim = default_limits());

/// Lexicographically minimal encoding of the frame over all world
/// permutations; equal encodings mean isomorphic frames.
std::vector<std::uint64_t> canonical_encoding(const Frame& f, const Signature& sig);

/// Relations for -> and >- generated from the order: the closures of the
/// diagonal seeds {(w,v,v) : w <= v} and {(w,v,v) : v <= w}. On up-set
/// valuations these reproduce the Heyting residual clauses.
Frame canonical_heyting_frame(Frame poset, const Signature& sig);

}  // namespace sahl

#endif
