#ifndef SAHLKIT_SIGNATURE_HPP
#define SAHLKIT_SIGNATURE_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sahl {

/// Coordinate polarity: 1 (order-preserving) or d (order-reversing).
enum class Pol : unsigned char { One, Dual };

inline Pol opposite(Pol p) { return p == Pol::One ? Pol::Dual : Pol::One; }
inline char pol_char(Pol p) { return p == Pol::One ? '1' : 'd'; }

/// A tuple over {1, d}, attached to the coordinates of a connective, to the
/// proposition variables of an inequality, or to the slots of a frame relation.
class OrderType {
public:
  OrderType() = default;
  explicit OrderType(std::vector<Pol> entries) : entries_(std::move(entries)) {}

  static OrderType ones(std::size_t n) { return OrderType(std::vector<Pol>(n, Pol::One)); }
  static OrderType duals(std::size_t n) { return OrderType(std::vector<Pol>(n, Pol::Dual)); }

  std::size_t size() const { return entries_.size(); }
  Pol operator[](std::size_t i) const { return entries_.at(i); }

  OrderType opposite() const {
    std::vector<Pol> out(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) out[i] = sahl::opposite(entries_[i]);
    return OrderType(std::move(out));
  }

  std::string to_string() const {
    std::string s;
    for (Pol p : entries_) s.push_back(pol_char(p));
    return s;
  }

  bool operator==(const OrderType&) const = default;

private:
  std::vector<Pol> entries_;
};

enum class Family : unsigned char { F, G };

/// A declared connective: either join-friendly (family F) or meet-friendly
/// (family G), with one polarity per coordinate.
struct Connective {
  std::string name;
  Family family = Family::F;
  OrderType coordTypes;

  int arity() const { return static_cast<int>(coordTypes.size()); }
  bool operator==(const Connective&) const = default;
};

enum class Dialect : unsigned char { DLE, BAE };

class SignatureError : public std::runtime_error {
public:
  explicit SignatureError(const std::string& what) : std::runtime_error(what) {}
};

/// A similarity type: named connective families over a bounded distributive
/// lattice base (dialect DLE), or over a Boolean base with the S4 pair
/// boxle/diage and primitive negation (dialect BAE).
///
/// Boolean negation is not a member of F or G; it is available exactly when
/// the dialect is BAE and is written ~ in the concrete syntax.
class Signature {
public:
  Signature() = default;
  Signature(std::string name, Dialect dialect, std::vector<Connective> conns);

  const std::string& name() const { return name_; }
  Dialect dialect() const { return dialect_; }
  const std::vector<Connective>& connectives() const { return conns_; }

  const Connective* find(std::string_view name) const;
  bool has(std::string_view name) const { return find(name) != nullptr; }

  bool operator==(const Signature&) const = default;

private:
  std::string name_;
  Dialect dialect_ = Dialect::DLE;
  std::vector<Connective> conns_;
};

/// Names of the distinguished BAE connectives in the concrete syntax.
inline constexpr const char* kBoxLe = "boxle";   // up-looking universal box
inline constexpr const char* kDiaGe = "diage";   // down-looking existential diamond

/// Parses the JSON signature file format:
///   {"name": str, "F": [conn...], "G": [conn...]}
/// with conn = {"name": str, "arity": int, "ot": ["1"|"d", ...]}.
/// An optional "dialect": "bae" field marks Boolean signatures.
Signature load_signature(const std::string& text);

std::string serialize_signature(const Signature& sig);

/// Returns one of the stock signatures: intuitionistic, co-intuitionistic,
/// bi-intuitionistic, fischer-servi, wolter-bimodal, positive-modal, dml.
Signature builtin_signature(const std::string& name);

/// Companion name used in the classical target signature ("box" -> "box_o";
/// the symbolic names "->" and ">-" mangle to "impl_o" and "coimpl_o").
std::string companion_name(const std::string& base);

/// Inverse of companion_name, empty if the name is not a companion.
std::string companion_base(const std::string& name);

/// Builds the Boolean target signature: boxle, diage, negation, and for every
/// declared connective a companion of the same arity and family with all
/// coordinates of polarity 1. Throws if the input is already BAE.
Signature target_signature(const Signature& sig);

/// The (n+1)-ary accessibility-relation slot polarities for a connective:
/// slot 1 is 1 and slot i+1 is the opposite of coordinate i.
struct FrameRelationType {
  Connective connective;
  OrderType relOrderType;

  int relArity() const { return static_cast<int>(relOrderType.size()); }
};

FrameRelationType frame_relation_type(const Connective& c);
std::vector<FrameRelationType> frame_relation_types(const Signature& sig);

}  // namespace sahl

#endif
