#include "sahlkit/signature.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "json.hpp"

namespace sahl {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

bool valid_connective_name(std::string_view s) {
  return is_identifier(s) || s == "->" || s == ">-";
}

const std::set<std::string> kReserved = {"bot", "top", kBoxLe, kDiaGe};

void check_connective(const Connective& c) {
  if (!valid_connective_name(c.name))
    throw SignatureError("invalid connective name '" + c.name + "'");
  if (c.coordTypes.size() != static_cast<std::size_t>(c.arity()))
    throw SignatureError("order-type length mismatch for '" + c.name + "'");
}

}  // namespace

Signature::Signature(std::string name, Dialect dialect, std::vector<Connective> conns)
    : name_(std::move(name)), dialect_(dialect), conns_(std::move(conns)) {
  std::set<std::string> seen;
  for (const auto& c : conns_) {
    check_connective(c);
    if (!seen.insert(c.name).second)
      throw SignatureError("duplicate connective name '" + c.name + "'");
  }
  if (dialect_ == Dialect::BAE) {
    const Connective* d = find(kDiaGe);
    const Connective* b = find(kBoxLe);
    if (!d || d->family != Family::F || d->arity() != 1 || d->coordTypes[0] != Pol::One)
      throw SignatureError("BAE signature must declare diage in F with order-type (1)");
    if (!b || b->family != Family::G || b->arity() != 1 || b->coordTypes[0] != Pol::One)
      throw SignatureError("BAE signature must declare boxle in G with order-type (1)");
  } else {
    for (const char* n : {kBoxLe, kDiaGe})
      if (find(n)) throw SignatureError(std::string("'") + n + "' is reserved for BAE signatures");
  }
}

const Connective* Signature::find(std::string_view name) const {
  for (const auto& c : conns_)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

OrderType parse_ot(const nlohmann::json& arr, const std::string& where) {
  std::vector<Pol> out;
  for (const auto& e : arr) {
    std::string s = e.get<std::string>();
    if (s == "1")
      out.push_back(Pol::One);
    else if (s == "d")
      out.push_back(Pol::Dual);
    else
      throw SignatureError("bad order-type entry '" + s + "' in " + where);
  }
  return OrderType(std::move(out));
}

}  // namespace

Signature load_signature(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SignatureError(std::string("signature parse error: ") + e.what());
  }
  if (!j.is_object()) throw SignatureError("signature file must be a JSON object");
  std::string name = j.value("name", "");
  Dialect dialect = Dialect::DLE;
  if (j.contains("dialect")) {
    std::string d = j["dialect"].get<std::string>();
    if (d == "bae")
      dialect = Dialect::BAE;
    else if (d != "dle")
      throw SignatureError("unknown dialect '" + d + "'");
  }
  std::vector<Connective> conns;
  for (auto [fam, key] : {std::pair{Family::F, "F"}, std::pair{Family::G, "G"}}) {
    if (!j.contains(key)) continue;
    for (const auto& c : j[key]) {
      Connective conn;
      conn.name = c.at("name").get<std::string>();
      conn.family = fam;
      int arity = c.at("arity").get<int>();
      conn.coordTypes = parse_ot(c.at("ot"), conn.name);
      if (arity != conn.arity())
        throw SignatureError("arity/order-type mismatch for '" + conn.name + "'");
      conns.push_back(std::move(conn));
    }
  }
  return Signature(name, dialect, std::move(conns));
}

std::string serialize_signature(const Signature& sig) {
  nlohmann::json j;
  j["name"] = sig.name();
  if (sig.dialect() == Dialect::BAE) j["dialect"] = "bae";
  j["F"] = nlohmann::json::array();
  j["G"] = nlohmann::json::array();
  for (const auto& c : sig.connectives()) {
    nlohmann::json e;
    e["name"] = c.name;
    e["arity"] = c.arity();
    auto ot = nlohmann::json::array();
    for (int i = 0; i < c.arity(); ++i) ot.push_back(std::string(1, pol_char(c.coordTypes[i])));
    e["ot"] = ot;
    j[c.family == Family::F ? "F" : "G"].push_back(e);
  }
  return j.dump(2);
}

namespace {

Connective conn(std::string name, Family fam, std::vector<Pol> ot) {
  return Connective{std::move(name), fam, OrderType(std::move(ot))};
}

}  // namespace

Signature builtin_signature(const std::string& name) {
  const Pol o = Pol::One, d = Pol::Dual;
  if (name == "intuitionistic")
    return Signature(name, Dialect::DLE, {conn("->", Family::G, {d, o})});
  if (name == "co-intuitionistic")
    return Signature(name, Dialect::DLE, {conn(">-", Family::F, {d, o})});
  if (name == "bi-intuitionistic")
    return Signature(name, Dialect::DLE,
                     {conn(">-", Family::F, {d, o}), conn("->", Family::G, {d, o})});
  if (name == "fischer-servi")
    return Signature(name, Dialect::DLE,
                     {conn("dia", Family::F, {o}), conn("->", Family::G, {d, o}),
                      conn("box", Family::G, {o})});
  if (name == "wolter-bimodal")
    return Signature(name, Dialect::DLE,
                     {conn(">-", Family::F, {d, o}), conn("dia", Family::F, {o}),
                      conn("->", Family::G, {d, o}), conn("box", Family::G, {o})});
  if (name == "positive-modal")
    return Signature(name, Dialect::DLE,
                     {conn("dia", Family::F, {o}), conn("box", Family::G, {o})});
  if (name == "dml")
    return Signature(name, Dialect::DLE,
                     {conn("dia", Family::F, {o}), conn("lhd", Family::F, {d}),
                      conn("box", Family::G, {o}), conn("rhd", Family::G, {d})});
  throw SignatureError("unknown builtin signature '" + name + "'");
}

std::string companion_name(const std::string& base) {
  if (base == "->") return "impl_o";
  if (base == ">-") return "coimpl_o";
  return base + "_o";
}

std::string companion_base(const std::string& name) {
  if (name == "impl_o") return "->";
  if (name == "coimpl_o") return ">-";
  if (name.size() > 2 && name.substr(name.size() - 2) == "_o")
    return name.substr(0, name.size() - 2);
  return "";
}

Signature target_signature(const Signature& sig) {
  if (sig.dialect() == Dialect::BAE)
    throw SignatureError("signature '" + sig.name() + "' is already a BAE signature");
  std::vector<Connective> conns;
  conns.push_back(conn(kDiaGe, Family::F, {Pol::One}));
  conns.push_back(conn(kBoxLe, Family::G, {Pol::One}));
  for (const auto& c : sig.connectives())
    conns.push_back(Connective{companion_name(c.name), c.family,
                               OrderType::ones(static_cast<std::size_t>(c.arity()))});
  return Signature(sig.name() + "_o", Dialect::BAE, std::move(conns));
}

FrameRelationType frame_relation_type(const Connective& c) {
  std::vector<Pol> slots;
  slots.push_back(Pol::One);
  OrderType dual = c.coordTypes.opposite();
  for (int i = 0; i < c.arity(); ++i) slots.push_back(dual[static_cast<std::size_t>(i)]);
  return FrameRelationType{c, OrderType(std::move(slots))};
}

std::vector<FrameRelationType> frame_relation_types(const Signature& sig) {
  std::vector<FrameRelationType> out;
  out.reserve(sig.connectives().size());
  for (const auto& c : sig.connectives()) out.push_back(frame_relation_type(c));
  return out;
}

}  // namespace sahl
