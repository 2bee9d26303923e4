#include "sahlkit/corpus.hpp"

#include <fstream>
#include <sstream>

namespace sahl {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace

Epsilon parse_eps(const std::string& spec, const std::vector<std::string>& vars) {
  Epsilon eps;
  for (const std::string& part : split(spec, ',')) {
    if (part.empty()) continue;
    std::size_t eq = part.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("bad polarity entry '" + part + "' (want p=1 or p=d)");
    std::string v = trim(part.substr(0, eq));
    std::string p = trim(part.substr(eq + 1));
    if (p == "1")
      eps[v] = Pol::One;
    else if (p == "d")
      eps[v] = Pol::Dual;
    else
      throw std::invalid_argument("bad polarity '" + p + "' for variable '" + v + "'");
  }
  for (const auto& v : vars)
    if (!eps.count(v))
      throw std::invalid_argument("polarity assignment misses variable '" + v + "'");
  return eps;
}

std::vector<CorpusEntry> parse_corpus(const std::string& text) {
  std::vector<CorpusEntry> out;
  std::istringstream is(text);
  std::string line;
  int lineNo = 0;
  while (std::getline(is, line)) {
    ++lineNo;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> parts = split(t, '|');
    if (parts.size() < 3)
      throw std::invalid_argument("corpus line " + std::to_string(lineNo) +
                                  ": want sig | ineq | directive...");
    CorpusEntry e;
    e.sigSpec = parts[0];
    e.ineqText = parts[1];
    e.directives.assign(parts.begin() + 2, parts.end());
    e.line = lineNo;
    out.push_back(std::move(e));
  }
  return out;
}

Signature resolve_signature(const std::string& spec) {
  if (spec.rfind("target:", 0) == 0)
    return target_signature(resolve_signature(spec.substr(7)));
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
    std::ifstream in(spec);
    if (!in) throw std::invalid_argument("cannot open signature file '" + spec + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_signature(buf.str());
  }
  return builtin_signature(spec);
}

namespace {

std::set<std::pair<std::string, std::string>> parse_omega_edges(const std::string& spec) {
  std::set<std::pair<std::string, std::string>> edges;
  for (const std::string& part : split(spec, '&')) {
    if (part.empty()) continue;
    std::size_t lt = part.find('<');
    if (lt == std::string::npos)
      throw std::invalid_argument("bad dependency '" + part + "' (want q<p)");
    edges.insert({trim(part.substr(0, lt)), trim(part.substr(lt + 1))});
  }
  return edges;
}

void run_directive(const std::string& d, const Inequality& ineq,
                   const std::vector<std::string>& vars, CorpusOutcome& out) {
  std::string dt = trim(d);
  if (dt.size() < 2) throw std::invalid_argument("empty directive");
  std::string head = dt.substr(0, 2);
  std::string rest = trim(dt.substr(2));

  auto fail = [&](const std::string& why) { out.failures.push_back(dt + ": " + why); };

  if (head == "S+" || head == "S-") {
    if (rest == "*") {
      ClassificationReport rep = find_witnesses(ineq, ClassifyMode::Sahlqvist);
      bool want = head == "S+";
      if (rep.positive() != want)
        fail(want ? "expected some Sahlqvist witness" : "expected no Sahlqvist witness");
      return;
    }
    Epsilon eps = parse_eps(rest, vars);
    CheckResult r = is_sahlqvist(ineq, eps);
    if (r.ok != (head == "S+"))
      fail(r.ok ? "unexpectedly Sahlqvist"
                : "not Sahlqvist: " + (r.diagnostics.empty() ? "" : r.diagnostics.front()));
    return;
  }
  if (head == "I+" || head == "I-") {
    if (rest == "*") {
      ClassificationReport rep = find_witnesses(ineq, ClassifyMode::Inductive);
      bool want = head == "I+";
      if (rep.positive() != want)
        fail(want ? "expected some inductive witness" : "expected no inductive witness");
      return;
    }
    std::string epsPart = rest, omegaPart;
    std::size_t colon = rest.find(':');
    if (colon != std::string::npos) {
      epsPart = trim(rest.substr(0, colon));
      omegaPart = trim(rest.substr(colon + 1));
    }
    Epsilon eps = parse_eps(epsPart, vars);
    if (head == "I+") {
      auto omega = DependencyOrder::from_edges(parse_omega_edges(omegaPart));
      if (!omega) {
        fail("given dependency order is cyclic");
        return;
      }
      CheckResult r = is_inductive(ineq, eps, *omega);
      if (!r.ok)
        fail("not inductive: " + (r.diagnostics.empty() ? "" : r.diagnostics.front()));
    } else {
      // No dependency order may work for this assignment.
      ClassificationReport rep = find_witnesses(ineq, ClassifyMode::Inductive);
      for (const auto& w : rep.witnesses)
        if (w.eps == eps) {
          fail("unexpectedly inductive with " + w.omega->to_string());
          return;
        }
    }
    return;
  }
  throw std::invalid_argument("unknown directive '" + dt + "'");
}

}  // namespace

CorpusOutcome run_entry(const CorpusEntry& e) {
  CorpusOutcome out;
  out.entry = e;
  try {
    Signature sig = resolve_signature(e.sigSpec);
    Inequality ineq = parse_inequality(e.ineqText, sig);
    std::vector<std::string> vars = variables(ineq);
    for (const auto& d : e.directives) run_directive(d, ineq, vars, out);
  } catch (const std::exception& ex) {
    out.failures.push_back(std::string("error: ") + ex.what());
  }
  out.ok = out.failures.empty();
  return out;
}

CorpusSummary run_corpus(const std::string& text) {
  CorpusSummary sum;
  for (const CorpusEntry& e : parse_corpus(text)) {
    CorpusOutcome o = run_entry(e);
    (o.ok ? sum.passed : sum.failed)++;
    sum.outcomes.push_back(std::move(o));
  }
  return sum;
}

}  // namespace sahl
