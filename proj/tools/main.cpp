#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sahlkit/algebra.hpp"
#include "sahlkit/corpus.hpp"
#include "sahlkit/correspond.hpp"

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json eps_json(const sahl::Epsilon& eps) {
  json j = json::object();
  for (const auto& [v, p] : eps) j[v] = std::string(1, sahl::pol_char(p));
  return j;
}

json witness_json(const sahl::Witness& w) {
  json j;
  j["eps"] = eps_json(w.eps);
  if (w.omega) {
    auto edges = json::array();
    for (const auto& [a, b] : w.omega->edges()) edges.push_back({a, b});
    j["omega_edges"] = edges;
  }
  return j;
}

int cmd_classify(const std::string& sigSpec, const std::string& ineqText,
                 const std::string& mode, bool asJson, int maxVars) {
  sahl::Signature sig = sahl::resolve_signature(sigSpec);
  sahl::Inequality ineq = sahl::parse_inequality(ineqText, sig);

  sahl::ClassificationReport sahlRep, indRep;
  bool wantS = mode == "sahlqvist" || mode == "both";
  bool wantI = mode == "inductive" || mode == "both";
  if (wantS) sahlRep = sahl::find_witnesses(ineq, sahl::ClassifyMode::Sahlqvist, maxVars);
  if (wantI) indRep = sahl::find_witnesses(ineq, sahl::ClassifyMode::Inductive, maxVars);

  std::string verdict = "negative";
  if (wantS && sahlRep.positive()) verdict = "sahlqvist";
  else if (wantI && indRep.positive()) verdict = "inductive";

  if (asJson) {
    json out;
    out["verdict"] = verdict;
    auto ws = json::array();
    if (wantS)
      for (const auto& w : sahlRep.witnesses) {
        json ww = witness_json(w);
        ww["kind"] = "sahlqvist";
        ws.push_back(ww);
      }
    if (wantI)
      for (const auto& w : indRep.witnesses) {
        json ww = witness_json(w);
        ww["kind"] = "inductive";
        ws.push_back(ww);
      }
    out["witnesses"] = ws;
    auto diag = json::array();
    for (const auto& d : (wantI ? indRep : sahlRep).diagnostics) diag.push_back(d);
    out["diagnostics"] = diag;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "verdict: " << verdict << "\n";
    if (wantS) {
      std::cout << "sahlqvist witnesses (" << sahlRep.witnesses.size() << "):\n";
      for (const auto& w : sahlRep.witnesses)
        std::cout << "  eps " << sahl::eps_to_string(w.eps, sahlRep.vars) << "\n";
    }
    if (wantI) {
      std::cout << "inductive witnesses (" << indRep.witnesses.size() << "):\n";
      for (const auto& w : indRep.witnesses)
        std::cout << "  eps " << sahl::eps_to_string(w.eps, indRep.vars) << "  omega "
                  << w.omega->to_string() << "\n";
    }
    if (verdict == "negative") {
      for (const auto& d : (wantI ? indRep : sahlRep).diagnostics)
        std::cout << "  " << d << "\n";
    }
  }
  return 0;
}

int cmd_translate(const std::string& sigSpec, const std::string& text,
                  const std::string& epsSpec, bool noPrefix, const std::string& variant) {
  if (!variant.empty()) {
    sahl::GmtVariant v;
    if (variant == "tau") v = sahl::GmtVariant::Tau;
    else if (variant == "sigma") v = sahl::GmtVariant::Sigma;
    else if (variant == "tau-prime") v = sahl::GmtVariant::TauPrime;
    else if (variant == "sigma-prime") v = sahl::GmtVariant::SigmaPrime;
    else throw CLI::ValidationError("--variant", "unknown variant '" + variant + "'");
    std::string sigName = (v == sahl::GmtVariant::Tau) ? "intuitionistic"
                          : (v == sahl::GmtVariant::Sigma) ? "co-intuitionistic"
                                                           : "bi-intuitionistic";
    sahl::Signature sig = sahl::builtin_signature(sigName);
    auto parsed = sahl::parse_any(text, sig);
    if (std::holds_alternative<sahl::Inequality>(parsed)) {
      const auto& in = std::get<sahl::Inequality>(parsed);
      std::cout << sahl::print(sahl::Inequality{sahl::gmt(in.lhs, v), sahl::gmt(in.rhs, v)})
                << "\n";
    } else {
      std::cout << sahl::print(sahl::gmt(std::get<sahl::FormulaPtr>(parsed), v)) << "\n";
    }
    return 0;
  }

  sahl::Signature sig = sahl::resolve_signature(sigSpec);
  sahl::Signature tgt = sahl::target_signature(sig);
  auto parsed = sahl::parse_any(text, sig);
  sahl::TranslateOptions opts;
  opts.s4Prefix = !noPrefix;
  std::vector<std::string> vars =
      std::holds_alternative<sahl::Inequality>(parsed)
          ? sahl::variables(std::get<sahl::Inequality>(parsed))
          : sahl::variables(std::get<sahl::FormulaPtr>(parsed));
  sahl::Epsilon eps = sahl::parse_eps(epsSpec, vars);
  if (std::holds_alternative<sahl::Inequality>(parsed))
    std::cout << sahl::print(
                     sahl::tau_eps(std::get<sahl::Inequality>(parsed), eps, sig, tgt, opts))
              << "\n";
  else
    std::cout << sahl::print(
                     sahl::tau_eps(std::get<sahl::FormulaPtr>(parsed), eps, sig, tgt, opts))
              << "\n";
  return 0;
}

int cmd_modelcheck(const std::string& framePath, const std::string& sigSpec,
                   const std::string& ineqText, const std::string& kind) {
  sahl::Signature sig = sahl::resolve_signature(sigSpec);
  sahl::Frame fr = sahl::load_frame_json(slurp(framePath));
  std::vector<std::string> bad = sahl::validate_frame(fr, sig);
  if (!bad.empty()) {
    for (const auto& b : bad) std::cerr << "frame: " << b << "\n";
    return 2;
  }
  sahl::Inequality ineq = sahl::parse_inequality(ineqText, sig);
  sahl::ValKind k =
      kind == "classical" ? sahl::ValKind::Arbitrary : sahl::ValKind::Persistent;
  sahl::ValidityResult r = sahl::is_valid(ineq, fr, k);
  if (r.valid) {
    std::cout << "valid\n";
    return 0;
  }
  std::cout << "invalid; counterexample valuation:";
  for (const auto& [v, m] : r.counterexample->v) std::cout << " " << v << "=" << m;
  std::cout << "\n";
  return 1;
}

int cmd_transfer(const std::string& sigSpec, const std::string& ineqText,
                 const std::string& epsSpec, int maxWorlds) {
  sahl::Signature sig = sahl::resolve_signature(sigSpec);
  sahl::Signature tgt = sahl::target_signature(sig);
  sahl::Inequality ineq = sahl::parse_inequality(ineqText, sig);
  std::vector<std::string> vars = sahl::variables(ineq);

  std::vector<sahl::Epsilon> epsList;
  if (!epsSpec.empty()) {
    epsList.push_back(sahl::parse_eps(epsSpec, vars));
  } else {
    sahl::ClassificationReport rep =
        sahl::find_witnesses(ineq, sahl::ClassifyMode::Inductive);
    for (const auto& w : rep.witnesses) epsList.push_back(w.eps);
    if (epsList.empty())
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << vars.size()); ++bits) {
        sahl::Epsilon eps;
        for (std::size_t i = 0; i < vars.size(); ++i)
          eps[vars[i]] = (bits >> i) & 1 ? sahl::Pol::Dual : sahl::Pol::One;
        epsList.push_back(eps);
      }
  }

  long frames = 0, disagreements = 0;
  for (int n = 1; n <= maxWorlds; ++n)
    sahl::for_each_frame(sig, n, [&](const sahl::Frame& fr) {
      ++frames;
      for (const auto& eps : epsList) {
        sahl::TransferReport rep = sahl::transfer_check(ineq, eps, fr, sig, tgt);
        if (!rep.agree) {
          ++disagreements;
          std::cout << "DISAGREEMENT eps " << sahl::eps_to_string(eps, vars) << " frame "
                    << sahl::save_frame_json(fr) << "\n";
        }
      }
    });
  std::cout << (disagreements == 0 ? "PASS" : "FAIL") << ": " << frames
            << " frames checked, " << epsList.size() << " polarity assignment(s), "
            << disagreements << " disagreement(s)\n";
  return disagreements == 0 ? 0 : 1;
}

int cmd_correspond(const std::string& sigSpec, const std::string& ineqText,
                   const std::string& epsSpec, int verifyWorlds, bool sexpr, bool trace) {
  sahl::Signature sig = sahl::resolve_signature(sigSpec);
  sahl::Inequality ineq = sahl::parse_inequality(ineqText, sig);
  std::optional<sahl::Epsilon> eps;
  if (!epsSpec.empty()) eps = sahl::parse_eps(epsSpec, sahl::variables(ineq));
  sahl::Correspondent c = sahl::correspondent(ineq, sig, eps);
  if (trace)
    for (const auto& t : c.trace) std::cout << "  ; " << t << "\n";
  std::cout << "eps: " << sahl::eps_to_string(c.eps, sahl::variables(ineq)) << "\n";
  std::cout << "fo: " << (sexpr ? sahl::to_sexpr(c.fo) : sahl::to_infix(c.fo)) << "\n";
  if (verifyWorlds > 0) {
    sahl::Limits lim = sahl::default_limits();
    lim.maxWorlds = std::max(lim.maxWorlds, verifyWorlds);
    sahl::OracleResult r = sahl::oracle_equivalence(ineq, sig, c.fo, verifyWorlds, lim);
    if (r.verdict == sahl::OracleVerdict::Verified) {
      std::cout << "oracle: Verified on " << r.framesChecked << " frames (up to "
                << verifyWorlds << " worlds)\n";
    } else {
      std::cout << "oracle: REFUTED on frame " << sahl::save_frame_json(*r.refutingFrame)
                << "\n";
      return 1;
    }
  }
  return 0;
}

int cmd_algebra_check(const std::string& sigSpec, const std::string& framePath) {
  sahl::Signature sig = sahl::resolve_signature(sigSpec);
  sahl::Frame fr = sahl::load_frame_json(slurp(framePath));
  std::vector<std::string> bad = sahl::validate_frame(fr, sig);
  if (!bad.empty()) {
    for (const auto& b : bad) std::cerr << "frame: " << b << "\n";
    return 2;
  }
  sahl::FiniteAlgebra a = sahl::complex_algebra(fr, sig);
  sahl::Companion comp = sahl::boolean_companion(fr, sig);
  bool ok = true;
  for (const auto& m : sahl::validate_algebra(a)) {
    std::cout << "complex algebra: " << m << "\n";
    ok = false;
  }
  sahl::CheckReport adj = sahl::adjunction_check(a, comp.algebra, comp.emb);
  sahl::CheckReport s4 = sahl::s4_check(a, comp.algebra, comp.emb);
  sahl::CheckReport dia = sahl::check_diagrams(a, comp.algebra, comp.emb, sig);
  for (const auto* rep : {&adj, &s4, &dia})
    for (const auto& m : rep->failures) {
      std::cout << m << "\n";
      ok = false;
    }
  std::cout << (ok ? "all checks passed" : "FAILED") << " (carrier " << a.size
            << ", companion " << comp.algebra.size << ")\n";
  return ok ? 0 : 1;
}

int cmd_corpus(const std::string& path) {
  sahl::CorpusSummary sum = sahl::run_corpus(slurp(path));
  for (const auto& o : sum.outcomes) {
    std::cout << (o.ok ? "PASS" : "FAIL") << "  line " << o.entry.line << ": "
              << o.entry.ineqText << "\n";
    for (const auto& f : o.failures) std::cout << "      " << f << "\n";
  }
  std::cout << sum.passed << " passed, " << sum.failed << " failed\n";
  return sum.failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classifier, translator, model checker and correspondence engine "
               "for inequalities over distributive lattice expansions"};
  app.require_subcommand(1);

  std::string sigSpec = "intuitionistic", ineqText, epsSpec, mode = "both";
  std::string framePath, kind = "persistent", variant, corpusPath;
  bool asJson = false, noPrefix = false, sexpr = false, trace = false;
  int maxWorlds = 3, verifyWorlds = 0, maxVars = 12;

  auto* classify = app.add_subcommand("classify", "classify an inequality");
  classify->add_option("--sig", sigSpec, "signature (builtin, target:<name>, or file)");
  classify->add_option("--ineq", ineqText, "inequality")->required();
  classify->add_option("--mode", mode, "sahlqvist | inductive | both");
  classify->add_option("--max-vars", maxVars, "variable bound for the witness sweep");
  classify->add_flag("--json", asJson, "JSON report");

  auto* translate = app.add_subcommand("translate", "polarity-parametric translation");
  translate->add_option("--sig", sigSpec, "source signature");
  translate->add_option("--ineq,--formula", ineqText, "input")->required();
  translate->add_option("--eps", epsSpec, "polarities, e.g. p=1,q=d");
  translate->add_flag("--no-s4-prefix", noPrefix, "omit diage/boxle prefixes on applications");
  translate->add_option("--variant", variant, "tau | sigma | tau-prime | sigma-prime");

  auto* modelcheck = app.add_subcommand("modelcheck", "check an inequality on a frame");
  modelcheck->add_option("--frame", framePath, "frame JSON file")->required();
  modelcheck->add_option("--sig", sigSpec, "signature");
  modelcheck->add_option("--ineq", ineqText, "inequality")->required();
  modelcheck->add_option("--kind", kind, "persistent | classical");

  auto* transfer = app.add_subcommand("transfer-check", "validity transfer sweep");
  transfer->add_option("--sig", sigSpec, "signature");
  transfer->add_option("--ineq", ineqText, "inequality")->required();
  transfer->add_option("--eps", epsSpec, "single polarity assignment (default: witnesses)");
  transfer->add_option("--max-worlds", maxWorlds, "frame size bound");

  auto* correspond = app.add_subcommand("correspond", "first-order correspondent");
  correspond->add_option("--sig", sigSpec, "signature");
  correspond->add_option("--ineq", ineqText, "inequality")->required();
  correspond->add_option("--eps", epsSpec, "polarity assignment (default: search)");
  correspond->add_option("--verify", verifyWorlds, "verify against the oracle up to N worlds");
  correspond->add_flag("--sexpr", sexpr, "print the sentence as an s-expression");
  correspond->add_flag("--trace", trace, "print the reduction trace");

  auto* algebra = app.add_subcommand("algebra", "finite algebra checks");
  auto* demoMix = algebra->add_subcommand("demo-mix", "the diagram-vs-mix counterexample");
  auto* algCheck = algebra->add_subcommand("check", "companion checks for a frame");
  algCheck->add_option("--sig", sigSpec, "signature");
  algCheck->add_option("--frame", framePath, "frame JSON file")->required();

  auto* corpus = app.add_subcommand("corpus", "batch corpus runner");
  auto* corpusRun = corpus->add_subcommand("run", "run a corpus file");
  corpusRun->add_option("file", corpusPath, "corpus file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (classify->parsed()) return cmd_classify(sigSpec, ineqText, mode, asJson, maxVars);
    if (translate->parsed()) return cmd_translate(sigSpec, ineqText, epsSpec, noPrefix, variant);
    if (modelcheck->parsed()) return cmd_modelcheck(framePath, sigSpec, ineqText, kind);
    if (transfer->parsed()) return cmd_transfer(sigSpec, ineqText, epsSpec, maxWorlds);
    if (correspond->parsed())
      return cmd_correspond(sigSpec, ineqText, epsSpec, verifyWorlds, sexpr, trace);
    if (algebra->parsed()) {
      if (demoMix->parsed()) {
        sahl::MixReport rep = sahl::mix_counterexample();
        std::cout << rep.render();
        return rep.ok ? 0 : 1;
      }
      if (algCheck->parsed()) return cmd_algebra_check(sigSpec, framePath);
      std::cerr << "algebra: need a subcommand (demo-mix | check)\n";
      return 2;
    }
    if (corpus->parsed()) {
      if (corpusRun->parsed()) return cmd_corpus(corpusPath);
      std::cerr << "corpus: need a subcommand (run)\n";
      return 2;
    }
  } catch (const sahl::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const sahl::UnsupportedReduction& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
