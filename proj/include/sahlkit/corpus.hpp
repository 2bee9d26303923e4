#ifndef SAHLKIT_CORPUS_HPP
#define SAHLKIT_CORPUS_HPP

#include <string>
#include <vector>

#include "sahlkit/gentree.hpp"

namespace sahl {

/// One corpus line: a signature, an inequality, and expectations.
/// Line format (pipe-separated, # comments):
///   <sig> | <inequality> | <directive> [| <directive>...]
/// with directives
///   S+ p=1,q=d        Sahlqvist at the assignment
///   S- p=1,q=d        not Sahlqvist at the assignment
///   S- *              no Sahlqvist witness at all
///   I+ p=1,q=d : q<p  inductive at the assignment with the given order
///   I- *              no inductive witness at all
/// and <sig> one of: builtin name, target:<builtin>, or a path to a
/// signature JSON file.
struct CorpusEntry {
  std::string sigSpec;
  std::string ineqText;
  std::vector<std::string> directives;
  int line = 0;
};

struct CorpusOutcome {
  CorpusEntry entry;
  bool ok = false;
  std::vector<std::string> failures;
};

std::vector<CorpusEntry> parse_corpus(const std::string& text);

Signature resolve_signature(const std::string& spec);

CorpusOutcome run_entry(const CorpusEntry& e);

struct CorpusSummary {
  std::vector<CorpusOutcome> outcomes;
  int passed = 0, failed = 0;
};

CorpusSummary run_corpus(const std::string& text);

Epsilon parse_eps(const std::string& spec, const std::vector<std::string>& vars);

}  // namespace sahl

#endif
