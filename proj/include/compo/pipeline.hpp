#pragma once

#include <vector>

#include "compo/derivation.hpp"
#include "compo/grammar.hpp"
#include "compo/parser.hpp"

namespace compo {

/// Default bound on the trees produced by one seman/semgen call.
inline constexpr std::size_t kDefaultGenerationCap = 1'000'000;

/// Semantic analysis: every semantic tree obtained by replacing each leaf b
/// with some m in [[b]] and each node R with some M in [[R]]. Same geometry
/// as `t`. Canonical order.
std::vector<SemTree> seman(const CompositionalGrammar& g, const SynTree& t,
                           std::size_t cap = kDefaultGenerationCap);

/// Semantic generation: every syntactic tree of `g` whose labels interpret to
/// the labels of `d`. Includes ill-formed trees; an empty result is legal.
std::vector<SynTree> semgen(const CompositionalGrammar& g, const SemTree& d,
                            std::size_t cap = kDefaultGenerationCap);

struct FlaggedSemTree {
  SemTree tree;
  bool well_typed;
};

struct FlaggedSynTree {
  SynTree tree;
  bool well_formed;
};

/// Every stage of one compositional translation.
struct TranslationTrace {
  Utterance source_utterance;
  std::vector<SynTree> source_trees;
  std::vector<FlaggedSemTree> sem_trees;
  std::vector<FlaggedSynTree> target_trees;
  std::vector<Utterance> target_utterances;
};

struct TranslateOptions {
  ParseOptions parse;
  std::size_t generation_cap = kDefaultGenerationCap;
};

/// morsynan -> seman -> semgen -> CFG-well-formedness filter -> morsyngen.
/// Target utterances are deduplicated and sorted.
TranslationTrace translate(const GrammarPair& pair, const Utterance& e,
                           const TranslateOptions& options = {});

/// The target utterances of the well-formed trees in semgen(target, d).
/// An empty result marks `d` as an incompleteness witness.
std::vector<Utterance> translate_sem(const GrammarPair& pair, const SemTree& d,
                                     std::size_t cap = kDefaultGenerationCap);

/// Categories C such that some CFG-well-formed tree of category C lies in
/// semgen(g, d). Computed bottom-up without materializing semgen.
std::vector<Name> realizable_categories(const CompositionalGrammar& g, const SemTree& d);

/// Whether `d` corresponds to some CFG-well-formed tree of `source`, i.e.
/// d is in seman(source, t) for a well-formed t.
bool is_source_well_formed(const CompositionalGrammar& source, const SemTree& d);

}  // namespace compo
