#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "compo/completeness.hpp"
#include "compo/derivation.hpp"
#include "compo/grammar.hpp"
#include "compo/pair_file.hpp"
#include "compo/parser.hpp"
#include "compo/pipeline.hpp"

namespace compo::test {

inline std::string fixture(const std::string& name) {
  return std::string(COMPO_FIXTURES_DIR) + "/" + name;
}

inline CompositionalGrammar paper_example() {
  return load_grammar(read_file(fixture("paper-example.cg")), fixture("paper-example.cg"));
}

inline GrammarFile enfr_file() {
  return load_grammar_file(read_file(fixture("enfr-np.cg")), fixture("enfr-np.cg"));
}

inline PairFile pair(const std::string& name) { return load_pair_file(fixture(name)); }

/// Message of the exception `f` throws, or "" if it returns normally.
template <class F>
std::string error_of(F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

inline bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

inline Utterance words(const std::string& s) { return tokenize(s); }

template <class Tag>
std::vector<std::string> texts(const std::vector<DerivationTree<Tag>>& trees) {
  std::vector<std::string> out;
  for (const auto& t : trees) out.push_back(to_text(t));
  return out;
}

// -- independent oracles ------------------------------------------------------
//
// Straight recursive definitions with no sharing, no saturation and no
// chart; slow but obviously right on fixture-sized grammars.

inline std::vector<std::vector<SynTree>> product(const std::vector<std::vector<SynTree>>& axes) {
  std::vector<std::vector<SynTree>> out{{}};
  for (const auto& axis : axes) {
    std::vector<std::vector<SynTree>> next;
    for (const auto& prefix : out)
      for (const auto& x : axis) {
        auto row = prefix;
        row.push_back(x);
        next.push_back(std::move(row));
      }
    out = std::move(next);
  }
  return out;
}

inline std::vector<std::vector<SemTree>> product(const std::vector<std::vector<SemTree>>& axes) {
  std::vector<std::vector<SemTree>> out{{}};
  for (const auto& axis : axes) {
    std::vector<std::vector<SemTree>> next;
    for (const auto& prefix : out)
      for (const auto& x : axis) {
        auto row = prefix;
        row.push_back(x);
        next.push_back(std::move(row));
      }
    out = std::move(next);
  }
  return out;
}

inline std::set<SynTree> oracle_syn_trees(const CompositionalGrammar& g, const Name& cat,
                                          std::size_t depth) {
  std::set<SynTree> out;
  if (depth == 0) return out;
  for (const auto& [name, b] : g.basics())
    if (b.category == cat) out.insert(SynTree::leaf(name));
  if (depth == 1) return out;
  for (const auto& [name, r] : g.rules()) {
    if (r.type.result != cat) continue;
    std::vector<std::vector<SynTree>> axes;
    for (const auto& a : r.type.args) {
      auto sub = oracle_syn_trees(g, a, depth - 1);
      axes.emplace_back(sub.begin(), sub.end());
    }
    for (auto& kids : product(axes)) out.insert(SynTree::node(name, std::move(kids)));
  }
  return out;
}

inline std::set<SynTree> oracle_all_syn_trees(const CompositionalGrammar& g, std::size_t depth) {
  std::set<SynTree> out;
  for (const auto& c : g.categories()) {
    auto part = oracle_syn_trees(g, c, depth);
    out.insert(part.begin(), part.end());
  }
  return out;
}

inline std::set<SemTree> oracle_sem_trees(const SemanticComponent& sc, const Name& cat,
                                          std::size_t depth) {
  std::set<SemTree> out;
  if (depth == 0) return out;
  for (const auto& [name, m] : sc.meanings())
    if (m.category == cat) out.insert(SemTree::leaf(name));
  if (depth == 1) return out;
  for (const auto& [name, r] : sc.rules()) {
    if (r.type.result != cat) continue;
    std::vector<std::vector<SemTree>> axes;
    for (const auto& a : r.type.args) {
      auto sub = oracle_sem_trees(sc, a, depth - 1);
      axes.emplace_back(sub.begin(), sub.end());
    }
    for (auto& kids : product(axes)) out.insert(SemTree::node(name, std::move(kids)));
  }
  return out;
}

/// Surface string by direct template substitution.
inline Utterance oracle_generate(const CompositionalGrammar& g, const SynTree& t) {
  if (t.is_leaf()) return g.basic(t.name).surface;
  Utterance out;
  for (const auto& item : g.rule(t.name).pattern) {
    if (const auto* tok = std::get_if<Token>(&item)) {
      out.push_back(*tok);
    } else {
      auto sub = oracle_generate(g, t.children[std::get<Placeholder>(item).index - 1]);
      out.insert(out.end(), sub.begin(), sub.end());
    }
  }
  return out;
}

inline std::set<SemTree> oracle_seman(const CompositionalGrammar& g, const SynTree& t) {
  std::set<SemTree> out;
  if (t.is_leaf()) {
    for (const auto& m : g.basic(t.name).meanings) out.insert(SemTree::leaf(m));
    return out;
  }
  std::vector<std::vector<SemTree>> axes;
  for (const auto& c : t.children) {
    auto sub = oracle_seman(g, c);
    axes.emplace_back(sub.begin(), sub.end());
  }
  for (const auto& M : g.rule(t.name).meanings)
    for (auto& kids : product(axes)) out.insert(SemTree::node(M, std::move(kids)));
  return out;
}

inline std::set<SynTree> oracle_semgen(const CompositionalGrammar& g, const SemTree& d) {
  std::set<SynTree> out;
  if (d.is_leaf()) {
    for (const auto& [name, b] : g.basics())
      if (b.meanings.count(d.name)) out.insert(SynTree::leaf(name));
    return out;
  }
  std::vector<std::vector<SynTree>> axes;
  for (const auto& c : d.children) {
    auto sub = oracle_semgen(g, c);
    axes.emplace_back(sub.begin(), sub.end());
  }
  for (const auto& [name, r] : g.rules())
    if (r.meanings.count(d.name))
      for (auto& kids : product(axes)) out.insert(SynTree::node(name, std::move(kids)));
  return out;
}

inline std::set<Utterance> oracle_translate_sem(const CompositionalGrammar& target,
                                                const SemTree& d) {
  std::set<Utterance> out;
  for (const auto& t : oracle_semgen(target, d))
    if (is_cfg_well_formed(target, t)) out.insert(oracle_generate(target, t));
  return out;
}

/// Source-well-formed semantic trees up to `depth`: the seman images of all
/// well-formed source trees. seman preserves depth, so the bound carries over.
inline std::set<SemTree> oracle_source_well_formed(const CompositionalGrammar& g,
                                                   std::size_t depth) {
  std::set<SemTree> out;
  for (const auto& t : oracle_all_syn_trees(g, depth)) {
    auto ds = oracle_seman(g, t);
    out.insert(ds.begin(), ds.end());
  }
  return out;
}

/// Every fixture pair file.
inline std::vector<std::string> pair_fixtures() {
  return {"identity.cgp",      "enfr-np.cgp",     "enfr-np-broken.cgp",
          "enfr-np-masc.cgp", "enfr-np-hom.cgp", "enfr-adj.cgp"};
}

}  // namespace compo::test
