#include "compo/pipeline.hpp"

#include <set>

namespace compo {

namespace {

void check_cap(std::size_t n, std::size_t cap, const char* stage) {
  if (n > cap)
    throw ResourceLimitError(std::string(stage) + " produces more than " + std::to_string(cap) +
                             " trees");
}

// All trees labelled by one of `heads` over one choice from each pool.
template <class Tree>
void combine(const std::vector<Name>& heads, const std::vector<std::vector<Tree>>& pools,
             std::size_t cap, const char* stage, std::vector<Tree>& out) {
  for (const auto& pool : pools)
    if (pool.empty()) return;
  std::size_t per_head = 1;
  for (const auto& pool : pools) {
    if (per_head > cap / pool.size()) per_head = cap + 1;
    else per_head *= pool.size();
  }
  const std::size_t total =
      per_head > cap / std::max<std::size_t>(heads.size(), 1) ? cap + 1 : per_head * heads.size();
  check_cap(out.size() + total, cap, stage);
  for (const auto& head : heads) {
    std::vector<std::size_t> idx(pools.size(), 0);
    while (true) {
      std::vector<Tree> kids;
      kids.reserve(pools.size());
      for (std::size_t i = 0; i < pools.size(); ++i) kids.push_back(pools[i][idx[i]]);
      out.push_back(Tree::node(head, std::move(kids)));
      std::size_t i = pools.size();
      bool more = false;
      while (i > 0) {
        --i;
        if (++idx[i] < pools[i].size()) {
          more = true;
          break;
        }
        idx[i] = 0;
      }
      if (!more) break;
    }
  }
}

void resolve_sem(const SemanticComponent& sc, const SemTree& d) {
  (void)sem_cat(sc, d);
  for (const auto& c : d.children) resolve_sem(sc, c);
}

std::vector<SemTree> seman_rec(const CompositionalGrammar& g, const SynTree& t, std::size_t cap) {
  std::vector<SemTree> out;
  if (t.is_leaf()) {
    for (const auto& m : g.basic(t.name).meanings) out.push_back(SemTree::leaf(m));
    return out;
  }
  const auto& rule = g.rule(t.name);
  std::vector<std::vector<SemTree>> pools;
  for (const auto& c : t.children) pools.push_back(seman_rec(g, c, cap));
  combine(std::vector<Name>(rule.meanings.begin(), rule.meanings.end()), pools, cap, "seman",
          out);
  return out;
}

std::vector<SynTree> semgen_rec(const CompositionalGrammar& g, const SemTree& d, std::size_t cap) {
  std::vector<SynTree> out;
  if (d.is_leaf()) {
    for (const auto& [name, b] : g.basics())
      if (b.meanings.count(d.name)) out.push_back(SynTree::leaf(name));
    return out;
  }
  std::vector<Name> heads;
  for (const auto& [name, r] : g.rules())
    if (r.meanings.count(d.name)) heads.push_back(name);
  if (heads.empty()) return out;
  std::vector<std::vector<SynTree>> pools;
  for (const auto& c : d.children) pools.push_back(semgen_rec(g, c, cap));
  combine(heads, pools, cap, "semgen", out);
  return out;
}

std::set<Name> realizable(const CompositionalGrammar& g, const SemTree& d) {
  std::set<Name> out;
  if (d.is_leaf()) {
    for (const auto& [_, b] : g.basics())
      if (b.meanings.count(d.name)) out.insert(b.category);
    return out;
  }
  std::vector<std::set<Name>> kids;
  for (const auto& c : d.children) {
    kids.push_back(realizable(g, c));
    if (kids.back().empty()) return out;
  }
  for (const auto& [_, r] : g.rules()) {
    if (!r.meanings.count(d.name) || r.arity() != kids.size()) continue;
    bool ok = true;
    for (std::size_t i = 0; ok && i < kids.size(); ++i) ok = kids[i].count(r.type.args[i]) != 0;
    if (ok) out.insert(r.type.result);
  }
  return out;
}

}  // namespace

std::vector<SemTree> seman(const CompositionalGrammar& g, const SynTree& t, std::size_t cap) {
  auto out = seman_rec(g, t, cap);
  canonicalize(out);
  return out;
}

std::vector<SynTree> semgen(const CompositionalGrammar& g, const SemTree& d, std::size_t cap) {
  resolve_sem(g.semantics(), d);
  auto out = semgen_rec(g, d, cap);
  canonicalize(out);
  return out;
}

std::vector<Name> realizable_categories(const CompositionalGrammar& g, const SemTree& d) {
  resolve_sem(g.semantics(), d);
  auto cats = realizable(g, d);
  return {cats.begin(), cats.end()};
}

bool is_source_well_formed(const CompositionalGrammar& source, const SemTree& d) {
  return !realizable_categories(source, d).empty();
}

std::vector<Utterance> translate_sem(const GrammarPair& pair, const SemTree& d, std::size_t cap) {
  std::vector<Utterance> out;
  for (const auto& t : semgen(pair.target(), d, cap))
    if (is_cfg_well_formed(pair.target(), t)) out.push_back(morsyngen(pair.target(), t));
  canonicalize(out);
  return out;
}

TranslationTrace translate(const GrammarPair& pair, const Utterance& e,
                           const TranslateOptions& options) {
  TranslationTrace trace;
  trace.source_utterance = e;
  trace.source_trees = morsynan(pair.source(), e, options.parse);

  std::vector<SemTree> meanings;
  for (const auto& t : trace.source_trees) {
    auto ds = seman(pair.source(), t, options.generation_cap);
    meanings.insert(meanings.end(), ds.begin(), ds.end());
    check_cap(meanings.size(), options.generation_cap, "seman");
  }
  canonicalize(meanings);

  std::vector<SynTree> targets;
  for (auto& d : meanings) {
    auto ts = semgen(pair.target(), d, options.generation_cap);
    targets.insert(targets.end(), ts.begin(), ts.end());
    check_cap(targets.size(), options.generation_cap, "semgen");
    const bool typed = is_sem_well_typed(pair.semantics(), d);
    trace.sem_trees.push_back({std::move(d), typed});
  }
  canonicalize(targets);

  for (auto& t : targets) {
    const bool ok = is_cfg_well_formed(pair.target(), t);
    if (ok) trace.target_utterances.push_back(morsyngen(pair.target(), t));
    trace.target_trees.push_back({std::move(t), ok});
  }
  canonicalize(trace.target_utterances);
  return trace;
}

}  // namespace compo
