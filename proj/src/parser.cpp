// Earley recognition over the rewrite-rule view of a grammar, followed by
// extraction of every derivation tree from the completed-item chart.
//
// Each basic expression `b : B = "t1" "t2"` becomes B -> t1 t2 and each rule
// becomes result -> pattern with placeholders replaced by their categories.
// Surfaces are non-empty and unary terminal-free cycles are rejected at load
// time, so there are no epsilon productions and every span has finitely many
// derivations.

#include "compo/parser.hpp"

#include <map>
#include <set>
#include <unordered_set>

namespace compo {

namespace {

struct Symbol {
  bool terminal;
  const std::string* text;  // token or category
};

struct Production {
  const Name* lhs;
  const Name* name;
  bool is_basic;
  std::vector<Symbol> rhs;
  std::vector<std::size_t> arg_of;  // rhs position -> 0-based argument index (nonterminals)
};

struct Item {
  std::uint32_t production;
  std::uint32_t dot;
  std::uint32_t origin;
  bool operator==(const Item&) const = default;
};

struct ItemHash {
  std::size_t operator()(const Item& i) const noexcept {
    return (std::size_t{i.production} * 1000003u + i.dot) * 1000003u + i.origin;
  }
};

// Spans are keyed as (production or category, start, end).
using Span = std::tuple<std::size_t, std::size_t, std::size_t>;

class Chart {
 public:
  Chart(const CompositionalGrammar& g, const Utterance& e) : g_(g), e_(e) {
    for (const auto& [name, b] : g.basics()) {
      Production p{&b.category, &name, true, {}, {}};
      for (const auto& tok : b.surface) p.rhs.push_back({true, &tok});
      p.arg_of.assign(p.rhs.size(), 0);
      prods_.push_back(std::move(p));
    }
    for (const auto& [name, r] : g.rules()) {
      Production p{&r.type.result, &name, false, {}, {}};
      for (const auto& item : r.pattern) {
        if (const auto* tok = std::get_if<Token>(&item)) {
          p.rhs.push_back({true, tok});
          p.arg_of.push_back(0);
        } else {
          const auto idx = std::get<Placeholder>(item).index - 1;
          p.rhs.push_back({false, &r.type.args[idx]});
          p.arg_of.push_back(idx);
        }
      }
      prods_.push_back(std::move(p));
    }
    std::size_t id = 0;
    for (const auto& c : g.categories()) cat_id_[c] = id++;
    for (std::size_t p = 0; p < prods_.size(); ++p)
      by_lhs_[cat_id_.at(*prods_[p].lhs)].push_back(p);
    recognize();
  }

  std::size_t count(std::size_t cat, std::size_t i, std::size_t j, std::size_t cap) {
    if (!cat_spans_.count({cat, i, j})) return 0;
    auto key = Span{cat, i, j};
    if (auto it = count_memo_.find(key); it != count_memo_.end()) return it->second;
    std::size_t total = 0;
    for (auto p : by_lhs_[cat]) {
      if (!prod_spans_.count({p, i, j})) continue;
      for (const auto& split : splits(p, i, j)) {
        std::size_t n = 1;
        for (std::size_t k = 0; k < split.size(); ++k) {
          const auto& sym = prods_[p].rhs[split[k].first];
          if (sym.terminal) continue;
          n = sat_mul(n, count(cat_id_.at(*sym.text), split[k].second.first,
                               split[k].second.second, cap),
                      cap);
        }
        total = std::min(total + n, cap + 1);
      }
    }
    count_memo_[key] = total;
    return total;
  }

  const std::vector<SynTree>& trees(std::size_t cat, std::size_t i, std::size_t j) {
    auto key = Span{cat, i, j};
    if (auto it = tree_memo_.find(key); it != tree_memo_.end()) return it->second;
    std::vector<SynTree> out;
    if (cat_spans_.count(key)) {
      for (auto p : by_lhs_[cat]) {
        if (!prod_spans_.count({p, i, j})) continue;
        const auto& prod = prods_[p];
        if (prod.is_basic) {
          out.push_back(SynTree::leaf(*prod.name));
          continue;
        }
        for (const auto& split : splits(p, i, j)) {
          // Children per argument index, each a list of alternatives.
          std::vector<const std::vector<SynTree>*> pools(g_.rule(*prod.name).arity());
          for (const auto& [pos, span] : split) {
            const auto& sym = prod.rhs[pos];
            if (sym.terminal) continue;
            pools[prod.arg_of[pos]] = &trees(cat_id_.at(*sym.text), span.first, span.second);
          }
          product(*prod.name, pools, out);
        }
      }
    }
    return tree_memo_[key] = std::move(out);
  }

  std::size_t category_id(const Name& c) const { return cat_id_.at(c); }
  const std::map<Name, std::size_t>& categories() const { return cat_id_; }

 private:
  using Split = std::vector<std::pair<std::size_t, std::pair<std::size_t, std::size_t>>>;

  static std::size_t sat_mul(std::size_t a, std::size_t b, std::size_t cap) {
    if (a == 0 || b == 0) return 0;
    if (a > (cap + 1) / b) return cap + 1;
    return std::min(a * b, cap + 1);
  }

  static void product(const Name& rule, const std::vector<const std::vector<SynTree>*>& pools,
                      std::vector<SynTree>& out) {
    for (const auto* pool : pools)
      if (pool->empty()) return;
    std::vector<std::size_t> idx(pools.size(), 0);
    while (true) {
      std::vector<SynTree> kids;
      for (std::size_t k = 0; k < pools.size(); ++k) kids.push_back((*pools[k])[idx[k]]);
      out.push_back(SynTree::node(rule, std::move(kids)));
      std::size_t k = pools.size();
      while (true) {
        if (k == 0) return;
        --k;
        if (++idx[k] < pools[k]->size()) break;
        idx[k] = 0;
      }
    }
  }

  // Every way of laying the rhs of production p over tokens [i, j) using
  // recognized spans. Each split lists (rhs position, token span).
  std::vector<Split> splits(std::size_t p, std::size_t i, std::size_t j) const {
    std::vector<Split> out;
    Split current;
    extend(prods_[p], 0, i, j, current, out);
    return out;
  }

  void extend(const Production& prod, std::size_t r, std::size_t pos, std::size_t j,
              Split& current, std::vector<Split>& out) const {
    const auto remaining = prod.rhs.size() - r;
    if (remaining == 0) {
      if (pos == j) out.push_back(current);
      return;
    }
    if (j - pos < remaining) return;
    const auto& sym = prod.rhs[r];
    if (sym.terminal) {
      if (e_[pos] != *sym.text) return;
      current.push_back({r, {pos, pos + 1}});
      extend(prod, r + 1, pos + 1, j, current, out);
      current.pop_back();
      return;
    }
    const auto cat = cat_id_.at(*sym.text);
    for (std::size_t end = pos + 1; end + (remaining - 1) <= j; ++end) {
      if (!cat_spans_.count({cat, pos, end})) continue;
      current.push_back({r, {pos, end}});
      extend(prod, r + 1, end, j, current, out);
      current.pop_back();
    }
  }

  void recognize() {
    const auto n = e_.size();
    std::vector<std::vector<Item>> sets(n + 1);
    std::vector<std::unordered_set<Item, ItemHash>> seen(n + 1);
    auto add = [&](std::size_t k, Item it) {
      if (seen[k].insert(it).second) sets[k].push_back(it);
    };
    // No distinguished start symbol: predict every production at 0.
    for (std::size_t p = 0; p < prods_.size(); ++p)
      add(0, {static_cast<std::uint32_t>(p), 0, 0});

    for (std::size_t k = 0; k <= n; ++k) {
      std::set<std::size_t> predicted;
      for (std::size_t idx = 0; idx < sets[k].size(); ++idx) {
        const Item it = sets[k][idx];
        const auto& prod = prods_[it.production];
        if (it.dot == prod.rhs.size()) {
          const auto lhs = cat_id_.at(*prod.lhs);
          prod_spans_.insert({it.production, it.origin, k});
          cat_spans_.insert({lhs, it.origin, k});
          // No epsilon productions, so origin < k and sets[origin] is final.
          for (std::size_t w = 0; w < sets[it.origin].size(); ++w) {
            const Item waiting = sets[it.origin][w];
            const auto& wp = prods_[waiting.production];
            if (waiting.dot < wp.rhs.size() && !wp.rhs[waiting.dot].terminal &&
                cat_id_.at(*wp.rhs[waiting.dot].text) == lhs)
              add(k, {waiting.production, waiting.dot + 1, waiting.origin});
          }
          continue;
        }
        const auto& sym = prod.rhs[it.dot];
        if (sym.terminal) {
          if (k < n && e_[k] == *sym.text) add(k + 1, {it.production, it.dot + 1, it.origin});
        } else {
          const auto cat = cat_id_.at(*sym.text);
          if (predicted.insert(cat).second)
            for (auto p : by_lhs_[cat]) add(k, {static_cast<std::uint32_t>(p), 0,
                                                static_cast<std::uint32_t>(k)});
        }
      }
    }
  }

  const CompositionalGrammar& g_;
  const Utterance& e_;
  std::vector<Production> prods_;
  std::map<Name, std::size_t> cat_id_;
  std::map<std::size_t, std::vector<std::size_t>> by_lhs_;
  std::set<Span> prod_spans_;
  std::set<Span> cat_spans_;
  std::map<Span, std::size_t> count_memo_;
  std::map<Span, std::vector<SynTree>> tree_memo_;
};

void generate(const CompositionalGrammar& g, const SynTree& t, Utterance& out) {
  if (t.is_leaf()) {
    const auto& surface = g.basic(t.name).surface;
    out.insert(out.end(), surface.begin(), surface.end());
    return;
  }
  for (const auto& item : g.rule(t.name).pattern) {
    if (const auto* tok = std::get_if<Token>(&item))
      out.push_back(*tok);
    else
      generate(g, t.children[std::get<Placeholder>(item).index - 1], out);
  }
}

}  // namespace

std::vector<SynTree> morsynan(const CompositionalGrammar& g, const Utterance& e,
                              const ParseOptions& options) {
  if (options.category && !g.has_category(*options.category))
    throw UnknownNameError("unknown syntactic category '" + *options.category + "'");
  if (e.empty()) return {};
  Chart chart(g, e);
  std::vector<std::size_t> wanted;
  for (const auto& [name, id] : chart.categories())
    if (!options.category || *options.category == name) wanted.push_back(id);

  std::size_t total = 0;
  for (auto c : wanted) {
    total += chart.count(c, 0, e.size(), options.max_trees);
    if (total > options.max_trees)
      throw ResourceLimitError("utterance has more than " + std::to_string(options.max_trees) +
                               " derivation trees");
  }
  std::vector<SynTree> out;
  for (auto c : wanted) {
    const auto& ts = chart.trees(c, 0, e.size());
    out.insert(out.end(), ts.begin(), ts.end());
  }
  canonicalize(out);
  return out;
}

Utterance morsyngen(const CompositionalGrammar& g, const SynTree& t) {
  if (!is_cfg_well_formed(g, t))
    throw PreconditionError("morsyngen requires a CFG-well-formed tree, got " + to_text(t));
  Utterance out;
  generate(g, t, out);
  return out;
}

}  // namespace compo
