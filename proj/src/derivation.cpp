#include "compo/derivation.hpp"

#include <cctype>
#include <map>
#include <random>

namespace compo {

namespace {

// Uniform view over the leaf and rule inventories of either kind of grammar.
struct Production {
  const Name* name;
  const std::vector<Name>* args;  // nullptr for leaves
};

struct Inventory {
  std::map<Name, std::vector<Production>> by_category;  // leaves first, then rules, by name
  std::vector<Name> categories;
};

Inventory inventory(const CompositionalGrammar& g) {
  Inventory inv;
  inv.categories.assign(g.categories().begin(), g.categories().end());
  for (const auto& [name, b] : g.basics()) inv.by_category[b.category].push_back({&name, nullptr});
  for (const auto& [name, r] : g.rules())
    inv.by_category[r.type.result].push_back({&name, &r.type.args});
  return inv;
}

Inventory inventory(const SemanticComponent& sc) {
  Inventory inv;
  inv.categories.assign(sc.categories().begin(), sc.categories().end());
  for (const auto& [name, m] : sc.meanings()) inv.by_category[m.category].push_back({&name, nullptr});
  for (const auto& [name, r] : sc.rules())
    inv.by_category[r.type.result].push_back({&name, &r.type.args});
  return inv;
}

template <class Tree>
std::vector<Tree> enumerate(const Inventory& inv, const Name& cat, std::size_t max_depth,
                            std::size_t cap) {
  if (max_depth == 0) return {};
  // level[c] holds all trees of category c with depth <= current bound.
  std::map<Name, std::vector<Tree>> level, next;
  for (const auto& c : inv.categories) {
    auto it = inv.by_category.find(c);
    if (it == inv.by_category.end()) continue;
    for (const auto& p : it->second)
      if (!p.args) level[c].push_back(Tree::leaf(*p.name));
  }
  for (std::size_t depth = 2; depth <= max_depth; ++depth) {
    next.clear();
    bool grew = false;
    for (const auto& c : inv.categories) {
      auto it = inv.by_category.find(c);
      if (it == inv.by_category.end()) continue;
      auto& out = next[c];
      for (const auto& p : it->second) {
        if (!p.args) {
          out.push_back(Tree::leaf(*p.name));
          continue;
        }
        std::vector<const std::vector<Tree>*> pools;
        std::size_t combos = 1;
        for (const auto& a : *p.args) {
          auto pit = level.find(a);
          if (pit == level.end() || pit->second.empty()) {
            combos = 0;
            break;
          }
          pools.push_back(&pit->second);
          if (combos > cap / pit->second.size()) combos = cap + 1;
          else combos *= pit->second.size();
        }
        if (combos == 0) continue;
        if (combos > cap || out.size() + combos > cap)
          throw ResourceLimitError("tree enumeration exceeds cap of " + std::to_string(cap) +
                                   " trees at depth " + std::to_string(depth));
        std::vector<std::size_t> idx(pools.size(), 0);
        while (true) {
          std::vector<Tree> kids;
          kids.reserve(pools.size());
          for (std::size_t i = 0; i < pools.size(); ++i) kids.push_back((*pools[i])[idx[i]]);
          out.push_back(Tree::node(*p.name, std::move(kids)));
          std::size_t i = pools.size();
          while (i > 0) {
            --i;
            if (++idx[i] < pools[i]->size()) break;
            idx[i] = 0;
            if (i == 0) goto done;
          }
        }
      done:;
      }
      if (out.size() != level[c].size()) grew = true;
    }
    level.swap(next);
    if (!grew) break;  // fixed point: deeper bounds add nothing
  }
  auto result = std::move(level[cat]);
  canonicalize(result);
  return result;
}

// Saturating count of trees per (depth bound, category).
using CountTable = std::vector<std::map<Name, double>>;

CountTable count_table(const Inventory& inv, std::size_t max_depth) {
  CountTable table(max_depth + 1);
  for (std::size_t d = 1; d <= max_depth; ++d) {
    for (const auto& c : inv.categories) {
      double n = 0;
      auto it = inv.by_category.find(c);
      if (it != inv.by_category.end()) {
        for (const auto& p : it->second) {
          if (!p.args) {
            n += 1;
            continue;
          }
          if (d == 1) continue;
          double prod = 1;
          for (const auto& a : *p.args) prod *= table[d - 1][a];
          n += prod;
        }
      }
      table[d][c] = std::min(n, 1e300);
    }
  }
  return table;
}

SemTree sample(const Inventory& inv, const CountTable& table, const Name& cat, std::size_t depth,
               std::mt19937_64& rng) {
  std::vector<const Production*> options;
  for (const auto& p : inv.by_category.at(cat)) {
    if (!p.args) {
      options.push_back(&p);
      continue;
    }
    if (depth < 2) continue;
    bool feasible = true;
    for (const auto& a : *p.args) feasible = feasible && table[depth - 1].at(a) > 0;
    if (feasible) options.push_back(&p);
  }
  const auto* pick = options[rng() % options.size()];
  if (!pick->args) return SemTree::leaf(*pick->name);
  std::vector<SemTree> kids;
  for (const auto& a : *pick->args) kids.push_back(sample(inv, table, a, depth - 1, rng));
  return SemTree::node(*pick->name, std::move(kids));
}

}  // namespace

// ---------------------------------------------------------------------------

const Name& syn_cat(const CompositionalGrammar& g, const SynTree& t) {
  return t.is_leaf() ? g.basic(t.name).category : g.rule(t.name).type.result;
}

const Name& sem_cat(const SemanticComponent& sc, const SemTree& d) {
  return d.is_leaf() ? sc.meaning(d.name).category : sc.rule(d.name).type.result;
}

namespace {

void resolve(const CompositionalGrammar& g, const SynTree& t) {
  (void)syn_cat(g, t);
  for (const auto& c : t.children) resolve(g, c);
}

void resolve(const SemanticComponent& sc, const SemTree& d) {
  (void)sem_cat(sc, d);
  for (const auto& c : d.children) resolve(sc, c);
}

bool cfg_ok(const CompositionalGrammar& g, const SynTree& t) {
  if (t.is_leaf()) return true;
  const auto& args = g.rule(t.name).type.args;
  if (args.size() != t.children.size()) return false;
  for (std::size_t i = 0; i < args.size(); ++i)
    if (syn_cat(g, t.children[i]) != args[i] || !cfg_ok(g, t.children[i])) return false;
  return true;
}

bool typed_ok(const SemanticComponent& sc, const SemTree& d) {
  if (d.is_leaf()) return true;
  const auto& args = sc.rule(d.name).type.args;
  if (args.size() != d.children.size()) return false;
  for (std::size_t i = 0; i < args.size(); ++i)
    if (sem_cat(sc, d.children[i]) != args[i] || !typed_ok(sc, d.children[i])) return false;
  return true;
}

}  // namespace

bool is_cfg_well_formed(const CompositionalGrammar& g, const SynTree& t) {
  resolve(g, t);
  return cfg_ok(g, t);
}

bool is_sem_well_typed(const SemanticComponent& sc, const SemTree& d) {
  resolve(sc, d);
  return typed_ok(sc, d);
}

std::vector<SynTree> enumerate_syn_trees(const CompositionalGrammar& g, const Name& cat,
                                         std::size_t max_depth, std::size_t cap) {
  if (!g.has_category(cat))
    throw UnknownNameError("unknown syntactic category '" + cat + "'");
  return enumerate<SynTree>(inventory(g), cat, max_depth, cap);
}

std::vector<SemTree> enumerate_sem_trees(const SemanticComponent& sc, const Name& cat,
                                         std::size_t max_depth, std::size_t cap) {
  if (!sc.has_category(cat)) throw UnknownNameError("unknown semantic category '" + cat + "'");
  return enumerate<SemTree>(inventory(sc), cat, max_depth, cap);
}

std::optional<SemTree> random_sem_tree(const SemanticComponent& sc, const Name& cat,
                                       std::size_t max_depth, std::uint64_t seed) {
  if (!sc.has_category(cat)) throw UnknownNameError("unknown semantic category '" + cat + "'");
  if (max_depth == 0) return std::nullopt;
  const auto inv = inventory(sc);
  const auto table = count_table(inv, max_depth);
  if (table[max_depth].at(cat) <= 0) return std::nullopt;
  std::mt19937_64 rng(seed);
  return sample(inv, table, cat, max_depth, rng);
}

// ---------------------------------------------------------------------------
// Serialization

template <class Tag>
std::string to_text(const DerivationTree<Tag>& t) {
  if (t.is_leaf()) return t.name;
  std::string out = t.name + "(";
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (i) out += ", ";
    out += to_text(t.children[i]);
  }
  return out + ")";
}

template std::string to_text(const SynTree&);
template std::string to_text(const SemTree&);

namespace {

bool is_name_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ',';
}

template <class Tree>
class TreeTextParser {
 public:
  explicit TreeTextParser(std::string_view s) : s_(s) {}

  Tree parse() {
    auto t = tree();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return t;
  }

 private:
  Tree tree() {
    skip();
    const auto start = pos_;
    while (pos_ < s_.size() && is_name_char(s_[pos_])) ++pos_;
    if (pos_ == start) fail("expected a name");
    Name name(s_.substr(start, pos_ - start));
    skip();
    if (pos_ >= s_.size() || s_[pos_] != '(') return Tree::leaf(std::move(name));
    ++pos_;
    std::vector<Tree> kids;
    skip();
    if (pos_ < s_.size() && s_[pos_] == ')') {
      ++pos_;
      return Tree::node(std::move(name), {});
    }
    while (true) {
      kids.push_back(tree());
      skip();
      if (pos_ >= s_.size()) fail("unterminated subtree list");
      if (s_[pos_] == ')') {
        ++pos_;
        break;
      }
      if (s_[pos_] != ',') fail("expected ',' or ')'");
      ++pos_;
    }
    return Tree::node(std::move(name), std::move(kids));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("tree syntax error: " + what, "", 1, pos_ + 1);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

template <class Tree>
nlohmann::ordered_json tree_json(const Tree& t, const char* leaf_key, const char* node_key) {
  nlohmann::ordered_json j;
  if (t.is_leaf()) {
    j[leaf_key] = t.name;
    return j;
  }
  j[node_key] = t.name;
  j["children"] = nlohmann::ordered_json::array();
  for (const auto& c : t.children) j["children"].push_back(tree_json(c, leaf_key, node_key));
  return j;
}

template <class Tree>
Tree tree_from_json(const nlohmann::json& j, const char* leaf_key, const char* node_key) {
  if (!j.is_object()) throw InputError("tree JSON must be an object");
  if (j.contains(leaf_key)) {
    if (j.size() != 1 || !j[leaf_key].is_string())
      throw InputError(std::string("malformed '") + leaf_key + "' leaf");
    return Tree::leaf(j[leaf_key].get<std::string>());
  }
  if (!j.contains(node_key) || !j[node_key].is_string() || !j.contains("children") ||
      !j["children"].is_array() || j.size() != 2)
    throw InputError(std::string("tree JSON needs '") + leaf_key + "' or '" + node_key +
                     "' with 'children'");
  std::vector<Tree> kids;
  for (const auto& c : j["children"]) kids.push_back(tree_from_json<Tree>(c, leaf_key, node_key));
  return Tree::node(j[node_key].get<std::string>(), std::move(kids));
}

}  // namespace

SynTree parse_syn_tree(std::string_view text) { return TreeTextParser<SynTree>(text).parse(); }
SemTree parse_sem_tree(std::string_view text) { return TreeTextParser<SemTree>(text).parse(); }

nlohmann::ordered_json to_json(const SynTree& t) { return tree_json(t, "basic", "rule"); }
nlohmann::ordered_json to_json(const SemTree& d) { return tree_json(d, "meaning", "mrule"); }

SynTree syn_tree_from_json(const nlohmann::json& j) {
  return tree_from_json<SynTree>(j, "basic", "rule");
}
SemTree sem_tree_from_json(const nlohmann::json& j) {
  return tree_from_json<SemTree>(j, "meaning", "mrule");
}

}  // namespace compo
