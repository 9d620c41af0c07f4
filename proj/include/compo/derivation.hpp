#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "compo/grammar.hpp"

namespace compo {

struct SynTag {};
struct SemTag {};

/// A derivation tree: a leaf naming a basic expression (basic meaning), or a
/// node naming a syntactic (semantic) rule with an ordered list of subtrees.
/// Ill-formed trees are representable; well-formedness is a separate check.
template <class Tag>
struct DerivationTree {
  enum class Kind : std::uint8_t { Leaf, Node };

  Kind kind = Kind::Leaf;
  Name name;
  std::vector<DerivationTree> children;

  static DerivationTree leaf(Name n) { return {Kind::Leaf, std::move(n), {}}; }
  static DerivationTree node(Name n, std::vector<DerivationTree> kids) {
    return {Kind::Node, std::move(n), std::move(kids)};
  }

  bool is_leaf() const noexcept { return kind == Kind::Leaf; }
  std::size_t depth() const noexcept {
    std::size_t d = 0;
    for (const auto& c : children) d = std::max(d, c.depth());
    return d + 1;
  }
  std::size_t size() const noexcept {
    std::size_t n = 1;
    for (const auto& c : children) n += c.size();
    return n;
  }

  /// Canonical order: name, then leaf before node, then children lexicographically.
  friend std::strong_ordering operator<=>(const DerivationTree& a, const DerivationTree& b) {
    if (auto c = a.name <=> b.name; c != 0) return c;
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    const auto n = std::min(a.children.size(), b.children.size());
    for (std::size_t i = 0; i < n; ++i)
      if (auto c = a.children[i] <=> b.children[i]; c != 0) return c;
    return a.children.size() <=> b.children.size();
  }
  friend bool operator==(const DerivationTree& a, const DerivationTree& b) {
    return (a <=> b) == 0;
  }
};

using SynTree = DerivationTree<SynTag>;
using SemTree = DerivationTree<SemTag>;

/// Sorts and deduplicates in place; every set of trees the library returns is
/// in this canonical form.
template <class T>
void canonicalize(std::vector<T>& items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
}

/// Same shape, ignoring labels.
template <class A, class B>
bool same_geometry(const DerivationTree<A>& a, const DerivationTree<B>& b) {
  if (a.is_leaf() != b.is_leaf() || a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!same_geometry(a.children[i], b.children[i])) return false;
  return true;
}

// -- categories and well-formedness ----------------------------------------

const Name& syn_cat(const CompositionalGrammar& g, const SynTree& t);
bool is_cfg_well_formed(const CompositionalGrammar& g, const SynTree& t);

const Name& sem_cat(const SemanticComponent& sc, const SemTree& d);
bool is_sem_well_typed(const SemanticComponent& sc, const SemTree& d);

// -- enumeration ------------------------------------------------------------

/// Default bound on the number of trees a single enumeration may produce.
inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// All CFG-well-formed trees of category `cat` with depth <= max_depth
/// (a leaf has depth 1), in canonical order.
std::vector<SynTree> enumerate_syn_trees(const CompositionalGrammar& g, const Name& cat,
                                         std::size_t max_depth,
                                         std::size_t cap = kDefaultEnumerationCap);

/// All well-typed semantic trees of category `cat` with depth <= max_depth.
std::vector<SemTree> enumerate_sem_trees(const SemanticComponent& sc, const Name& cat,
                                         std::size_t max_depth,
                                         std::size_t cap = kDefaultEnumerationCap);

/// A well-typed tree of category `cat` and depth <= max_depth chosen by a
/// seeded generator, or nullopt when no such tree exists. Deterministic in
/// `seed` across platforms.
std::optional<SemTree> random_sem_tree(const SemanticComponent& sc, const Name& cat,
                                       std::size_t max_depth, std::uint64_t seed);

// -- serialization ----------------------------------------------------------

/// `R1(b, c)`; a leaf prints as its bare name, a childless node as `R()`.
template <class Tag>
std::string to_text(const DerivationTree<Tag>& t);

/// Inverse of to_text. Throws InputError on malformed text.
SynTree parse_syn_tree(std::string_view text);
SemTree parse_sem_tree(std::string_view text);

/// {"rule": "R1", "children": [{"basic": "b"}, ...]} for syntactic trees,
/// {"mrule": "M1", "children": [{"meaning": "m1"}, ...]} for semantic trees.
nlohmann::ordered_json to_json(const SynTree& t);
nlohmann::ordered_json to_json(const SemTree& d);
SynTree syn_tree_from_json(const nlohmann::json& j);
SemTree sem_tree_from_json(const nlohmann::json& j);

}  // namespace compo
