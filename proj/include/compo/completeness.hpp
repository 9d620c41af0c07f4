#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "compo/derivation.hpp"
#include "compo/grammar.hpp"

namespace compo {

enum class Label { Conjunctive, Disjunctive };

/// Maps each semantic category to its correspondence set of target syntactic
/// categories, plus a conjunctive/disjunctive label. An N-1 correspondence is
/// the special case where every set is a singleton.
struct CategoryCorrespondence {
  std::map<Name, std::set<Name>> images;
  std::map<Name, Label> labels;

  const std::set<Name>& image(const Name& sem_category) const;
  Label label(const Name& sem_category) const;

  friend bool operator==(const CategoryCorrespondence&, const CategoryCorrespondence&) = default;
};

/// Throws InputError unless `corr` covers every semantic category of the
/// pair with a non-empty, declared image set and a label.
void validate_correspondence(const GrammarPair& pair, const CategoryCorrespondence& corr);

enum class Condition { Homomorphism, N1, NN, Labels, WitnessSearch };

enum class ViolationKind {
  UncoveredBasicMeaning,   // (b, m): no target basic expression interprets to m
  UncoveredSemanticRule,   // (R, M): no target rule interprets to M
  CategoryConflict,        // N-1: one semantic category pinned to two images
  UnmappableCategory,      // N-1: no target category exists to map to
  BasicTyping,             // N-N: SynCat(b') outside f(SemCat(m))
  RuleTyping,              // N-N: rule type outside the correspondence sets
  BasicCoverage,           // m lacks a target basic in a required category
  RuleCoverage,            // (M, D, N) has no covering target rule
  LabelViolation,          // conjunctive category with an unrealized (d, N')
};

struct Violation {
  ViolationKind kind;
  /// Offending basic expression, rule, basic meaning, semantic rule or category.
  Name element;
  /// Interpretation member (m or M) for homomorphism items.
  Name interpretation;
  /// Disjunctive-position tuple D for rule coverage.
  std::vector<Name> tuple;
  /// Required target category (result N, label N', coverage C').
  Name category;
  std::optional<SemTree> tree;
  std::string message;
};

struct CompletenessReport {
  Condition condition;
  std::vector<Violation> violations;
  std::optional<SemTree> witness;
  /// The inferred N-1 map when the check computed one.
  std::optional<CategoryCorrespondence> correspondence;

  bool passed() const noexcept { return violations.empty() && !witness; }
};

/// Grammar homomorphism: every source basic meaning and semantic rule has a
/// target counterpart.
CompletenessReport check_homomorphism(const GrammarPair& pair);

struct N1Inference {
  std::optional<CategoryCorrespondence> map;
  std::vector<Violation> conflicts;
};

/// Infers the N-1 map f by propagating the constraints every target
/// interpretation link imposes (rules first, then basic expressions, each in
/// name order). Categories no link constrains map to the least target
/// category. All labels are conjunctive.
N1Inference infer_n1_map(const CompositionalGrammar& target);

/// Homomorphism plus an N-1 category correspondence of the target.
CompletenessReport check_theorem1(const GrammarPair& pair);

/// Default cap on the disjunctive tuples materialized per semantic rule.
inline constexpr std::size_t kDefaultTupleCap = 1'000'000;

/// Homomorphism, N-N typing of the target against `corr`, basic coverage,
/// and the per-tuple rule coverage condition with conjunctive/disjunctive
/// labels. Throws InputError if `corr` is incomplete.
CompletenessReport check_theorem2(const GrammarPair& pair, const CategoryCorrespondence& corr,
                                  std::size_t tuple_cap = kDefaultTupleCap);

/// Bounded refutation of the conjunctive labels: for every well-typed tree d
/// of a conjunctive category N (depth <= max_depth) and every N' in f(N),
/// semgen(target, d) must contain a well-formed tree of category N'.
/// Singleton correspondence sets pass without enumeration.
CompletenessReport validate_labels(const GrammarPair& pair, const CategoryCorrespondence& corr,
                                   std::size_t max_depth);

/// The first source-well-formed semantic tree (smallest depth, then canonical
/// order) with depth <= max_depth whose translation is empty.
std::optional<SemTree> find_incompleteness_witness(const GrammarPair& pair,
                                                   std::size_t max_depth);

/// Witness search wrapped in a report.
CompletenessReport witness_report(const GrammarPair& pair, std::size_t max_depth);

std::string to_string(Condition c);
std::string to_string(ViolationKind k);
std::string to_string(Label l);

}  // namespace compo
