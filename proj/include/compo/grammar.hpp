#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "compo/errors.hpp"

namespace compo {

namespace detail {
struct Locator;
}

using Name = std::string;
using Token = std::string;
using Utterance = std::vector<Token>;

/// Argument list plus resultant category. Used for both syntactic and
/// semantic rules.
struct RuleType {
  std::vector<Name> args;
  Name result;

  std::size_t arity() const noexcept { return args.size(); }
  friend bool operator==(const RuleType&, const RuleType&) = default;
};

struct BasicMeaning {
  Name name;
  Name category;
  friend bool operator==(const BasicMeaning&, const BasicMeaning&) = default;
};

struct SemanticRule {
  Name name;
  RuleType type;
  friend bool operator==(const SemanticRule&, const SemanticRule&) = default;
};

/// The interlingua: basic meanings and semantic rules over semantic
/// categories. Meanings and rules are uninterpreted typed symbols.
class SemanticComponent {
 public:
  SemanticComponent() = default;
  explicit SemanticComponent(Name name) : name_(std::move(name)) {}

  const Name& name() const noexcept { return name_; }
  const std::set<Name>& categories() const noexcept { return categories_; }
  const std::map<Name, BasicMeaning>& meanings() const noexcept { return meanings_; }
  const std::map<Name, SemanticRule>& rules() const noexcept { return rules_; }

  void add_category(const Name& category);
  void add_meaning(BasicMeaning meaning);
  void add_rule(SemanticRule rule);

  bool has_category(const Name& c) const { return categories_.count(c) != 0; }
  const BasicMeaning& meaning(const Name& name) const;
  const SemanticRule& rule(const Name& name) const;
  const BasicMeaning* find_meaning(const Name& name) const;
  const SemanticRule* find_rule(const Name& name) const;

  friend bool operator==(const SemanticComponent&, const SemanticComponent&) = default;

 private:
  Name name_;
  std::set<Name> categories_;
  std::map<Name, BasicMeaning> meanings_;
  std::map<Name, SemanticRule> rules_;
};

/// A template item: either a literal token or a 1-based argument placeholder.
struct Placeholder {
  std::size_t index;
  friend bool operator==(const Placeholder&, const Placeholder&) = default;
};
using TemplateItem = std::variant<Token, Placeholder>;

/// Lexical entry: a rewrite rule without right-hand-side nonterminals.
struct BasicExpression {
  Name name;
  Name category;
  Utterance surface;
  std::set<Name> meanings;
  friend bool operator==(const BasicExpression&, const BasicExpression&) = default;
};

/// A rewrite rule with at least one nonterminal. `type.args` is the argument
/// list; `pattern` is the right-hand side in surface order, where placeholder
/// $i stands for argument i.
struct SyntacticRule {
  Name name;
  RuleType type;
  std::vector<TemplateItem> pattern;
  std::set<Name> meanings;

  std::size_t arity() const noexcept { return type.arity(); }
  friend bool operator==(const SyntacticRule&, const SyntacticRule&) = default;
};

using SemanticsPtr = std::shared_ptr<const SemanticComponent>;

/// Syntactic component plus its interpretation into a shared semantic
/// component. Immutable once built through GrammarBuilder or the loader.
class CompositionalGrammar {
 public:
  const Name& name() const noexcept { return name_; }
  const std::set<Name>& categories() const noexcept { return categories_; }
  const std::map<Name, BasicExpression>& basics() const noexcept { return basics_; }
  const std::map<Name, SyntacticRule>& rules() const noexcept { return rules_; }
  const SemanticComponent& semantics() const noexcept { return *semantics_; }
  const SemanticsPtr& semantics_ptr() const noexcept { return semantics_; }

  bool has_category(const Name& c) const { return categories_.count(c) != 0; }
  const BasicExpression& basic(const Name& name) const;
  const SyntacticRule& rule(const Name& name) const;
  const BasicExpression* find_basic(const Name& name) const;
  const SyntacticRule* find_rule(const Name& name) const;

  /// Structural equality; semantic components compare by value.
  friend bool operator==(const CompositionalGrammar& a, const CompositionalGrammar& b);

 private:
  friend class GrammarBuilder;

  Name name_;
  std::set<Name> categories_;
  std::map<Name, BasicExpression> basics_;
  std::map<Name, SyntacticRule> rules_;
  SemanticsPtr semantics_;
};

/// Assembles a grammar and checks every structural invariant in build().
class GrammarBuilder {
 public:
  GrammarBuilder(Name name, SemanticsPtr semantics);

  GrammarBuilder& category(const Name& c);
  GrammarBuilder& basic(BasicExpression b);
  GrammarBuilder& rule(SyntacticRule r);

  /// Throws InputError on any invariant violation.
  CompositionalGrammar build() &&;
  /// As build(), reporting violations at the positions `where` supplies.
  CompositionalGrammar build(const detail::Locator& where) &&;

 private:
  CompositionalGrammar grammar_;
};

/// Checks the semantic component invariants (declared categories, arity >= 1).
void validate_semantics(const SemanticComponent& semantics);

/// Source and target grammar sharing one semantic component.
class GrammarPair {
 public:
  const CompositionalGrammar& source() const noexcept { return source_; }
  const CompositionalGrammar& target() const noexcept { return target_; }
  const SemanticComponent& semantics() const noexcept { return source_.semantics(); }

 private:
  friend GrammarPair validate_pair(CompositionalGrammar source, CompositionalGrammar target);
  GrammarPair(CompositionalGrammar s, CompositionalGrammar t)
      : source_(std::move(s)), target_(std::move(t)) {}

  CompositionalGrammar source_;
  CompositionalGrammar target_;
};

/// Throws InputError when the grammars do not share their semantic component.
GrammarPair validate_pair(CompositionalGrammar source, CompositionalGrammar target);

/// Everything declared in one grammar file.
struct GrammarFile {
  std::vector<SemanticsPtr> semantics;
  std::vector<CompositionalGrammar> grammars;

  SemanticsPtr find_semantics(std::string_view name) const;
  const CompositionalGrammar* find_grammar(std::string_view name) const;
};

/// Parses the line-based grammar format. `external` semantic components may
/// be referenced by `uses` clauses in addition to the file's own blocks.
/// `origin` names the file in diagnostics.
GrammarFile load_grammar_file(std::string_view text, std::string_view origin = "<input>",
                              const std::vector<SemanticsPtr>& external = {});

/// Loads a file that must declare exactly one grammar.
CompositionalGrammar load_grammar(std::string_view text, std::string_view origin = "<input>");

/// Reads a whole file; InputError if unreadable.
std::string read_file(const std::string& path);

/// Renders a type as `⟨⟨B,C⟩,A⟩`.
std::string format_rule_type(const RuleType& type);
std::string format_pattern(const SyntacticRule& rule);
std::string format_utterance(const Utterance& u);

/// Whitespace tokenization used at the CLI and binding boundaries.
Utterance tokenize(std::string_view text);

}  // namespace compo
