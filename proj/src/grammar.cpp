#include "compo/grammar.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "grammar_check.hpp"

namespace compo {

InputError::InputError(const std::string& message, std::string file, std::size_t line,
                       std::size_t column)
    : Error([&] {
        std::string where;
        if (!file.empty()) where = file + ":";
        if (line != 0) {
          where += std::to_string(line) + ":";
          if (column != 0) where += std::to_string(column) + ":";
        }
        return where.empty() ? message : where + " " + message;
      }()),
      message_(message),
      file_(std::move(file)),
      line_(line),
      column_(column) {}

// ---------------------------------------------------------------------------
// SemanticComponent

void SemanticComponent::add_category(const Name& category) {
  if (!categories_.insert(category).second)
    throw InputError("duplicate semantic category '" + category + "'");
}

void SemanticComponent::add_meaning(BasicMeaning meaning) {
  if (meanings_.count(meaning.name) || rules_.count(meaning.name))
    throw InputError("duplicate meaning name '" + meaning.name + "'");
  auto key = meaning.name;
  meanings_.emplace(std::move(key), std::move(meaning));
}

void SemanticComponent::add_rule(SemanticRule rule) {
  if (meanings_.count(rule.name) || rules_.count(rule.name))
    throw InputError("duplicate semantic rule name '" + rule.name + "'");
  auto key = rule.name;
  rules_.emplace(std::move(key), std::move(rule));
}

const BasicMeaning* SemanticComponent::find_meaning(const Name& name) const {
  auto it = meanings_.find(name);
  return it == meanings_.end() ? nullptr : &it->second;
}

const SemanticRule* SemanticComponent::find_rule(const Name& name) const {
  auto it = rules_.find(name);
  return it == rules_.end() ? nullptr : &it->second;
}

const BasicMeaning& SemanticComponent::meaning(const Name& name) const {
  if (auto* m = find_meaning(name)) return *m;
  throw UnknownNameError("unknown basic meaning '" + name + "' in semantics '" + name_ + "'");
}

const SemanticRule& SemanticComponent::rule(const Name& name) const {
  if (auto* r = find_rule(name)) return *r;
  throw UnknownNameError("unknown semantic rule '" + name + "' in semantics '" + name_ + "'");
}

void validate_semantics(const SemanticComponent& semantics) {
  detail::check_semantics(semantics, {});
}

// ---------------------------------------------------------------------------
// CompositionalGrammar

const BasicExpression* CompositionalGrammar::find_basic(const Name& name) const {
  auto it = basics_.find(name);
  return it == basics_.end() ? nullptr : &it->second;
}

const SyntacticRule* CompositionalGrammar::find_rule(const Name& name) const {
  auto it = rules_.find(name);
  return it == rules_.end() ? nullptr : &it->second;
}

const BasicExpression& CompositionalGrammar::basic(const Name& name) const {
  if (auto* b = find_basic(name)) return *b;
  throw UnknownNameError("unknown basic expression '" + name + "' in grammar '" + name_ + "'");
}

const SyntacticRule& CompositionalGrammar::rule(const Name& name) const {
  if (auto* r = find_rule(name)) return *r;
  throw UnknownNameError("unknown syntactic rule '" + name + "' in grammar '" + name_ + "'");
}

bool operator==(const CompositionalGrammar& a, const CompositionalGrammar& b) {
  if (a.name_ != b.name_ || a.categories_ != b.categories_ || a.basics_ != b.basics_ ||
      a.rules_ != b.rules_)
    return false;
  if (a.semantics_ == b.semantics_) return true;
  return a.semantics_ && b.semantics_ && *a.semantics_ == *b.semantics_;
}

GrammarBuilder::GrammarBuilder(Name name, SemanticsPtr semantics) {
  if (!semantics) throw InputError("grammar '" + name + "' has no semantic component");
  grammar_.name_ = std::move(name);
  grammar_.semantics_ = std::move(semantics);
}

GrammarBuilder& GrammarBuilder::category(const Name& c) {
  if (!grammar_.categories_.insert(c).second)
    throw InputError("duplicate syntactic category '" + c + "'");
  return *this;
}

GrammarBuilder& GrammarBuilder::basic(BasicExpression b) {
  if (grammar_.basics_.count(b.name) || grammar_.rules_.count(b.name))
    throw InputError("duplicate name '" + b.name + "'");
  auto key = b.name;
  grammar_.basics_.emplace(std::move(key), std::move(b));
  return *this;
}

GrammarBuilder& GrammarBuilder::rule(SyntacticRule r) {
  if (grammar_.basics_.count(r.name) || grammar_.rules_.count(r.name))
    throw InputError("duplicate name '" + r.name + "'");
  auto key = r.name;
  grammar_.rules_.emplace(std::move(key), std::move(r));
  return *this;
}

CompositionalGrammar GrammarBuilder::build() && {
  detail::check_grammar(grammar_, {});
  return std::move(grammar_);
}

CompositionalGrammar GrammarBuilder::build(const detail::Locator& where) && {
  detail::check_grammar(grammar_, where);
  return std::move(grammar_);
}

// ---------------------------------------------------------------------------
// GrammarPair

GrammarPair validate_pair(CompositionalGrammar source, CompositionalGrammar target) {
  const auto& s = source.semantics();
  const auto& t = target.semantics();
  if (s.name() != t.name())
    throw InputError("semantic component mismatch: source '" + source.name() + "' uses '" +
                     s.name() + "', target '" + target.name() + "' uses '" + t.name() + "'");
  if (source.semantics_ptr() != target.semantics_ptr() && !(s == t))
    throw InputError("semantic component mismatch: two different components are both named '" +
                     s.name() + "'");
  return GrammarPair(std::move(source), std::move(target));
}

SemanticsPtr GrammarFile::find_semantics(std::string_view name) const {
  for (const auto& s : semantics)
    if (s->name() == name) return s;
  return nullptr;
}

const CompositionalGrammar* GrammarFile::find_grammar(std::string_view name) const {
  for (const auto& g : grammars)
    if (g.name() == name) return &g;
  return nullptr;
}

CompositionalGrammar load_grammar(std::string_view text, std::string_view origin) {
  auto file = load_grammar_file(text, origin);
  if (file.grammars.size() != 1)
    throw InputError("expected exactly one grammar block, found " +
                         std::to_string(file.grammars.size()),
                     std::string(origin));
  return std::move(file.grammars.front());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// Formatting

std::string format_rule_type(const RuleType& type) {
  std::string out = "⟨⟨";
  for (std::size_t i = 0; i < type.args.size(); ++i) {
    if (i) out += ",";
    out += type.args[i];
  }
  return out + "⟩," + type.result + "⟩";
}

std::string format_pattern(const SyntacticRule& rule) {
  std::string out;
  for (const auto& item : rule.pattern) {
    if (!out.empty()) out += ' ';
    if (const auto* tok = std::get_if<Token>(&item))
      out += *tok;
    else
      out += rule.type.args.at(std::get<Placeholder>(item).index - 1);
  }
  return out;
}

std::string format_utterance(const Utterance& u) {
  std::string out;
  for (const auto& tok : u) {
    if (!out.empty()) out += ' ';
    out += tok;
  }
  return out;
}

Utterance tokenize(std::string_view text) {
  Utterance out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace compo
