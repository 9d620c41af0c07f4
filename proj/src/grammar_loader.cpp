// Reader for the line-based `.cg` grammar format.
//
//   semantics <name>
//     semcat <Name>...
//     meaning <name> : <SemCat>
//     mrule <Name> : ( <SemCat>... ) -> <SemCat>
//   grammar <name> uses <semantics-name>
//     syncat <Name>...
//     basic <name> : <SynCat> = "<tok>"... => <meaning>[, <meaning>...]
//     rule <Name> : ( <SynCat>... ) -> <SynCat> = <item>... => <mrule>[, <mrule>...]

#include <map>
#include <optional>

#include "compo/grammar.hpp"
#include "grammar_check.hpp"
#include "lexer.hpp"

namespace compo {

namespace {

using detail::Lex;
using detail::LineReader;
using Position = std::pair<std::size_t, std::size_t>;
using PositionMap = std::map<std::pair<std::string, std::string>, Position>;

struct SemanticsBlock {
  std::shared_ptr<SemanticComponent> component;
  PositionMap positions;
  std::size_t header_line;
};

struct GrammarBlock {
  Name name;
  Name uses;
  Position uses_position;
  std::vector<Name> categories;
  std::vector<BasicExpression> basics;
  std::vector<SyntacticRule> rules;
  PositionMap positions;
};

std::vector<Name> read_category_list(LineReader& in) {
  in.expect(Lex::Punct, "(", "'('");
  std::vector<Name> out;
  while (!in.peek_is(Lex::Punct, ")")) out.push_back(in.ident("category name or ')'"));
  in.expect(Lex::Punct, ")", "')'");
  return out;
}

std::set<Name> read_meaning_list(LineReader& in, const char* what) {
  std::set<Name> out;
  do {
    const auto col = in.column();
    auto name = in.ident(what);
    if (!out.insert(name).second)
      throw InputError("duplicate interpretation entry '" + name + "'", in.file(), in.line(), col);
  } while (in.accept(Lex::Punct, ","));
  return out;
}

class Loader {
 public:
  Loader(std::string_view text, std::string origin, const std::vector<SemanticsPtr>& external)
      : text_(text), origin_(std::move(origin)), external_(external) {}

  GrammarFile run() {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text_.size()) {
      auto end = text_.find('\n', start);
      if (end == std::string_view::npos) end = text_.size();
      auto line = text_.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no;
      auto lexemes = detail::lex_line(line, origin_, line_no);
      if (!lexemes.empty()) statement(LineReader(std::move(lexemes), origin_, line_no, line.size()));
      start = end + 1;
    }
    return finish();
  }

 private:
  enum class Block { None, Semantics, Grammar };

  void statement(LineReader in) {
    const auto keyword_col = in.column();
    const auto keyword = in.ident("keyword");
    if (keyword == "semantics") {
      const auto col = in.column();
      auto name = in.ident("semantics name");
      in.expect_end();
      for (const auto& s : sem_blocks_)
        if (s.component->name() == name)
          throw InputError("duplicate semantics block '" + name + "'", origin_, in.line(), col);
      sem_blocks_.push_back({std::make_shared<SemanticComponent>(name), {}, in.line()});
      block_ = Block::Semantics;
    } else if (keyword == "grammar") {
      const auto col = in.column();
      auto name = in.ident("grammar name");
      in.expect(Lex::Ident, "uses", "'uses'");
      const Position uses_pos{in.line(), in.column()};
      auto uses = in.ident("semantics name");
      in.expect_end();
      for (const auto& g : grammar_blocks_)
        if (g.name == name)
          throw InputError("duplicate grammar block '" + name + "'", origin_, in.line(), col);
      grammar_blocks_.push_back({std::move(name), std::move(uses), uses_pos, {}, {}, {}, {}});
      block_ = Block::Grammar;
    } else if (keyword == "semcat" || keyword == "meaning" || keyword == "mrule") {
      if (block_ != Block::Semantics)
        throw InputError("'" + keyword + "' outside a semantics block", origin_, in.line(),
                         keyword_col);
      semantics_statement(keyword, in);
    } else if (keyword == "syncat" || keyword == "basic" || keyword == "rule") {
      if (block_ != Block::Grammar)
        throw InputError("'" + keyword + "' outside a grammar block", origin_, in.line(),
                         keyword_col);
      grammar_statement(keyword, in);
    } else {
      throw InputError("unknown keyword '" + keyword + "'", origin_, in.line(), keyword_col);
    }
  }

  void semantics_statement(const std::string& keyword, LineReader& in) {
    auto& block = sem_blocks_.back();
    auto& sem = *block.component;
    const Position here{in.line(), in.column()};
    try {
      if (keyword == "semcat") {
        do {
          const Position at{in.line(), in.column()};
          auto c = in.ident("semantic category");
          if (sem.has_category(c))
            throw InputError("duplicate semantic category '" + c + "'", origin_, at.first,
                             at.second);
          sem.add_category(c);
          block.positions[{"semcat", c}] = at;
        } while (!in.done());
      } else if (keyword == "meaning") {
        auto name = in.ident("meaning name");
        in.expect(Lex::Punct, ":", "':'");
        auto cat = in.ident("semantic category");
        in.expect_end();
        block.positions[{"meaning", name}] = here;
        sem.add_meaning({std::move(name), std::move(cat)});
      } else {
        auto name = in.ident("semantic rule name");
        in.expect(Lex::Punct, ":", "':'");
        auto args = read_category_list(in);
        in.expect(Lex::Arrow, "->", "'->'");
        auto result = in.ident("result category");
        in.expect_end();
        block.positions[{"mrule", name}] = here;
        sem.add_rule({std::move(name), {std::move(args), std::move(result)}});
      }
    } catch (const InputError& e) {
      if (e.line() != 0) throw;
      throw InputError(e.message(), origin_, here.first, here.second);
    }
  }

  void grammar_statement(const std::string& keyword, LineReader& in) {
    auto& block = grammar_blocks_.back();
    const Position here{in.line(), in.column()};
    if (keyword == "syncat") {
      do {
        const Position at{in.line(), in.column()};
        auto c = in.ident("syntactic category");
        for (const auto& existing : block.categories)
          if (existing == c)
            throw InputError("duplicate syntactic category '" + c + "'", origin_, at.first,
                             at.second);
        block.categories.push_back(c);
      } while (!in.done());
      return;
    }

    auto name = in.ident(keyword == "basic" ? "basic expression name" : "rule name");
    if (block.positions.count({"basic", name}) || block.positions.count({"rule", name}))
      throw InputError("duplicate name '" + name + "'", origin_, here.first, here.second);
    in.expect(Lex::Punct, ":", "':'");

    if (keyword == "basic") {
      BasicExpression b;
      b.name = name;
      b.category = in.ident("syntactic category");
      in.expect(Lex::Punct, "=", "'='");
      while (in.peek_is(Lex::String)) b.surface.push_back(in.string("token"));
      if (b.surface.empty()) in.fail("expected at least one quoted token");
      for (const auto& tok : b.surface)
        if (tok.empty()) in.fail("empty token in surface of '" + name + "'");
      in.expect(Lex::FatArrow, "=>", "'=>'");
      b.meanings = read_meaning_list(in, "basic meaning name");
      in.expect_end();
      block.positions[{"basic", name}] = here;
      block.basics.push_back(std::move(b));
    } else {
      SyntacticRule r;
      r.name = name;
      r.type.args = read_category_list(in);
      in.expect(Lex::Arrow, "->", "'->'");
      r.type.result = in.ident("result category");
      in.expect(Lex::Punct, "=", "'='");
      while (in.peek_is(Lex::String) || in.peek_is(Lex::Placeholder)) {
        if (in.peek_is(Lex::String)) {
          r.pattern.emplace_back(in.string("token"));
        } else {
          const auto& digits = in.peek().text;
          const auto col = in.column();
          if (digits.size() > 6)
            throw InputError("placeholder index too large", origin_, in.line(), col);
          r.pattern.emplace_back(Placeholder{static_cast<std::size_t>(std::stoul(digits))});
          in.expect(Lex::Placeholder, {}, "placeholder");
        }
      }
      if (r.pattern.empty()) in.fail("expected template items");
      in.expect(Lex::FatArrow, "=>", "'=>'");
      r.meanings = read_meaning_list(in, "semantic rule name");
      in.expect_end();
      block.positions[{"rule", name}] = here;
      block.rules.push_back(std::move(r));
    }
  }

  static detail::Locator locator(const std::string& file, const PositionMap& positions) {
    return {file, [&positions](const std::string& kind, const std::string& name) {
              auto it = positions.find({kind, name});
              return it == positions.end() ? Position{0, 0} : it->second;
            }};
  }

  GrammarFile finish() {
    GrammarFile out;
    for (auto& block : sem_blocks_) {
      detail::check_semantics(*block.component, locator(origin_, block.positions));
      out.semantics.push_back(block.component);
    }
    for (auto& block : grammar_blocks_) {
      SemanticsPtr sem = out.find_semantics(block.uses);
      if (!sem)
        for (const auto& e : external_)
          if (e->name() == block.uses) sem = e;
      if (!sem)
        throw InputError("grammar '" + block.name + "' uses unknown semantics '" + block.uses +
                             "'",
                         origin_, block.uses_position.first, block.uses_position.second);

      GrammarBuilder builder(block.name, sem);
      for (const auto& c : block.categories) builder.category(c);
      for (auto& b : block.basics) builder.basic(std::move(b));
      for (auto& r : block.rules) builder.rule(std::move(r));
      auto grammar = std::move(builder).build(locator(origin_, block.positions));
      out.grammars.push_back(std::move(grammar));
    }
    return out;
  }

  std::string_view text_;
  std::string origin_;
  const std::vector<SemanticsPtr>& external_;
  Block block_ = Block::None;
  std::vector<SemanticsBlock> sem_blocks_;
  std::vector<GrammarBlock> grammar_blocks_;
};

}  // namespace

GrammarFile load_grammar_file(std::string_view text, std::string_view origin,
                              const std::vector<SemanticsPtr>& external) {
  return Loader(text, std::string(origin), external).run();
}

}  // namespace compo
