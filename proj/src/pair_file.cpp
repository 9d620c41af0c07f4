#include "compo/pair_file.hpp"

#include <filesystem>
#include <map>

#include "lexer.hpp"

namespace compo {

namespace {

using detail::Lex;
using detail::LineReader;

struct FileRef {
  std::string path;
  std::string name;  // optional selector
  std::size_t line = 0;
};

struct CorrespondLine {
  std::set<Name> image;
  Label label;
  std::size_t line;
};

}  // namespace

PairFile parse_pair_file(std::string_view text, const std::string& origin, const FileReader& read) {
  std::optional<FileRef> semantics_ref, source_ref, target_ref;
  std::map<Name, CorrespondLine> correspond;

  std::size_t line_no = 0, start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    start = end + 1;
    ++line_no;

    auto lexemes = detail::lex_line(line, origin, line_no);
    if (lexemes.empty()) continue;
    LineReader in(std::move(lexemes), origin, line_no, line.size());
    const auto keyword_col = in.column();
    const auto keyword = in.ident("keyword");

    if (keyword == "semantics" || keyword == "source" || keyword == "target") {
      auto& slot = keyword == "semantics" ? semantics_ref
                   : keyword == "source"  ? source_ref
                                          : target_ref;
      if (slot) throw InputError("duplicate '" + keyword + "' line", origin, line_no, keyword_col);
      FileRef ref;
      ref.line = line_no;
      ref.path = in.peek_is(Lex::String) ? in.string("path") : in.ident("path");
      if (!in.done()) ref.name = in.ident("name");
      in.expect_end();
      slot = std::move(ref);
    } else if (keyword == "correspond") {
      const auto col = in.column();
      auto cat = in.ident("semantic category");
      in.expect(Lex::Arrow, "->", "'->'");
      in.expect(Lex::Punct, "{", "'{'");
      CorrespondLine entry{{}, Label::Conjunctive, line_no};
      while (!in.peek_is(Lex::Punct, "}")) {
        auto c = in.ident("syntactic category or '}'");
        if (!entry.image.insert(c).second) in.fail("duplicate category '" + c + "'");
      }
      in.expect(Lex::Punct, "}", "'}'");
      if (entry.image.empty()) in.fail("empty correspondence set");
      const auto label_col = in.column();
      const auto label = in.ident("'conjunctive' or 'disjunctive'");
      if (label == "conjunctive")
        entry.label = Label::Conjunctive;
      else if (label == "disjunctive")
        entry.label = Label::Disjunctive;
      else
        throw InputError("expected 'conjunctive' or 'disjunctive', got '" + label + "'", origin,
                         line_no, label_col);
      in.expect_end();
      if (!correspond.emplace(cat, std::move(entry)).second)
        throw InputError("duplicate correspondence for '" + cat + "'", origin, line_no, col);
    } else {
      throw InputError("unknown keyword '" + keyword + "'", origin, line_no, keyword_col);
    }
  }

  if (!semantics_ref) throw InputError("missing 'semantics' line", origin);
  if (!source_ref) throw InputError("missing 'source' line", origin);
  if (!target_ref) throw InputError("missing 'target' line", origin);

  const auto base = std::filesystem::path(origin).parent_path();
  auto resolve = [&](const std::string& p) {
    auto full = std::filesystem::path(p);
    if (full.is_relative()) full = base / full;
    return full.lexically_normal().string();
  };

  // Each referenced file is loaded once so shared semantics stay one object.
  std::map<std::string, GrammarFile> loaded;
  std::vector<SemanticsPtr> external;
  auto load = [&](const std::string& path) -> const GrammarFile& {
    auto it = loaded.find(path);
    if (it != loaded.end()) return it->second;
    auto file = load_grammar_file(read(path), path, external);
    return loaded.emplace(path, std::move(file)).first->second;
  };

  const auto sem_path = resolve(semantics_ref->path);
  const auto& sem_file = load(sem_path);
  SemanticsPtr semantics;
  if (semantics_ref->name.empty()) {
    if (sem_file.semantics.size() != 1)
      throw InputError("'" + sem_path + "' declares " + std::to_string(sem_file.semantics.size()) +
                           " semantics blocks; name one",
                       origin, semantics_ref->line);
    semantics = sem_file.semantics.front();
  } else {
    semantics = sem_file.find_semantics(semantics_ref->name);
    if (!semantics)
      throw InputError("'" + sem_path + "' has no semantics block '" + semantics_ref->name + "'",
                       origin, semantics_ref->line);
  }
  external.push_back(semantics);

  auto grammar = [&](const FileRef& ref) {
    const auto path = resolve(ref.path);
    const auto& file = load(path);
    const CompositionalGrammar* g = nullptr;
    if (ref.name.empty()) {
      if (file.grammars.size() != 1)
        throw InputError("'" + path + "' declares " + std::to_string(file.grammars.size()) +
                             " grammars; name one",
                         origin, ref.line);
      g = &file.grammars.front();
    } else {
      g = file.find_grammar(ref.name);
      if (!g) throw InputError("'" + path + "' has no grammar '" + ref.name + "'", origin, ref.line);
    }
    if (g->semantics().name() != semantics->name())
      throw InputError("grammar '" + g->name() + "' uses semantics '" + g->semantics().name() +
                           "', not '" + semantics->name() + "'",
                       origin, ref.line);
    return *g;
  };

  auto source = grammar(*source_ref);
  auto target = grammar(*target_ref);
  PairFile out{validate_pair(std::move(source), std::move(target)), std::nullopt};

  if (!correspond.empty()) {
    CategoryCorrespondence corr;
    for (const auto& [cat, entry] : correspond) {
      if (!semantics->has_category(cat))
        throw InputError("correspondence for undeclared semantic category '" + cat + "'", origin,
                         entry.line);
      for (const auto& c : entry.image)
        if (!out.pair.target().has_category(c))
          throw InputError("target grammar '" + out.pair.target().name() +
                               "' does not declare category '" + c + "'",
                           origin, entry.line);
      corr.images[cat] = entry.image;
      corr.labels[cat] = entry.label;
    }
    for (const auto& c : semantics->categories())
      if (!corr.images.count(c))
        throw InputError("no correspondence declared for semantic category '" + c + "'", origin);
    out.correspondence = std::move(corr);
  }
  return out;
}

PairFile load_pair_file(const std::string& path) {
  return parse_pair_file(read_file(path), path, [](const std::string& p) { return read_file(p); });
}

}  // namespace compo
