#include "compo/cli.hpp"

#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "compo/completeness.hpp"
#include "compo/derivation.hpp"
#include "compo/pair_file.hpp"
#include "compo/parser.hpp"
#include "compo/pipeline.hpp"

namespace compo {

namespace {

using Json = nlohmann::ordered_json;

struct Config {
  std::string input;
  std::string utterance;
  std::string category;
  std::string grammar_name;
  std::string semantics_file;
  std::string condition;
  std::string format = "text";
  std::size_t depth = 6;
  std::size_t cap = kDefaultAmbiguityCap;
  std::uint64_t seed = 0;
  std::size_t random = 0;
  bool semantic = false;
  bool trace = false;
};

std::size_t default_cap() {
  if (const char* env = std::getenv("COMPO_AMBIGUITY_CAP")) {
    try {
      const auto v = std::stoull(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
    throw InputError(std::string("COMPO_AMBIGUITY_CAP must be a positive integer, got '") + env +
                     "'");
  }
  return kDefaultAmbiguityCap;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

Json utterance_json(const Utterance& u) { return format_utterance(u); }

// -- grammar loading --------------------------------------------------------

struct LoadedGrammar {
  GrammarFile file;
  const CompositionalGrammar* grammar = nullptr;
};

LoadedGrammar load_grammar_for(const Config& cfg) {
  std::vector<SemanticsPtr> external;
  if (!cfg.semantics_file.empty()) {
    auto sem = load_grammar_file(read_file(cfg.semantics_file), cfg.semantics_file);
    external = sem.semantics;
  }
  LoadedGrammar out{load_grammar_file(read_file(cfg.input), cfg.input, external), nullptr};
  if (!cfg.grammar_name.empty()) {
    out.grammar = out.file.find_grammar(cfg.grammar_name);
    if (!out.grammar)
      throw InputError("no grammar named '" + cfg.grammar_name + "'", cfg.input);
  } else if (out.file.grammars.size() == 1) {
    out.grammar = &out.file.grammars.front();
  } else if (!out.file.grammars.empty()) {
    throw InputError("file declares " + std::to_string(out.file.grammars.size()) +
                         " grammars; select one with --grammar",
                     cfg.input);
  }
  return out;
}

bool is_pair_path(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".cgp") == 0;
}

// -- validate ---------------------------------------------------------------

void describe_semantics(const SemanticComponent& sem, std::ostream& out) {
  out << "semantics " << sem.name() << "\n";
  for (const auto& [name, m] : sem.meanings()) out << "  " << name << " : " << m.category << "\n";
  for (const auto& [name, r] : sem.rules())
    out << "  " << name << " : " << format_rule_type(r.type) << "\n";
}

std::string join_set(const std::set<Name>& xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : ", ") + x;
  return "{" + s + "}";
}

void describe_grammar(const CompositionalGrammar& g, std::ostream& out) {
  out << "grammar " << g.name() << " uses " << g.semantics().name() << "\n";
  for (const auto& [name, r] : g.rules())
    out << "  " << r.type.result << " -> " << format_pattern(r) << "    " << name << " : "
        << format_rule_type(r.type) << "    " << join_set(r.meanings) << "\n";
  for (const auto& [name, b] : g.basics())
    out << "  " << b.category << " -> " << format_utterance(b.surface) << "    " << name << " : "
        << b.category << "    " << join_set(b.meanings) << "\n";
}

Json semantics_json(const SemanticComponent& sem) {
  Json j;
  j["name"] = sem.name();
  j["categories"] = Json(std::vector<Name>(sem.categories().begin(), sem.categories().end()));
  j["meanings"] = Json::array();
  for (const auto& [name, m] : sem.meanings())
    j["meanings"].push_back({{"name", name}, {"category", m.category}});
  j["rules"] = Json::array();
  for (const auto& [name, r] : sem.rules())
    j["rules"].push_back({{"name", name}, {"args", r.type.args}, {"result", r.type.result}});
  return j;
}

Json grammar_json(const CompositionalGrammar& g) {
  Json j;
  j["name"] = g.name();
  j["semantics"] = g.semantics().name();
  j["categories"] = Json(std::vector<Name>(g.categories().begin(), g.categories().end()));
  j["basics"] = Json::array();
  for (const auto& [name, b] : g.basics())
    j["basics"].push_back({{"name", name},
                           {"category", b.category},
                           {"surface", b.surface},
                           {"meanings", std::vector<Name>(b.meanings.begin(), b.meanings.end())}});
  j["rules"] = Json::array();
  for (const auto& [name, r] : g.rules()) {
    Json pattern = Json::array();
    for (const auto& item : r.pattern) {
      if (const auto* tok = std::get_if<Token>(&item))
        pattern.push_back(*tok);
      else
        pattern.push_back("$" + std::to_string(std::get<Placeholder>(item).index));
    }
    j["rules"].push_back({{"name", name},
                          {"args", r.type.args},
                          {"result", r.type.result},
                          {"pattern", pattern},
                          {"meanings", std::vector<Name>(r.meanings.begin(), r.meanings.end())}});
  }
  return j;
}

Json correspondence_json(const CategoryCorrespondence& corr) {
  Json j = Json::array();
  for (const auto& [cat, img] : corr.images) {
    auto label = corr.labels.find(cat);
    j.push_back({{"category", cat},
                 {"image", std::vector<Name>(img.begin(), img.end())},
                 {"label", label == corr.labels.end() ? "conjunctive" : to_string(label->second)}});
  }
  return j;
}

int cmd_validate(const Config& cfg, std::ostream& out) {
  const bool json = cfg.format == "json";
  if (is_pair_path(cfg.input)) {
    auto pf = load_pair_file(cfg.input);
    if (json) {
      Json j;
      j["command"] = "validate";
      j["kind"] = "pair";
      j["semantics"] = semantics_json(pf.pair.semantics());
      j["grammars"] = Json::array({grammar_json(pf.pair.source()), grammar_json(pf.pair.target())});
      j["correspondence"] = pf.correspondence ? correspondence_json(*pf.correspondence) : Json();
      emit(out, j);
    } else {
      describe_semantics(pf.pair.semantics(), out);
      out << "source ";
      describe_grammar(pf.pair.source(), out);
      out << "target ";
      describe_grammar(pf.pair.target(), out);
      if (pf.correspondence)
        for (const auto& [cat, img] : pf.correspondence->images)
          out << "correspond " << cat << " -> " << join_set(img) << " "
              << to_string(pf.correspondence->label(cat)) << "\n";
    }
    return kExitOk;
  }
  std::vector<SemanticsPtr> external;
  if (!cfg.semantics_file.empty())
    external = load_grammar_file(read_file(cfg.semantics_file), cfg.semantics_file).semantics;
  auto file = load_grammar_file(read_file(cfg.input), cfg.input, external);
  if (json) {
    Json j;
    j["command"] = "validate";
    j["kind"] = "grammar-file";
    j["semantics"] = Json::array();
    for (const auto& s : file.semantics) j["semantics"].push_back(semantics_json(*s));
    j["grammars"] = Json::array();
    for (const auto& g : file.grammars) j["grammars"].push_back(grammar_json(g));
    j["correspondence"] = Json();
    emit(out, j);
  } else {
    for (const auto& s : file.semantics) describe_semantics(*s, out);
    for (const auto& g : file.grammars) describe_grammar(g, out);
  }
  return kExitOk;
}

// -- parse / translate ------------------------------------------------------

int cmd_parse(const Config& cfg, std::ostream& out) {
  auto loaded = load_grammar_for(cfg);
  if (!loaded.grammar) throw InputError("file declares no grammar", cfg.input);
  const auto& g = *loaded.grammar;
  ParseOptions opts;
  if (!cfg.category.empty()) opts.category = cfg.category;
  opts.max_trees = cfg.cap;
  const auto trees = morsynan(g, tokenize(cfg.utterance), opts);
  if (cfg.format == "json") {
    Json j = Json::array();
    for (const auto& t : trees) j.push_back(to_json(t));
    emit(out, j);
  } else {
    for (const auto& t : trees) out << to_text(t) << " : " << syn_cat(g, t) << "\n";
  }
  return kExitOk;
}

int cmd_translate(const Config& cfg, std::ostream& out) {
  const auto pf = load_pair_file(cfg.input);
  TranslateOptions opts;
  opts.parse.max_trees = cfg.cap;
  const auto trace = translate(pf.pair, tokenize(cfg.utterance), opts);
  if (cfg.format == "json") {
    Json j;
    j["command"] = "translate";
    j["source_utterance"] = utterance_json(trace.source_utterance);
    j["target_utterances"] = Json::array();
    for (const auto& u : trace.target_utterances) j["target_utterances"].push_back(utterance_json(u));
    if (cfg.trace) {
      j["source_trees"] = Json::array();
      for (const auto& t : trace.source_trees) j["source_trees"].push_back(to_json(t));
      j["sem_trees"] = Json::array();
      for (const auto& d : trace.sem_trees)
        j["sem_trees"].push_back({{"tree", to_json(d.tree)}, {"well_typed", d.well_typed}});
      j["target_trees"] = Json::array();
      for (const auto& t : trace.target_trees)
        j["target_trees"].push_back({{"tree", to_json(t.tree)}, {"well_formed", t.well_formed}});
    }
    emit(out, j);
    return kExitOk;
  }
  if (cfg.trace) {
    out << "source utterance: " << format_utterance(trace.source_utterance) << "\n";
    out << "source trees (" << trace.source_trees.size() << "):\n";
    for (const auto& t : trace.source_trees) out << "  " << to_text(t) << "\n";
    out << "semantic trees (" << trace.sem_trees.size() << "):\n";
    for (const auto& d : trace.sem_trees)
      out << "  " << to_text(d.tree) << (d.well_typed ? "" : "   [ill-typed]") << "\n";
    out << "target trees (" << trace.target_trees.size() << "):\n";
    for (const auto& t : trace.target_trees)
      out << "  " << to_text(t.tree) << (t.well_formed ? "" : "   [ill-formed]") << "\n";
    out << "target utterances (" << trace.target_utterances.size() << "):\n";
    for (const auto& u : trace.target_utterances) out << "  " << format_utterance(u) << "\n";
  } else {
    for (const auto& u : trace.target_utterances) out << format_utterance(u) << "\n";
  }
  return kExitOk;
}

// -- check / witness --------------------------------------------------------

Json violation_json(const Violation& v) {
  Json j;
  j["kind"] = to_string(v.kind);
  j["element"] = v.element;
  if (!v.interpretation.empty()) j["interpretation"] = v.interpretation;
  if (!v.tuple.empty()) j["tuple"] = v.tuple;
  if (!v.category.empty()) j["category"] = v.category;
  if (v.tree) j["tree"] = to_json(*v.tree);
  j["message"] = v.message;
  return j;
}

void print_report(const CompletenessReport& r, const Config& cfg, std::ostream& out) {
  if (cfg.format == "json") {
    Json j;
    j["command"] = "check";
    j["condition"] = to_string(r.condition);
    j["verdict"] = r.passed() ? "pass" : "fail";
    j["violations"] = Json::array();
    for (const auto& v : r.violations) j["violations"].push_back(violation_json(v));
    j["witness"] = r.witness ? to_json(*r.witness) : Json();
    j["correspondence"] = r.correspondence ? correspondence_json(*r.correspondence) : Json();
    emit(out, j);
    return;
  }
  out << "condition: " << to_string(r.condition) << "\n";
  out << "verdict: " << (r.passed() ? "pass" : "fail") << "\n";
  if (r.correspondence) {
    out << "category correspondence:\n";
    for (const auto& [cat, img] : r.correspondence->images) {
      out << "  " << cat << " -> " << join_set(img);
      if (auto it = r.correspondence->labels.find(cat); it != r.correspondence->labels.end())
        out << " " << to_string(it->second);
      out << "\n";
    }
  }
  if (!r.violations.empty()) {
    out << "violations (" << r.violations.size() << "):\n";
    for (const auto& v : r.violations) out << "  [" << to_string(v.kind) << "] " << v.message << "\n";
  }
  if (r.witness) out << "witness: " << to_text(*r.witness) << "\n";
}

int cmd_check(const Config& cfg, std::ostream& out) {
  const auto pf = load_pair_file(cfg.input);
  auto condition = cfg.condition;
  if (condition.empty()) condition = pf.correspondence ? "nn" : "n1";
  auto need_corr = [&]() -> const CategoryCorrespondence& {
    if (!pf.correspondence)
      throw InputError("condition '" + condition + "' needs 'correspond' lines", cfg.input);
    return *pf.correspondence;
  };
  CompletenessReport report{Condition::Homomorphism, {}, {}, {}};
  if (condition == "homomorphism")
    report = check_homomorphism(pf.pair);
  else if (condition == "n1")
    report = check_theorem1(pf.pair);
  else if (condition == "nn")
    report = check_theorem2(pf.pair, need_corr());
  else if (condition == "labels")
    report = validate_labels(pf.pair, need_corr(), cfg.depth);
  else
    throw InputError("unknown condition '" + condition + "'");
  print_report(report, cfg, out);
  return report.passed() ? kExitOk : kExitFail;
}

int cmd_witness(const Config& cfg, std::ostream& out) {
  const auto pf = load_pair_file(cfg.input);
  const auto w = find_incompleteness_witness(pf.pair, cfg.depth);
  if (cfg.format == "json") {
    Json j;
    j["command"] = "witness";
    j["depth"] = cfg.depth;
    j["witness"] = w ? to_json(*w) : Json();
    emit(out, j);
  } else {
    out << (w ? to_text(*w) : std::string("none")) << "\n";
  }
  return w ? kExitFail : kExitOk;
}

// -- enumerate --------------------------------------------------------------

int cmd_enumerate(const Config& cfg, std::ostream& out) {
  if (cfg.category.empty()) throw InputError("enumerate needs --cat");
  const bool json = cfg.format == "json";
  Json j = Json::array();

  if (cfg.semantic || cfg.random > 0) {
    SemanticsPtr sem;
    if (is_pair_path(cfg.input)) {
      sem = load_pair_file(cfg.input).pair.source().semantics_ptr();
    } else {
      auto loaded = load_grammar_for(cfg);
      if (loaded.grammar)
        sem = loaded.grammar->semantics_ptr();
      else if (loaded.file.semantics.size() == 1)
        sem = loaded.file.semantics.front();
      else
        throw InputError("cannot choose a semantic component", cfg.input);
    }
    std::vector<SemTree> trees;
    if (cfg.random > 0) {
      for (std::size_t i = 0; i < cfg.random; ++i)
        if (auto d = random_sem_tree(*sem, cfg.category, cfg.depth, cfg.seed + i))
          trees.push_back(std::move(*d));
    } else {
      trees = enumerate_sem_trees(*sem, cfg.category, cfg.depth);
    }
    for (const auto& d : trees) {
      if (json)
        j.push_back(to_json(d));
      else
        out << to_text(d) << "\n";
    }
  } else {
    std::optional<PairFile> pf;
    const CompositionalGrammar* g = nullptr;
    LoadedGrammar loaded;
    if (is_pair_path(cfg.input)) {
      pf.emplace(load_pair_file(cfg.input));
      g = &pf->pair.source();
    } else {
      loaded = load_grammar_for(cfg);
      g = loaded.grammar;
      if (!g) throw InputError("file declares no grammar", cfg.input);
    }
    for (const auto& t : enumerate_syn_trees(*g, cfg.category, cfg.depth)) {
      if (json)
        j.push_back(to_json(t));
      else
        out << to_text(t) << "\n";
    }
  }
  if (json) emit(out, j);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compositional translation over CFG-based compositional grammars", "compo"};
  app.require_subcommand(0, 1);
  Config cfg;
  bool version = false;
  app.add_flag("--version", version, "Print tool and format versions");

  const auto formats = CLI::IsMember({"text", "json"});
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(formats);
  };

  auto* validate = app.add_subcommand("validate", "Load and validate a grammar or pair file");
  validate->add_option("file", cfg.input, "Grammar (.cg) or pair (.cgp) file")->required();
  validate->add_option("--semantics", cfg.semantics_file, "File supplying semantics blocks");
  add_common(validate);

  auto* parse = app.add_subcommand("parse", "All derivation trees of an utterance");
  parse->add_option("file", cfg.input, "Grammar file")->required();
  parse->add_option("--utterance", cfg.utterance, "Whitespace-separated tokens")->required();
  parse->add_option("--cat", cfg.category, "Keep only trees of this category");
  parse->add_option("--grammar", cfg.grammar_name, "Grammar block to use");
  parse->add_option("--semantics", cfg.semantics_file, "File supplying semantics blocks");
  parse->add_option("--cap", cfg.cap, "Maximum number of derivation trees")
      ->check(CLI::PositiveNumber);
  add_common(parse);

  auto* trans = app.add_subcommand("translate", "Translate an utterance through the interlingua");
  trans->add_option("pair", cfg.input, "Pair file")->required();
  trans->add_option("--utterance", cfg.utterance, "Whitespace-separated tokens")->required();
  trans->add_flag("--trace", cfg.trace, "Show every pipeline stage");
  trans->add_option("--cap", cfg.cap, "Maximum number of source derivation trees")
      ->check(CLI::PositiveNumber);
  add_common(trans);

  auto* check = app.add_subcommand("check", "Check a completeness condition");
  check->add_option("pair", cfg.input, "Pair file")->required();
  check->add_option("--condition", cfg.condition, "Condition to check (default nn if the pair "
                                                  "declares correspondences, else n1)")
      ->check(CLI::IsMember({"homomorphism", "n1", "nn", "labels"}));
  check->add_option("--depth", cfg.depth, "Depth bound for label validation")
      ->check(CLI::PositiveNumber);
  add_common(check);

  auto* witness = app.add_subcommand("witness", "Search for an incompleteness witness");
  witness->add_option("pair", cfg.input, "Pair file")->required();
  witness->add_option("--depth", cfg.depth, "Depth bound")->required()->check(CLI::PositiveNumber);
  add_common(witness);

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate derivation trees up to a depth");
  enumerate->add_option("file", cfg.input, "Grammar or pair file")->required();
  enumerate->add_option("--cat", cfg.category, "Category to enumerate")->required();
  enumerate->add_option("--depth", cfg.depth, "Depth bound")->check(CLI::PositiveNumber);
  enumerate->add_option("--grammar", cfg.grammar_name, "Grammar block to use");
  enumerate->add_option("--semantics", cfg.semantics_file, "File supplying semantics blocks");
  enumerate->add_flag("--semantic", cfg.semantic, "Enumerate well-typed semantic trees");
  enumerate->add_option("--random", cfg.random, "Draw this many random semantic trees instead");
  enumerate->add_option("--seed", cfg.seed, "Seed of the first random draw");
  add_common(enumerate);

  try {
    cfg.cap = default_cap();
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  if (version) {
    out << "compo " << kToolVersion << " (grammar format " << kGrammarFormatVersion
        << ", pair format " << kPairFormatVersion << ", report schema " << kReportSchemaVersion
        << ")\n";
    return kExitOk;
  }

  try {
    if (validate->parsed()) return cmd_validate(cfg, out);
    if (parse->parsed()) return cmd_parse(cfg, out);
    if (trans->parsed()) return cmd_translate(cfg, out);
    if (check->parsed()) return cmd_check(cfg, out);
    if (witness->parsed()) return cmd_witness(cfg, out);
    if (enumerate->parsed()) return cmd_enumerate(cfg, out);
    out << app.help();
    return kExitInput;
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace compo
