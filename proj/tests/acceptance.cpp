// Acceptance suite: one PASS/FAIL line per criterion.
//
// usage: compo_acceptance <path-to-compo-binary>

#include <array>
#include <map>
#include <tuple>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"

using namespace compo;
using namespace compo::test;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void criterion(int id, const std::string& title, double limit_s,
               const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (limit_s > 0 && secs >= limit_s) o.require(false, "took longer than the time limit");
  if (!o.ok) ++failures;
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(3);
  line << (o.ok ? "PASS" : "FAIL") << " " << id << " " << title << " (" << secs << " s";
  if (limit_s > 0) line << ", limit " << limit_s << " s";
  line << ")";
  if (!o.ok) line << ": " << o.detail;
  std::cout << line.str() << std::endl;
}

std::string run_capture(const std::string& command, int& status) {
  std::string out;
  FILE* p = ::popen(command.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  status = ::pclose(p);
  return out;
}

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

/// Every source utterance generable within `depth`.
std::set<Utterance> generable(const CompositionalGrammar& g, std::size_t depth) {
  std::set<Utterance> out;
  for (const auto& t : oracle_all_syn_trees(g, depth)) out.insert(oracle_generate(g, t));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: compo_acceptance <compo-binary>\n";
    return 2;
  }
  const std::string cli = argv[1];

  criterion(1, "paper-example loads with the five table constructs", 1.0, [](Outcome& o) {
    const auto g = paper_example();
    o.require(g.rules().size() == 3 && g.basics().size() == 2, "construct count");
    const std::vector<std::tuple<std::string, std::string, std::set<Name>>> rules{
        {"R1", "⟨⟨B,C⟩,A⟩", {"M1"}},
        {"R2", "⟨⟨B⟩,A⟩", {"M2a", "M2b"}},
        {"R3", "⟨⟨B,C⟩,A⟩", {"M3a", "M3b"}}};
    for (const auto& [name, type, meanings] : rules) {
      const auto* r = g.find_rule(name);
      o.require(r && format_rule_type(r->type) == type, name + " type");
      o.require(r && r->meanings == meanings, name + " interpretation");
    }
    o.require(g.basic("b").category == "B" && g.basic("b").meanings == std::set<Name>{"m1"}, "b");
    o.require(g.basic("c").category == "C" &&
                  g.basic("c").meanings == std::set<Name>{"m2a", "m2b"},
              "c");
  });

  criterion(2, "enfr-np passes the N-N check with its labels and fails N-1", 1.0, [](Outcome& o) {
    const auto pf = pair("enfr-np.cgp");
    o.require(pf.correspondence.has_value(), "correspondence present");
    const auto& corr = *pf.correspondence;
    o.require(corr.label("DET") == Label::Conjunctive, "DET conjunctive");
    o.require(corr.label("N") == Label::Disjunctive, "N disjunctive");
    o.require(corr.label("NP") == Label::Conjunctive, "NP conjunctive");
    o.require(check_theorem2(pf.pair, corr).passed(), "nn passes");
    o.require(!check_theorem1(pf.pair).passed(), "n1 fails");
  });

  criterion(3, "identity pair: every source-well-formed tree translates", 30.0, [](Outcome& o) {
    const auto pf = pair("identity.cgp");
    o.require(check_theorem1(pf.pair).passed(), "theorem 1 check passes");
    const auto& sem = pf.pair.semantics();
    std::size_t checked = 0;
    for (const auto& c : sem.categories())
      for (const auto& d : enumerate_sem_trees(sem, c, 6)) {
        if (!is_source_well_formed(pf.pair.source(), d)) continue;
        ++checked;
        o.require(!translate_sem(pf.pair, d).empty(), "no translation for " + to_text(d));
      }
    o.require(checked > 0, "nothing enumerated");
    const std::vector<Name> cats(sem.categories().begin(), sem.categories().end());
    std::size_t drawn = 0;
    for (std::uint64_t seed = 0; drawn < 500 && seed < 100000; ++seed) {
      auto d = random_sem_tree(sem, cats[seed % cats.size()], 8, seed);
      if (!d || !is_source_well_formed(pf.pair.source(), *d)) continue;
      ++drawn;
      o.require(!translate_sem(pf.pair, *d).empty(), "no translation for " + to_text(*d));
    }
    o.require(drawn == 500, "could not draw 500 random trees");
  });

  criterion(4, "enfr-np: every source-well-formed tree to depth 4 translates", 10.0,
            [](Outcome& o) {
              const auto pf = pair("enfr-np.cgp");
              o.require(check_theorem2(pf.pair, *pf.correspondence).passed(), "nn check");
              o.require(validate_labels(pf.pair, *pf.correspondence, 6).passed(), "labels");
              const auto& sem = pf.pair.semantics();
              std::size_t checked = 0;
              for (const auto& c : sem.categories())
                for (const auto& d : enumerate_sem_trees(sem, c, 4)) {
                  if (!is_source_well_formed(pf.pair.source(), d)) continue;
                  ++checked;
                  o.require(!translate_sem(pf.pair, d).empty(), "no translation for " + to_text(d));
                }
              o.require(checked > 0, "nothing enumerated");
            });

  criterion(5, "enfr-np-broken: N-N check fails at <N'f> and a witness exists", 5.0,
            [](Outcome& o) {
              const auto pf = pair("enfr-np-broken.cgp");
              const auto r = check_theorem2(pf.pair, *pf.correspondence);
              o.require(!r.passed(), "nn check fails");
              bool cited = false;
              for (const auto& v : r.violations)
                cited = cited || (v.kind == ViolationKind::RuleCoverage &&
                                  v.tuple == std::vector<Name>{"N'f"});
              o.require(cited, "violation cites tuple <N'f>");
              const auto w = find_incompleteness_witness(pf.pair, 3);
              o.require(w && to_text(*w) == "M1(def, maison)", "witness M1(def, maison)");
              o.require(w && translate_sem(pf.pair, *w).empty(), "witness has no translation");
            });

  criterion(6, "parser agrees with brute force on all fixture grammars to depth 5", 60.0,
            [](Outcome& o) {
              std::vector<GrammarFile> files;
              for (const auto* f : {"paper-example.cg", "enfr-np.cg", "enfr-adj.cg"})
                files.push_back(load_grammar_file(read_file(fixture(f)), fixture(f)));
              std::size_t mismatches = 0, trees = 0, utterances = 0;
              for (const auto& file : files)
                for (const auto& g : file.grammars) {
                  std::map<Utterance, std::set<SynTree>> inverse;
                  for (const auto& t : oracle_all_syn_trees(g, 5)) {
                    ++trees;
                    const auto e = morsyngen(g, t);
                    inverse[e].insert(t);
                    const auto parses = morsynan(g, e);
                    if (!std::binary_search(parses.begin(), parses.end(), t)) ++mismatches;
                  }
                  for (const auto& [e, want] : inverse) {
                    ++utterances;
                    const auto got = morsynan(g, e);
                    if (std::set<SynTree>(got.begin(), got.end()) != want) ++mismatches;
                  }
                }
              o.require(trees > 0 && utterances > 0, "nothing checked");
              o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
            });

  criterion(7, "syntactic and utterance completeness on the complete pairs", 0, [](Outcome& o) {
    std::size_t failures = 0, checked = 0;
    for (const auto* name : {"identity.cgp", "enfr-np.cgp"}) {
      const auto pf = pair(name);
      for (const auto& e : generable(pf.pair.source(), 4)) {
        ++checked;
        for (const auto& t : morsynan(pf.pair.source(), e)) {
          bool any = false;
          for (const auto& d : seman(pf.pair.source(), t))
            any = any || !translate_sem(pf.pair, d).empty();
          failures += !any;
        }
        failures += translate(pf.pair, e).target_utterances.empty();
      }
    }
    o.require(checked > 0, "nothing checked");
    o.require(failures == 0, std::to_string(failures) + " failures");
  });

  criterion(8, "every CLI command is byte-identical across two runs", 0, [&](Outcome& o) {
    std::vector<std::string> commands;
    const std::vector<std::string> grammars{"paper-example.cg", "enfr-np.cg", "enfr-adj.cg",
                                            "enfr-np-hom.cg"};
    const std::vector<std::string> pairs = pair_fixtures();
    const std::string shared = " --semantics " + quote(fixture("enfr-np.cg"));
    for (const auto& fmt : {"text", "json"}) {
      const std::string f = std::string(" --format ") + fmt;
      for (const auto& g : grammars) commands.push_back("validate " + quote(fixture(g)) + f);
      for (const auto* g : {"enfr-np-broken.cg", "enfr-np-masc.cg"})
        commands.push_back("validate " + quote(fixture(g)) + shared + f);
      for (const auto& p : pairs) {
        const auto q = quote(fixture(p));
        const std::string cat = p == "identity.cgp" ? "A" : "NP";
        commands.push_back("validate " + q + f);
        commands.push_back("check " + q + " --condition homomorphism" + f);
        commands.push_back("check " + q + " --condition n1" + f);
        if (p != "identity.cgp") {
          commands.push_back("check " + q + " --condition nn" + f);
          commands.push_back("check " + q + " --condition labels --depth 4" + f);
        }
        commands.push_back("witness " + q + " --depth 4" + f);
        commands.push_back("enumerate " + q + " --cat " + cat + " --depth 4" + f);
        commands.push_back("enumerate " + q + " --cat " + cat + " --depth 4 --semantic" + f);
        commands.push_back("enumerate " + q + " --cat " + cat +
                           " --depth 6 --random 20 --seed 42" + f);
      }
      commands.push_back("parse " + quote(fixture("paper-example.cg")) + " --utterance 'e c b'" + f);
      commands.push_back("parse " + quote(fixture("enfr-adj.cg")) +
                         " --grammar fr --utterance 'la maison noire grande'" + f);
      commands.push_back("translate " + quote(fixture("identity.cgp")) +
                         " --utterance 'a b d' --trace" + f);
      commands.push_back("translate " + quote(fixture("enfr-np.cgp")) +
                         " --utterance 'the house' --trace" + f);
      commands.push_back("translate " + quote(fixture("enfr-adj.cgp")) +
                         " --utterance 'the big black cat'" + f);
    }
    commands.push_back("--version");
    for (const auto& c : commands) {
      const auto full = quote(cli) + " " + c + " 2>&1";
      int s1 = 0, s2 = 0;
      const auto a = run_capture(full, s1);
      const auto b = run_capture(full, s2);
      o.require(!a.empty(), "no output from: " + c);
      o.require(a == b && s1 == s2, "output differs for: " + c);
    }
  });

  return failures == 0 ? 0 : 1;
}
