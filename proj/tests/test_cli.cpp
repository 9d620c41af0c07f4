#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "compo/cli.hpp"
#include "support.hpp"

using namespace compo;
using namespace compo::test;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::string(COMPO_BINARY_DIR) + "/" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("check enfr-np nn passes") {
    const auto r = run({"check", fixture("enfr-np.cgp"), "--condition", "nn"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "verdict: pass"));
    CHECK(contains(r.out, "DET -> {DET'f, DET'm} conjunctive"));
    CHECK(contains(r.out, "N -> {N'f, N'm} disjunctive"));
  }

  TEST_CASE("check enfr-np n1 fails") {
    const auto r = run({"check", fixture("enfr-np.cgp"), "--condition", "n1"});
    CHECK(r.code == 1);
    CHECK(contains(r.out, "verdict: fail"));
  }

  TEST_CASE("default condition") {
    CHECK(contains(run({"check", fixture("enfr-np.cgp")}).out, "condition: nn"));
    CHECK(contains(run({"check", fixture("identity.cgp")}).out, "condition: n1"));
    CHECK(run({"check", fixture("identity.cgp"), "--condition", "nn"}).code == 2);
  }

  TEST_CASE("translate identity") {
    const auto r = run({"translate", fixture("identity.cgp"), "--utterance", "a b d"});
    CHECK(r.code == 0);
    CHECK(r.out == "a b d\n");
  }

  TEST_CASE("witness") {
    const auto r = run({"witness", fixture("enfr-np-broken.cgp"), "--depth", "3"});
    CHECK(r.code == 1);
    CHECK(r.out == "M1(def, maison)\n");
    const auto none = run({"witness", fixture("enfr-np.cgp"), "--depth", "3"});
    CHECK(none.code == 0);
    CHECK(none.out == "none\n");
    const auto js = run({"witness", fixture("enfr-np-broken.cgp"), "--depth", "3", "--format", "json"});
    const auto j = nlohmann::json::parse(js.out);
    CHECK(j["witness"]["mrule"] == "M1");
    CHECK(j["depth"] == 3);
  }

  TEST_CASE("parse") {
    const auto r = run({"parse", fixture("paper-example.cg"), "--utterance", "e c b"});
    CHECK(r.code == 0);
    CHECK(r.out == "R3(b, c) : A\n");
    const auto js = run({"parse", fixture("paper-example.cg"), "--utterance", "e c b", "--format", "json"});
    CHECK(nlohmann::json::parse(js.out) ==
          nlohmann::json::parse(R"([{"rule":"R3","children":[{"basic":"b"},{"basic":"c"}]}])"));
    const auto filtered = run({"parse", fixture("paper-example.cg"), "--utterance", "b", "--cat", "A"});
    CHECK(filtered.code == 0);
    CHECK(filtered.out.empty());
  }

  TEST_CASE("parse with several grammars needs a selector") {
    CHECK(run({"parse", fixture("enfr-np.cg"), "--utterance", "le chat"}).code == 2);
    const auto r = run({"parse", fixture("enfr-np.cg"), "--grammar", "fr", "--utterance", "le chat"});
    CHECK(r.code == 0);
    CHECK(r.out == "R'1a(le, chat) : NP'\n");
  }

  TEST_CASE("validate lists types in bracket notation") {
    const auto r = run({"validate", fixture("paper-example.cg")});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "R1 : ⟨⟨B,C⟩,A⟩"));
    CHECK(contains(r.out, "R2 : ⟨⟨B⟩,A⟩"));
    CHECK(contains(r.out, "b : B    {m1}"));
    CHECK(run({"validate", fixture("enfr-np.cgp")}).code == 0);
  }

  TEST_CASE("input errors exit 2 with file position") {
    const auto bad = temp_file("bad.cg", "semantics s\n  semcat A\n  meaning m A\n");
    const auto r = run({"validate", bad});
    CHECK(r.code == 2);
    CHECK(contains(r.err, "bad.cg:3:"));
    CHECK(run({"validate", "/nonexistent.cg"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"witness", fixture("enfr-np.cgp")}).code == 2);
    CHECK(run({"witness", fixture("enfr-np.cgp"), "--depth", "0"}).code == 2);
  }

  TEST_CASE("cap exceeded exits 3") {
    const auto g = temp_file("amb.cg",
                             "semantics s\n  semcat S\n  meaning x : S\n  mrule M : ( S S ) -> S\n"
                             "grammar g uses s\n  syncat S\n  rule R : ( S S ) -> S = $1 $2 => M\n"
                             "  basic x : S = \"x\" => x\n");
    CHECK(run({"parse", g, "--utterance", "x x x x x x"}).code == 0);
    const auto r = run({"parse", g, "--utterance", "x x x x x x", "--cap", "10"});
    CHECK(r.code == 3);
    CHECK(contains(r.err, "error:"));

    ::setenv("COMPO_AMBIGUITY_CAP", "10", 1);
    CHECK(run({"parse", g, "--utterance", "x x x x x x"}).code == 3);
    CHECK(run({"parse", g, "--utterance", "x x x x x x", "--cap", "100"}).code == 0);
    ::setenv("COMPO_AMBIGUITY_CAP", "nonsense", 1);
    CHECK(run({"parse", g, "--utterance", "x"}).code == 2);
    ::unsetenv("COMPO_AMBIGUITY_CAP");
  }

  TEST_CASE("enumerate") {
    const auto r = run({"enumerate", fixture("paper-example.cg"), "--cat", "A", "--depth", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == "R1(b, c)\nR2(b)\nR3(b, c)\n");
    const auto s = run({"enumerate", fixture("enfr-np.cgp"), "--cat", "NP", "--depth", "2", "--semantic"});
    CHECK(s.out == "M1(def, cat)\nM1(def, maison)\n");
    const auto a = run({"enumerate", fixture("enfr-adj.cgp"), "--cat", "NP", "--depth", "5",
                        "--random", "10", "--seed", "3"});
    const auto b = run({"enumerate", fixture("enfr-adj.cgp"), "--cat", "NP", "--depth", "5",
                        "--random", "10", "--seed", "3"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }

  TEST_CASE("version") {
    const auto r = run({"--version"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, kToolVersion));
    CHECK(contains(r.out, "grammar format 1"));
  }

  TEST_CASE("help exits 0") {
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "witness"));
  }

  TEST_CASE("translate trace JSON mirrors the trace") {
    const auto r = run({"translate", fixture("enfr-np.cgp"), "--utterance", "the house", "--trace",
                        "--format", "json"});
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["source_utterance"] == "the house");
    CHECK(j["target_utterances"] == nlohmann::json::array({"la maison"}));
    CHECK(j["source_trees"].size() == 1);
    CHECK(j["sem_trees"][0]["well_typed"] == true);
    CHECK(j["target_trees"].size() == 4);
  }
}
