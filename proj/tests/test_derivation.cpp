#include <doctest.h>

#include "support.hpp"

using namespace compo;
using namespace compo::test;

namespace {

SynTree L(const char* n) { return SynTree::leaf(n); }
SynTree N(const char* n, std::vector<SynTree> kids) { return SynTree::node(n, std::move(kids)); }
SemTree l(const char* n) { return SemTree::leaf(n); }
SemTree n(const char* name, std::vector<SemTree> kids) { return SemTree::node(name, std::move(kids)); }

}  // namespace

TEST_SUITE("derivation") {
  TEST_CASE("syntactic categories") {
    const auto g = paper_example();
    CHECK(syn_cat(g, L("b")) == "B");
    CHECK(syn_cat(g, N("R2", {L("b")})) == "A");
    CHECK(syn_cat(g, N("R1", {L("b")})) == "A");
    CHECK_THROWS_AS(syn_cat(g, L("zz")), UnknownNameError);
  }

  TEST_CASE("CFG well-formedness") {
    const auto g = paper_example();
    CHECK(is_cfg_well_formed(g, L("b")));
    CHECK(is_cfg_well_formed(g, N("R1", {L("b"), L("c")})));
    CHECK_FALSE(is_cfg_well_formed(g, N("R1", {L("c"), L("b")})));
    CHECK_FALSE(is_cfg_well_formed(g, N("R1", {L("b")})));
    CHECK_FALSE(is_cfg_well_formed(g, N("R2", {N("R2", {L("b")})})));
  }

  TEST_CASE("semantic categories and typing") {
    const auto g = paper_example();
    const auto& s = g.semantics();
    CHECK(sem_cat(s, l("m1")) == "B");
    CHECK(sem_cat(s, n("M1", {l("m1"), l("m2a")})) == "A");
    CHECK(sem_cat(s, n("M2a", {l("m1")})) == "A");
    CHECK(is_sem_well_typed(s, l("m1")));
    CHECK(is_sem_well_typed(s, n("M1", {l("m1"), l("m2b")})));
    CHECK_FALSE(is_sem_well_typed(s, n("M1", {l("m2a"), l("m1")})));
  }

  TEST_CASE("syntactic enumeration examples") {
    const auto g = paper_example();
    CHECK(texts(enumerate_syn_trees(g, "B", 1)) == std::vector<std::string>{"b"});
    CHECK(enumerate_syn_trees(g, "A", 1).empty());
    CHECK(texts(enumerate_syn_trees(g, "A", 2)) ==
          std::vector<std::string>{"R1(b, c)", "R2(b)", "R3(b, c)"});
    CHECK(enumerate_syn_trees(g, "A", 0).empty());
  }

  TEST_CASE("semantic enumeration examples") {
    const auto g = paper_example();
    CHECK(texts(enumerate_sem_trees(g.semantics(), "B", 1)) == std::vector<std::string>{"m1"});
    CHECK(texts(enumerate_sem_trees(g.semantics(), "A", 2)) ==
          std::vector<std::string>{"M1(m1, m2a)", "M1(m1, m2b)", "M2a(m1)", "M2b(m1)",
                                   "M3a(m1, m2a)", "M3a(m1, m2b)", "M3b(m1, m2a)",
                                   "M3b(m1, m2b)"});
    const auto enfr = enfr_file();
    CHECK(texts(enumerate_sem_trees(*enfr.semantics.front(), "NP", 2)) ==
          std::vector<std::string>{"M1(def, cat)", "M1(def, maison)"});
  }

  TEST_CASE("enumeration agrees with the recursive oracle") {
    const auto adj = load_grammar_file(read_file(fixture("enfr-adj.cg")), "adj.cg");
    std::vector<const CompositionalGrammar*> grammars;
    const auto pe = paper_example();
    grammars.push_back(&pe);
    for (const auto& g : adj.grammars) grammars.push_back(&g);
    for (const auto* g : grammars) {
      for (std::size_t k = 1; k <= 5; ++k)
        for (const auto& c : g->categories()) {
          INFO(g->name() << " " << c << " depth " << k);
          const auto got = enumerate_syn_trees(*g, c, k);
          const auto want = oracle_syn_trees(*g, c, k);
          CHECK(std::set<SynTree>(got.begin(), got.end()) == want);
          CHECK(got.size() == want.size());
          CHECK(std::is_sorted(got.begin(), got.end()));
          for (const auto& t : got) CHECK(is_cfg_well_formed(*g, t));
        }
      for (std::size_t k = 1; k <= 5; ++k)
        for (const auto& c : g->semantics().categories()) {
          const auto got = enumerate_sem_trees(g->semantics(), c, k);
          const auto want = oracle_sem_trees(g->semantics(), c, k);
          CHECK(std::set<SemTree>(got.begin(), got.end()) == want);
          for (const auto& d : got) CHECK(is_sem_well_typed(g->semantics(), d));
        }
    }
  }

  TEST_CASE("monotone in the depth bound") {
    const auto adj = load_grammar_file(read_file(fixture("enfr-adj.cg")), "adj.cg");
    for (const auto& g : adj.grammars)
      for (const auto& c : g.categories())
        for (std::size_t k = 1; k < 5; ++k) {
          const auto small = enumerate_syn_trees(g, c, k);
          const auto big = enumerate_syn_trees(g, c, k + 1);
          CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
        }
  }

  TEST_CASE("every enumerated tree has a non-empty seman image") {
    const auto g = paper_example();
    for (const auto& c : g.categories())
      for (const auto& t : enumerate_syn_trees(g, c, 4)) CHECK_FALSE(seman(g, t).empty());
  }

  TEST_CASE("enumeration cap") {
    const auto adj = load_grammar_file(read_file(fixture("enfr-adj.cg")), "adj.cg");
    const auto& s = *adj.semantics.front();
    const auto all = enumerate_sem_trees(s, "N", 4);
    CHECK_NOTHROW(enumerate_sem_trees(s, "N", 4, all.size()));
    CHECK_THROWS_AS(enumerate_sem_trees(s, "N", 4, all.size() - 1), ResourceLimitError);
  }

  TEST_CASE("random trees") {
    const auto g = paper_example();
    const auto& s = g.semantics();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto d = random_sem_tree(s, "B", 1, seed);
      REQUIRE(d);
      CHECK(to_text(*d) == "m1");
      CHECK_FALSE(random_sem_tree(s, "A", 1, seed));
    }

    const auto adj = load_grammar_file(read_file(fixture("enfr-adj.cg")), "adj.cg");
    const auto& as = *adj.semantics.front();
    const auto pool = enumerate_sem_trees(as, "NP", 5);
    std::set<SemTree> seen;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      auto d = random_sem_tree(as, "NP", 5, seed);
      REQUIRE(d);
      CHECK(is_sem_well_typed(as, *d));
      CHECK(d->depth() <= 5);
      CHECK(std::binary_search(pool.begin(), pool.end(), *d));
      CHECK(*d == *random_sem_tree(as, "NP", 5, seed));
      seen.insert(*d);
    }
    CHECK(seen.size() > 10);
  }

  TEST_CASE("text round trip") {
    const auto g = paper_example();
    for (std::size_t k = 1; k <= 4; ++k)
      for (const auto& c : g.categories())
        for (const auto& t : enumerate_syn_trees(g, c, k)) {
          CHECK(parse_syn_tree(to_text(t)) == t);
          CHECK(syn_tree_from_json(to_json(t)) == t);
        }
    for (const auto& d : enumerate_sem_trees(g.semantics(), "A", 3)) {
      CHECK(parse_sem_tree(to_text(d)) == d);
      CHECK(sem_tree_from_json(to_json(d)) == d);
    }
    CHECK(to_text(N("R", {})) == "R()");
    CHECK(parse_syn_tree("R()") == N("R", {}));
    CHECK(parse_syn_tree("R'1a( le ,chat )") == N("R'1a", {L("le"), L("chat")}));
  }

  TEST_CASE("JSON form") {
    const auto t = N("R1", {L("b"), L("c")});
    CHECK(to_json(t).dump() ==
          R"({"rule":"R1","children":[{"basic":"b"},{"basic":"c"}]})");
    CHECK(to_json(n("M1", {l("def"), l("cat")})).dump() ==
          R"({"mrule":"M1","children":[{"meaning":"def"},{"meaning":"cat"}]})");
    CHECK_THROWS_AS(syn_tree_from_json(nlohmann::json::parse(R"({"mrule":"M1"})")), InputError);
  }

  TEST_CASE("malformed tree text") {
    CHECK_THROWS_AS(parse_syn_tree("R1(b, "), InputError);
    CHECK_THROWS_AS(parse_syn_tree("R1(b c)"), InputError);
    CHECK_THROWS_AS(parse_syn_tree(""), InputError);
    CHECK_THROWS_AS(parse_syn_tree("b)"), InputError);
  }

  TEST_CASE("canonical order and geometry") {
    std::vector<SynTree> ts{L("c"), L("b"), N("R1", {L("b"), L("c")}), L("b")};
    canonicalize(ts);
    CHECK(texts(ts) == std::vector<std::string>{"R1(b, c)", "b", "c"});
    CHECK(same_geometry(N("R1", {L("b"), L("c")}), n("M1", {l("x"), l("y")})));
    CHECK_FALSE(same_geometry(N("R1", {L("b"), L("c")}), n("M1", {l("x")})));
    CHECK(N("R1", {L("b"), N("R2", {L("b")})}).depth() == 3);
    CHECK(N("R1", {L("b"), N("R2", {L("b")})}).size() == 4);
  }
}
