#include <catch2/catch_amalgamated.hpp>

#include "cfgkit/equivalence.hpp"
#include "cfgkit/transform.hpp"

using namespace cfgkit;

namespace {

Grammar ab_grammar() {
  Grammar g;
  g.nonterminals = {Symbol::nt("S'"), Symbol::nt("A"), Symbol::nt("B")};
  g.terminals = {Symbol::t("a"), Symbol::t("b")};
  g.start = Symbol::nt("S'");
  g.rules = {
      Rule{Symbol::nt("S'"), {Symbol::t("a"), Symbol::nt("S'")}},
      Rule{Symbol::nt("S'"), {Symbol::t("b")}},
  };
  return g;
}

Grammar b_only_grammar() {
  Grammar g;
  g.nonterminals = {Symbol::nt("S")};
  g.terminals = {Symbol::t("a"), Symbol::t("b")};
  g.start = Symbol::nt("S");
  g.rules = {Rule{Symbol::nt("S"), {Symbol::t("b")}}};
  return g;
}

}  // namespace

TEST_CASE("a grammar is equivalent to its own simplification") {
  const Grammar g = ab_grammar();
  const PipelineResult out = simplify_pipeline(g);
  const EquivVerdict v = bounded_equiv(g, out.grammar, 6);
  CHECK(v.status == EquivStatus::equivalent_up_to_bound);
  CHECK(v.bound == 6);
  CHECK(v.first_complete);
  CHECK(v.second_complete);
  CHECK_FALSE(v.counterexample.has_value());
}

TEST_CASE("a missing word is found with a verified trace") {
  const Grammar g1 = ab_grammar();
  const Grammar g2 = b_only_grammar();
  const EquivVerdict v = bounded_equiv(g1, g2, 3);
  REQUIRE(v.status == EquivStatus::inequivalent);
  REQUIRE(v.counterexample.has_value());
  const Counterexample& ce = *v.counterexample;
  CHECK(ce.produced_by == Side::first);
  CHECK(ce.word == Sentence{Symbol::t("a"), Symbol::t("b")});
  CHECK(replay(g1, ce.trace) == SententialForm(ce.word.begin(), ce.word.end()));
}

TEST_CASE("counterexamples on the second side are reported symmetrically") {
  const EquivVerdict v = bounded_equiv(b_only_grammar(), ab_grammar(), 3);
  REQUIRE(v.status == EquivStatus::inequivalent);
  REQUIRE(v.counterexample.has_value());
  CHECK(v.counterexample->produced_by == Side::second);
  CHECK(v.counterexample->word == Sentence{Symbol::t("a"), Symbol::t("b")});
}

TEST_CASE("the empty word can be the counterexample") {
  Grammar g1;
  g1.nonterminals = {Symbol::nt("S")};
  g1.terminals = {Symbol::t("a")};
  g1.start = Symbol::nt("S");
  g1.rules = {Rule{Symbol::nt("S"), {}}};
  Grammar g2 = g1;
  g2.rules = {Rule{Symbol::nt("S"), {Symbol::t("a")}}};
  const EquivVerdict v = bounded_equiv(g1, g2, 1);
  REQUIRE(v.status == EquivStatus::inequivalent);
  REQUIRE(v.counterexample.has_value());
  CHECK(v.counterexample->word.empty());
  CHECK(v.counterexample->produced_by == Side::first);
}

TEST_CASE("mismatched terminal alphabets are rejected") {
  Grammar g1 = ab_grammar();
  Grammar g2 = b_only_grammar();
  g2.terminals = {Symbol::t("b")};
  try {
    bounded_equiv(g1, g2, 3);
    FAIL("expected an alphabet mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::terminal_alphabet_mismatch);
  }
}

TEST_CASE("terminal alphabets compare as name sets") {
  Grammar g1 = ab_grammar();
  Grammar g2 = b_only_grammar();
  g2.terminals = {Symbol::t("b"), Symbol::t("a")};  // same names, other order
  CHECK(bounded_equiv(g1, g2, 3).status == EquivStatus::inequivalent);
}

TEST_CASE("capped searches yield inconclusive instead of a verdict") {
  Grammar g;
  g.nonterminals = {Symbol::nt("S")};
  g.terminals = {Symbol::t("a")};
  g.start = Symbol::nt("S");
  g.rules = {
      Rule{Symbol::nt("S"), {Symbol::nt("S"), Symbol::nt("S")}},
      Rule{Symbol::nt("S"), {Symbol::t("a")}},
  };
  const SearchCaps tight{12, 3, 40};
  const EquivVerdict v = bounded_equiv(g, g, 4, tight);
  CHECK(v.status == EquivStatus::inconclusive);
  CHECK_FALSE(v.first_complete);
  CHECK_FALSE(v.second_complete);
}
