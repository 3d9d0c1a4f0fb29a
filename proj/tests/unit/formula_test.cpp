#include <gtest/gtest.h>

#include "infectio/error.hpp"
#include "infectio/formula.hpp"
#include "oracle.hpp"

using namespace infectio;
namespace ts = infectio::testing;

namespace {

const Formula p = Formula::var("p");
const Formula q = Formula::var("q");
const Formula r = Formula::var("r");

}  // namespace

TEST(Formula, ParsesPrecedence) {
  EXPECT_EQ(parse_formula("p | q & r"), p | (q & r));
  EXPECT_EQ(parse_formula("~p & q"), (~p) & q);
  EXPECT_EQ(parse_formula("~(p & q)"), ~(p & q));
  EXPECT_EQ(parse_formula("p & q & r"), (p & q) & r);
  EXPECT_EQ(parse_formula("p | q | r"), (p | q) | r);
}

TEST(Formula, ParsesUnicode) {
  EXPECT_EQ(parse_formula("¬(p ∧ q) ∨ r"), (~(p & q)) | r);
}

TEST(Formula, RejectsMalformed) {
  for (const char* bad : {"", "p &", "(p", "p q", "&p", "p)", "~", "p | | q"}) {
    EXPECT_THROW(parse_formula(bad), ParseError) << bad;
  }
}

TEST(Formula, RenderUsesMinimalParentheses) {
  EXPECT_EQ(render_formula(p | (q & r)), "p | q & r");
  EXPECT_EQ(render_formula((p | q) & r), "(p | q) & r");
  EXPECT_EQ(render_formula(p & (q & r)), "p & (q & r)");
  EXPECT_EQ(render_formula(~~p), "~~p");
  EXPECT_EQ(render_formula(~(p | q)), "~(p | q)");
}

TEST(Formula, RenderParseRoundTripOverAllSmallFormulas) {
  for (const auto& f : ts::formulas_up_to({"p", "q"}, 2)) {
    EXPECT_EQ(parse_formula(render_formula(f)), f) << render_formula(f);
  }
}

TEST(Formula, SyntacticEquality) {
  EXPECT_NE(~~p, p);
  EXPECT_NE(p & q, q & p);
  EXPECT_EQ((p & q).hash(), (p & q).hash());
}

TEST(Formula, Measures) {
  const Formula f = ~(p & q) | r;
  EXPECT_EQ(f.degree(), 3u);
  EXPECT_EQ(f.size(), 6u);
  EXPECT_EQ(depth(f), 3u);
  EXPECT_EQ(depth(p), 0u);
}

TEST(Formula, Subformulas) {
  const FormulaSet s = subformulas(~(p & q));
  EXPECT_EQ(s, (FormulaSet{p, q, p & q, ~(p & q)}));
}

TEST(Formula, NegationClosure) {
  const Formula f = p & q;
  const FormulaSet s = negation_closure(std::span<const Formula>(&f, 1));
  EXPECT_EQ(s, (FormulaSet{p, q, p & q, ~p, ~q, ~(p & q)}));
}

TEST(Formula, Variables) {
  EXPECT_EQ(variables(~(p & q) | p), (std::set<std::string>{"p", "q"}));
}

TEST(Formula, SmallFormulaCounts) {
  EXPECT_EQ(ts::formulas_up_to({"p", "q"}, 1).size(), 12u);
  EXPECT_EQ(ts::formulas_up_to({"p", "q"}, 2).size(), 302u);
}
