// Parser, printer, normalization, and family enumeration.

#include "ambilogic/family.hpp"
#include "ambilogic/formula.hpp"
#include "ambilogic/parser.hpp"
#include "ambilogic/rational.hpp"

#include <gtest/gtest.h>

#include <algorithm>

namespace ambilogic {
namespace {

FormulaId parse(FormulaFactory& fa, const std::string& text) {
  return parse_formula(text, fa);
}

TEST(Parser, PrecedenceAndAssociativity) {
  FormulaFactory fa;
  // ! > & > | > -> > <->, with & and | left-, -> and <-> right-associative.
  EXPECT_EQ(parse(fa, "!p & q | r"), fa.disj(fa.conj(fa.negation(fa.prim("p")), fa.prim("q")), fa.prim("r")));
  EXPECT_EQ(parse(fa, "p & q & r"), fa.conj(fa.conj(fa.prim("p"), fa.prim("q")), fa.prim("r")));
  EXPECT_EQ(parse(fa, "p -> q -> r"), fa.implies(fa.prim("p"), fa.implies(fa.prim("q"), fa.prim("r"))));
  EXPECT_EQ(parse(fa, "p <-> q <-> r"), fa.iff(fa.prim("p"), fa.iff(fa.prim("q"), fa.prim("r"))));
  EXPECT_EQ(parse(fa, "p | (q & r)"), fa.disj(fa.prim("p"), fa.conj(fa.prim("q"), fa.prim("r"))));
}

TEST(Parser, PrintedFormReparsesToSameId) {
  FormulaFactory fa;
  const char* texts[] = {
      "true",
      "!(p & !q) | r",
      "B_1(p) & K_2(q)",
      "EB^2_{1,2}(p -> q)",
      "CB_{1,2,3}(p <-> B_1(p))",
      "1*Pr_1(p) >= 1/2",
      "1/2*Pr_1(p) + 1/2*Pr_2(q) >= 3/4",
  };
  for (const char* text : texts) {
    FormulaId f = parse(fa, text);
    EXPECT_EQ(parse(fa, fa.to_string(f)), f) << text;
  }
}

TEST(Parser, ComparisonSugarDesugarsAtConstruction) {
  FormulaFactory fa;
  // Only ">=" has a node of its own; "=" becomes a conjunction of bounds.
  FormulaId eq = parse(fa, "Pr_1(p) = 1");
  EXPECT_EQ(fa.node(eq).kind, NodeKind::And);
  EXPECT_EQ(fa.to_string(eq), "(1*Pr_1(p) >= 1) & (-1*Pr_1(p) >= -1)");
  FormulaId lt = parse(fa, "2/4*Pr_1(p) + 1/2*Pr_2(q) < 1");
  EXPECT_EQ(fa.to_string(lt), "!(1/2*Pr_1(p) + 1/2*Pr_2(q) >= 1)");
  // A bare comparison normalizes its coefficient to 1.
  EXPECT_EQ(fa.to_string(parse(fa, "Pr_1(p) >= 1/2")), "1*Pr_1(p) >= 1/2");
}

TEST(Parser, BeliefIsProbabilityOneSugar) {
  FormulaFactory fa;
  FormulaId b = parse(fa, "B_1(p)");
  EXPECT_EQ(fa.node(b).kind, NodeKind::Belief);
  EXPECT_EQ(fa.normalize(b), fa.normalize(parse(fa, "Pr_1(p) = 1")));
  EXPECT_EQ(fa.to_string(fa.normalize(b)), "(1*Pr_1(p) >= 1) & (-1*Pr_1(p) >= -1)");
}

TEST(Parser, RejectsMalformedInput) {
  FormulaFactory fa;
  const char* bad[] = {
      "",
      "p &",
      "p q",
      "B_1",          // reserved prefix without argument
      "(p",
      "Pr_1(p) >= 1/0",
      "EB^0_{1}(p)",  // iteration depth starts at 1
      "CB_{}(p)",
  };
  for (const char* text : bad) {
    EXPECT_THROW(parse(fa, text), ParseError) << text;
  }
  // Player indices are 1-based; the factory rejects 0 once parsed.
  EXPECT_THROW(parse(fa, "B_0(p)"), std::invalid_argument);
  // Only the exact reserved words are off limits; "true_x" is a proposition.
  EXPECT_EQ(fa.node(parse(fa, "true_x")).kind, NodeKind::Prim);
}

TEST(Parser, RationalText) {
  EXPECT_EQ(parse_rational_text("2/4"), Rational(1, 2));
  EXPECT_EQ(parse_rational_text("-1/3"), Rational(-1, 3));
  EXPECT_EQ(parse_rational_text("0"), Rational(0));
  EXPECT_EQ(parse_rational_text("5"), Rational(5));
  EXPECT_THROW(parse_rational_text("1/0"), ParseError);
  EXPECT_THROW(parse_rational_text("x"), ParseError);
  EXPECT_THROW(parse_rational_text("1/2/3"), ParseError);
}

TEST(Factory, InterningGivesStructuralIdentity) {
  FormulaFactory fa;
  EXPECT_EQ(parse(fa, "B_1(p & q)"), parse(fa, "B_1(p & q)"));
  EXPECT_NE(parse(fa, "B_1(p & q)"), parse(fa, "B_1(q & p)"));
  std::size_t before = fa.size();
  parse(fa, "B_1(p & q)");
  EXPECT_EQ(fa.size(), before);
}

TEST(Factory, NormalizeReachesCoreFragmentAndIsIdempotent) {
  FormulaFactory fa;
  const char* texts[] = {
      "p | q",
      "p -> q",
      "p <-> q",
      "B_2(p | q)",
      "EB^2_{1,2}(p)",
      "CB_{1,2}(B_1(p) -> p)",
  };
  for (const char* text : texts) {
    FormulaId n = fa.normalize(parse(fa, text));
    EXPECT_EQ(fa.normalize(n), n) << text;
    EXPECT_FALSE(fa.mentions(n, NodeKind::Or)) << text;
    EXPECT_FALSE(fa.mentions(n, NodeKind::Implies)) << text;
    EXPECT_FALSE(fa.mentions(n, NodeKind::Iff)) << text;
    EXPECT_FALSE(fa.mentions(n, NodeKind::Belief)) << text;
    EXPECT_FALSE(fa.mentions(n, NodeKind::EvBelief)) << text;
  }
}

TEST(Factory, Queries) {
  FormulaFactory fa;
  FormulaId f = parse(fa, "CB_{1,2}(K_1(p) & Pr_2(q) >= 1/2)");
  EXPECT_TRUE(fa.mentions(f, NodeKind::Knows));
  EXPECT_FALSE(fa.mentions(f, NodeKind::Belief));
  EXPECT_EQ(fa.props_of(f), (std::vector<std::string>{"p", "q"}));
  EXPECT_EQ(fa.max_player(parse(fa, "B_2(Pr_5(p) >= 1/2)")), 5);
  EXPECT_EQ(fa.max_player(parse(fa, "p & q")), 0);
  EXPECT_TRUE(fa.is_propositional(parse(fa, "!(p & q) | p")));
  EXPECT_FALSE(fa.is_propositional(parse(fa, "B_1(p)")));
}

TEST(Family, DeterministicSizes) {
  FormulaFactory fa;
  EXPECT_EQ(propositional_family(fa, {"p"}, 0).size(), 3u);
  EXPECT_EQ(propositional_family(fa, {"p"}, 1).size(), 15u);
  EXPECT_EQ(propositional_family(fa, {"p", "q"}, 1).size(), 45u);
  EXPECT_EQ(formula_family(fa, {"p"}, 2, 0).size(), 3u);
  EXPECT_EQ(formula_family(fa, {"p"}, 2, 1).size(), 60u);
  EXPECT_EQ(formula_family(fa, {"p"}, 2, 2).size(), 1323u);
  EXPECT_EQ(formula_family(fa, {"p", "q"}, 2, 1).size(), 120u);
}

TEST(Family, EnumerationIsReproducibleAndDeduplicated) {
  FormulaFactory fa;
  auto a = formula_family(fa, {"p"}, 2, 1);
  auto b = formula_family(fa, {"p"}, 2, 1);
  EXPECT_EQ(a, b);
  std::vector<FormulaId> sorted = a;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
  for (FormulaId f : propositional_family(fa, {"p", "q"}, 2)) {
    EXPECT_TRUE(fa.is_propositional(f));
  }
}

}  // namespace
}  // namespace ambilogic
