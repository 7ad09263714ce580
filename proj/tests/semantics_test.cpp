// The four satisfaction relations, exercised against hand-checked models.

#include "ambilogic/model_io.hpp"
#include "ambilogic/parser.hpp"
#include "ambilogic/semantics.hpp"

#include <gtest/gtest.h>

namespace ambilogic {
namespace {

const std::string kModelDir = AMBILOGIC_MODEL_DIR;

class SemanticsTest : public ::testing::Test {
protected:
  Structure load(const std::string& name) { return load_structure(kModelDir + "/" + name); }
  FormulaId f(const std::string& text) { return parse_formula(text, fa_); }
  FormulaFactory fa_;
};

TEST_F(SemanticsTest, ModeNames) {
  EXPECT_STREQ(mode_name(Mode::OutAi), "out-ai");
  EXPECT_EQ(mode_from_name("in"), Mode::In);
  EXPECT_EQ(mode_from_name("out-ai"), Mode::OutAi);
  EXPECT_EQ(mode_from_name("bogus"), std::nullopt);
  EXPECT_TRUE(mode_is_inner(Mode::InAi));
  EXPECT_FALSE(mode_is_inner(Mode::Out));
  EXPECT_TRUE(mode_is_conditioning(Mode::OutAi));
  EXPECT_FALSE(mode_is_conditioning(Mode::In));
}

// One state, one proposition, read oppositely: both players are certain of
// their own reading, and that certainty is common belief — under a shared
// reading either CB_{1,2}(p) or CB_{1,2}(!p) holds, depending on who frames
// the query.
TEST_F(SemanticsTest, OneStateDisagreement) {
  Structure m = load("atd.json");
  Evaluator ev(m, fa_);
  FormulaId disagree = f("CB_{1,2}(B_1(p) & B_2(!p))");
  EXPECT_TRUE(ev.eval(disagree, 0, 1, Mode::In));
  EXPECT_TRUE(ev.eval(disagree, 0, 2, Mode::In));
  EXPECT_TRUE(ev.eval(f("CB_{1,2}(p)"), 0, 1, Mode::Out));
  EXPECT_FALSE(ev.eval(f("CB_{1,2}(p)"), 0, 2, Mode::Out));
  EXPECT_TRUE(ev.eval(f("CB_{1,2}(!p)"), 0, 2, Mode::Out));

  // Out keeps the outer reading for believed arguments; In switches it.
  EXPECT_TRUE(ev.eval(f("B_2(p)"), 0, 1, Mode::Out));
  EXPECT_FALSE(ev.eval(f("B_2(p)"), 0, 1, Mode::In));
  EXPECT_TRUE(ev.eval(f("K_2(!p)"), 0, 1, Mode::In));
  EXPECT_FALSE(ev.eval(f("K_2(!p)"), 0, 1, Mode::Out));
}

TEST_F(SemanticsTest, ProbabilityValuesFollowTheCells) {
  Structure m = load("example2.json");
  Evaluator ev(m, fa_);
  FormulaId p = f("p");
  FormulaId q = f("q");
  int w1 = m.state_index("w1");
  EXPECT_EQ(ev.prob_value(p, w1, 1, 1, Mode::In), Rational(1));
  EXPECT_EQ(ev.prob_value(q, w1, 1, 1, Mode::In), Rational(1, 2));
  EXPECT_EQ(ev.prob_value(p, w1, 1, 2, Mode::In), Rational(1, 2));
  EXPECT_EQ(ev.prob_value(q, w1, 1, 2, Mode::In), Rational(1));

  // Linear combinations share one threshold.
  EXPECT_TRUE(ev.eval(f("1/2*Pr_1(p) + 1/2*Pr_2(p) >= 3/4"), w1, 1, Mode::In));
  EXPECT_FALSE(ev.eval(f("1/2*Pr_1(p) + 1/2*Pr_2(p) >= 7/8"), w1, 1, Mode::In));

  // In never depends on the viewpoint beyond bare propositions; here the
  // interpretation is common, so not at all.
  for (int st = 0; st < m.state_count(); ++st) {
    EXPECT_EQ(ev.prob_value(q, st, 1, 2, Mode::In), ev.prob_value(q, st, 2, 2, Mode::In));
  }
}

TEST_F(SemanticsTest, BeliefEventsAreCellUnions) {
  Structure m = load("example2.json");
  Evaluator ev(m, fa_);
  StateSet pe = m.prop_extension(1, "p");  // {w1, w2}
  StateSet b1 = ev.belief_event(1, pe, 1, Mode::In);
  EXPECT_EQ(b1, pe);  // player 1's cell {w1,w2} lies inside
  StateSet b2 = ev.belief_event(2, pe, 1, Mode::In);
  EXPECT_EQ(b2.members(), (std::vector<int>{1}));  // only the singleton {w2}

  StateSet eb = ev.everyone_believes_event({1, 2}, pe, 1, Mode::In);
  EXPECT_EQ(eb.members(), (std::vector<int>{1}));
  EXPECT_TRUE(ev.common_belief_event({1, 2}, pe, 1, Mode::In).empty());
  EXPECT_EQ(ev.common_belief_event({1, 2}, StateSet::full(3), 1, Mode::In), StateSet::full(3));
}

TEST_F(SemanticsTest, IteratedEverybodyBelievesUnrolls) {
  Structure m = load("example2.json");
  Evaluator ev(m, fa_);
  int w2 = m.state_index("w2");
  EXPECT_TRUE(ev.eval(f("EB^1_{1,2}(p)"), w2, 1, Mode::In));
  EXPECT_FALSE(ev.eval(f("EB^2_{1,2}(p)"), w2, 1, Mode::In));
  EXPECT_FALSE(ev.eval(f("CB_{1,2}(p)"), w2, 1, Mode::In));
}

TEST_F(SemanticsTest, KnowledgeUsesCellsNotMeasures) {
  Structure m = load("example2.json");
  Evaluator ev(m, fa_);
  EXPECT_EQ(ev.extension(f("K_1(p)"), 1, Mode::In).members(), (std::vector<int>{0, 1}));
  EXPECT_EQ(ev.extension(f("K_2(p)"), 1, Mode::In).members(), (std::vector<int>{1}));
  // Knowledge is truthful: K_i(f) -> f holds everywhere.
  FormulaId truthful = f("K_1(q) -> q");
  for (int st = 0; st < m.state_count(); ++st) {
    EXPECT_TRUE(ev.eval(truthful, st, 1, Mode::In));
  }
}

TEST_F(SemanticsTest, ConditioningModesReadTheLabel) {
  Structure m = load("outai_event_gap.json");
  Evaluator ev(m, fa_);
  FormulaId p = f("p");
  int w1 = m.state_index("w1");
  // Viewpoint 1 reads recv_1_s as player 1's true cell {w1}; viewpoint 2
  // reads it as the whole space. Player 2's prior is uniform.
  EXPECT_EQ(ev.prob_value(p, w1, 1, 1, Mode::OutAi), Rational(1));
  EXPECT_EQ(ev.prob_value(p, w1, 1, 2, Mode::OutAi), Rational(1, 2));
  EXPECT_EQ(ev.prob_value(p, w1, 2, 1, Mode::OutAi), Rational(1, 2));
  EXPECT_EQ(ev.prob_value(p, w1, 2, 2, Mode::OutAi), Rational(1, 2));

  // Public announcement judged from viewpoint 2 only.
  FormulaId pub = f("CB_{1,2}(recv_1_s & recv_2_s)");
  EXPECT_TRUE(ev.eval(pub, w1, 2, Mode::OutAi));
  EXPECT_FALSE(ev.eval(pub, w1, 1, Mode::OutAi));

  Structure g = load("inai_formula_gap.json");
  FormulaFactory fb;
  Evaluator evg(g, fb);
  FormulaId pg = parse_formula("p", fb);
  EXPECT_EQ(evg.prob_value(pg, 0, 1, 1, Mode::InAi), Rational(1, 2));
  EXPECT_EQ(evg.prob_value(pg, 0, 1, 2, Mode::InAi), Rational(1));
}

TEST_F(SemanticsTest, ConditioningOnANullLabelThrows) {
  StructureData d;
  d.states = {"a", "b"};
  d.players = 2;
  d.partitions = {{{"a"}, {"b"}}, {{"a"}, {"b"}}};
  d.posteriors = {{{{"a", Rational(1)}}, {{"b", Rational(1)}}},
                  {{{"a", Rational(1)}}, {{"b", Rational(1)}}}};
  d.interpretations = {{{"p", "la"}, {}}, {{"p", "la"}, {}}};
  d.priors = {{{"a", Rational(1)}}, {{"a", Rational(1)}}};
  d.cell_labels = {{"la", "!la"}, {"la", "!la"}};
  Structure m = build_structure(d);
  Evaluator ev(m, fa_);
  try {
    ev.eval(f("Pr_1(p) >= 1/2"), 1, 1, Mode::InAi);
    FAIL() << "expected ConditioningUndefined";
  } catch (const ConditioningUndefined& e) {
    EXPECT_EQ(e.believer, 1);
    EXPECT_EQ(e.state, "b");
    EXPECT_EQ(e.viewpoint, 1);
  }
  // The conditioning modes refuse to run without labels at all.
  Structure bare = load("atd.json");
  FormulaFactory fb;
  Evaluator evb(bare, fb);
  EXPECT_THROW(evb.eval(parse_formula("B_1(p)", fb), 0, 1, Mode::InAi), EvalError);
}

TEST_F(SemanticsTest, ExtensionsAreMemoizedPerModeAndViewpoint) {
  Structure m = load("atd.json");
  Evaluator ev(m, fa_);
  FormulaId p = f("p");
  const StateSet& out1 = ev.extension(p, 1, Mode::In);
  const StateSet& out2 = ev.extension(p, 2, Mode::In);
  EXPECT_EQ(out1.count(), 1);
  EXPECT_TRUE(out2.empty());
  // Same query returns the identical cached object.
  EXPECT_EQ(&ev.extension(p, 1, Mode::In), &out1);
}

TEST_F(SemanticsTest, RejectsPointsOutsideTheStructure) {
  Structure m = load("atd.json");
  Evaluator ev(m, fa_);
  FormulaId p = f("p");
  EXPECT_THROW(ev.eval(p, 5, 1, Mode::In), EvalError);
  EXPECT_THROW(ev.eval(p, 0, 3, Mode::In), EvalError);
  EXPECT_THROW(ev.eval(f("B_9(p)"), 0, 1, Mode::In), EvalError);
}

}  // namespace
}  // namespace ambilogic
