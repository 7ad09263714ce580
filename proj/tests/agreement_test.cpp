// Ambiguity measurement, signal grades, posterior comparisons, and the
// agreement theorems' premises and escape hatches.

#include "ambilogic/agreement.hpp"
#include "ambilogic/model_io.hpp"
#include "ambilogic/parser.hpp"

#include <gtest/gtest.h>

namespace ambilogic {
namespace {

const std::string kModelDir = AMBILOGIC_MODEL_DIR;

class AgreementTest : public ::testing::Test {
protected:
  Structure load(const std::string& name) { return load_structure(kModelDir + "/" + name); }
  FormulaId f(const std::string& text) { return parse_formula(text, fa_); }
  FormulaFactory fa_;
};

TEST_F(AgreementTest, CommonInterpretationDetection) {
  EXPECT_FALSE(common_interpretation(load("atd.json")));
  EXPECT_TRUE(common_interpretation(load("example2.json")));
  EXPECT_FALSE(common_interpretation(load("critical.json")));
  EXPECT_TRUE(common_interpretation(load("no_equiv.json")));
}

TEST_F(AgreementTest, ExtensionProbesPruneByProfile) {
  Structure m = load("example2.json");
  Evaluator ev(m, fa_);
  auto d0 = extension_probes(ev, {1}, Mode::In, 0);
  EXPECT_EQ(d0.size(), 5u);  // true, p, q, !p, !q all denote distinct events
  auto d2 = extension_probes(ev, {1}, Mode::In, 2);
  EXPECT_EQ(d2.size(), 8u);  // every subset of a 3-state space is reachable
  EXPECT_EQ(extension_probes(ev, {1, 2}, Mode::In, 2).size(), 8u);
  // Small cap truncates growth.
  EXPECT_LE(extension_probes(ev, {1}, Mode::In, 2, 6).size(), 6u);
}

TEST_F(AgreementTest, AmbiguityMassUnderACommonPrior) {
  Structure atd = load("atd.json");
  Evaluator ev(atd, fa_);
  AmbiguityReport one = ambiguity_measure(ev, f("p"));
  EXPECT_EQ(one.epsilon, Rational(1));
  EXPECT_EQ(one.disagreement.count(), 1);

  Structure ex2 = load("example2.json");
  FormulaFactory fb;
  Evaluator ev2(ex2, fb);
  AmbiguityReport zero = ambiguity_measure(ev2, parse_formula("p & !q", fb));
  EXPECT_EQ(zero.epsilon, Rational(0));
  EXPECT_TRUE(zero.disagreement.empty());

  // Preconditions: propositional formula, common prior.
  EXPECT_THROW(ambiguity_measure(ev2, parse_formula("B_1(p)", fb)), EvalError);
  Structure ne = load("no_equiv.json");
  FormulaFactory fc;
  Evaluator evn(ne, fc);
  EXPECT_THROW(ambiguity_measure(evn, fc.prim("p")), EvalError);
}

TEST_F(AgreementTest, AgreementBoundScanFindsNoWitness) {
  Structure m = load("example2.json");
  Evaluator ev(m, fa_);
  AgreementReport r = check_agreement_bound(ev, {1, 2}, f("p"), Rational(1, 4), Rational(3, 4));
  EXPECT_TRUE(r.applicable);
  EXPECT_TRUE(r.consistent);
  EXPECT_EQ(r.epsilon, Rational(0));
  EXPECT_EQ(r.points_checked, 6);  // ordered pairs times three reachable-from-everywhere states

  AgreementReport tight = check_agreement_bound(ev, {1, 2}, f("p"), Rational(1, 4), Rational(1, 4));
  EXPECT_FALSE(tight.applicable);
  EXPECT_EQ(tight.precondition_failure, "thresholds do not separate: need b' > b + epsilon");

  AgreementReport nonprop = check_agreement_bound(ev, {1, 2}, f("B_1(p)"), Rational(0), Rational(1));
  EXPECT_FALSE(nonprop.applicable);
  EXPECT_EQ(nonprop.precondition_failure, "formula is not propositional");

  // Full ambiguity mass swallows the whole threshold interval.
  Structure atd = load("atd.json");
  FormulaFactory fb;
  Evaluator eva(atd, fb);
  AgreementReport wide = check_agreement_bound(eva, {1, 2}, parse_formula("p", fb), Rational(0), Rational(1));
  EXPECT_FALSE(wide.applicable);
  EXPECT_EQ(wide.precondition_failure, "thresholds do not separate: need b' > b + epsilon");
}

TEST_F(AgreementTest, SignalGradesOnTheFixtures) {
  Structure ex2 = load("example2.json");
  Evaluator ev(ex2, fa_);
  SignalFlags fl = classify_signal(ev, "s", ex2.state_index("w1"), Mode::In);
  EXPECT_TRUE(fl.common);
  EXPECT_FALSE(fl.is_public);
  EXPECT_FALSE(fl.shared);
  EXPECT_FALSE(fl.strongly_shared);

  Structure crit = load("critical.json");
  FormulaFactory fb;
  Evaluator evc(crit, fb);
  SignalFlags flc = classify_signal(evc, "s", crit.state_index("w11"), Mode::InAi);
  EXPECT_TRUE(flc.common);
  EXPECT_FALSE(flc.is_public);
  EXPECT_TRUE(flc.shared);
  EXPECT_FALSE(flc.strongly_shared);

  Structure gap = load("inai_formula_gap.json");
  FormulaFactory fc;
  Evaluator evg(gap, fc);
  SignalFlags flg = classify_signal(evg, "s", 0, Mode::InAi);
  EXPECT_TRUE(flg.common);
  EXPECT_TRUE(flg.is_public);
  EXPECT_TRUE(flg.shared);
  EXPECT_TRUE(flg.strongly_shared);

  // Under a viewpoint-sensitive mode a grade must hold at every viewpoint.
  Structure og = load("outai_event_gap.json");
  FormulaFactory fd;
  Evaluator evo(og, fd);
  SignalFlags flo = classify_signal(evo, "s", 0, Mode::OutAi);
  EXPECT_TRUE(flo.common);
  EXPECT_FALSE(flo.is_public);

  EXPECT_THROW(classify_signal(ev, "zz", 0, Mode::In), EvalError);
  Structure bare = load("atd.json");
  FormulaFactory fe;
  Evaluator evb(bare, fe);
  EXPECT_THROW(classify_signal(evb, "s", 0, Mode::In), EvalError);
}

TEST_F(AgreementTest, PosteriorsComparedAsEventMeasures) {
  Structure ex2 = load("example2.json");
  PosteriorEventReport r = compare_posteriors_events(ex2, ex2.state_index("w1"), 1, 2);
  EXPECT_FALSE(r.equal);
  EXPECT_EQ(r.witness_state, 1);  // w2: inside player 1's cell, outside player 2's
  EXPECT_EQ(r.value_i, Rational(1, 2));
  EXPECT_EQ(r.value_j, Rational(0));

  PosteriorEventReport eq = compare_posteriors_events(load("inai_formula_gap.json"), 0, 1, 2);
  EXPECT_TRUE(eq.equal);

  PosteriorEventReport og = compare_posteriors_events(load("outai_event_gap.json"), 0, 1, 2);
  EXPECT_FALSE(og.equal);
  EXPECT_EQ(og.value_i, Rational(1));
  EXPECT_EQ(og.value_j, Rational(1, 2));
}

TEST_F(AgreementTest, PosteriorsComparedThroughFormulas) {
  // Equal event measures can still disagree through differently read probes.
  Structure gap = load("inai_formula_gap.json");
  Evaluator ev(gap, fa_);
  PosteriorFormulaReport r = compare_posteriors_formulas(ev, 0, 1, 2, Mode::InAi, 1);
  EXPECT_FALSE(r.equal);
  EXPECT_EQ(r.witness, "p");
  EXPECT_EQ(r.value_i, Rational(1, 2));
  EXPECT_EQ(r.value_j, Rational(1));

  Structure atd = load("atd.json");
  FormulaFactory fb;
  Evaluator eva(atd, fb);
  PosteriorFormulaReport ra = compare_posteriors_formulas(eva, 0, 1, 2, Mode::In, 1);
  EXPECT_FALSE(ra.equal);
  EXPECT_EQ(ra.witness, "p");
  EXPECT_EQ(ra.value_i, Rational(1));
  EXPECT_EQ(ra.value_j, Rational(0));
  EXPECT_EQ(ra.formulas_checked, 2);  // probes prune to {true, p}

  // Unequal event measures can agree on every probe at a coarse viewpoint,
  // and the all-viewpoint comparison names the viewpoint that separates.
  Structure og = load("outai_event_gap.json");
  FormulaFactory fc;
  Evaluator evo(og, fc);
  PosteriorFormulaReport at2 = compare_posteriors_formulas(evo, 0, 1, 2, Mode::OutAi, 2, 2);
  EXPECT_TRUE(at2.equal);
  PosteriorFormulaReport all = compare_posteriors_formulas(evo, 0, 1, 2, Mode::OutAi, 2);
  EXPECT_FALSE(all.equal);
  EXPECT_EQ(all.witness_viewpoint, 1);
}

TEST_F(AgreementTest, AumannScanAndItsEscape) {
  // Premises hold: no common belief in differing posteriors, ever.
  Structure ex2 = load("example2.json");
  Evaluator ev(ex2, fa_);
  AumannReport ok = aumann_check(ev, {1, 2}, 1);
  EXPECT_TRUE(ok.applicable());
  EXPECT_TRUE(ok.findings.empty());
  EXPECT_EQ(ok.points_checked, 24);

  // Ambiguity breaks the premise and the conclusion with it.
  Structure atd = load("atd.json");
  FormulaFactory fb;
  Evaluator eva(atd, fb);
  AumannReport esc = aumann_check(eva, {1, 2}, 1);
  EXPECT_FALSE(esc.common_interpretation);
  EXPECT_TRUE(esc.cpa);
  EXPECT_FALSE(esc.applicable());
  ASSERT_FALSE(esc.findings.empty());
  EXPECT_EQ(esc.findings[0].formula, "p");
  EXPECT_EQ(esc.findings[0].value_i, Rational(1));
  EXPECT_EQ(esc.findings[0].value_j, Rational(0));

  // Heterogeneous priors break the other premise.
  Structure ne = load("no_equiv.json");
  FormulaFactory fc;
  Evaluator evn(ne, fc);
  AumannReport pri = aumann_check(evn, {1, 2, 3}, 1);
  EXPECT_TRUE(pri.common_interpretation);
  EXPECT_FALSE(pri.cpa);
  ASSERT_EQ(pri.findings.size(), 4u);
  EXPECT_EQ(pri.findings[0].state, 0);
  EXPECT_EQ(pri.findings[0].i, 2);
  EXPECT_EQ(pri.findings[0].j, 3);
  EXPECT_EQ(pri.findings[0].formula, "p");
  EXPECT_EQ(pri.findings[0].value_i, Rational(2, 3));
  EXPECT_EQ(pri.findings[0].value_j, Rational(3, 4));
}

}  // namespace
}  // namespace ambilogic
