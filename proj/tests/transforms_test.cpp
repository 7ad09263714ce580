// Structure transforms, their equivalence contracts, and the bounded
// searches over candidate structures.

#include "ambilogic/family.hpp"
#include "ambilogic/agreement.hpp"
#include "ambilogic/model_io.hpp"
#include "ambilogic/parser.hpp"
#include "ambilogic/transforms.hpp"
#include "ambilogic/validate.hpp"

#include <gtest/gtest.h>

namespace ambilogic {
namespace {

const std::string kModelDir = AMBILOGIC_MODEL_DIR;

Structure load(const std::string& name) {
  return load_structure(kModelDir + "/" + name);
}

TEST(Projection, InstallsOneReadingEverywhere) {
  Structure m = load("example2.json");
  Structure pj = project_outermost(m, 1);
  EXPECT_TRUE(common_interpretation(pj));
  EXPECT_TRUE(validate(pj).ok());
  EXPECT_TRUE(pj.has_priors());
  EXPECT_FALSE(pj.has_cell_labels());
  EXPECT_FALSE(pj.has_signals());
  for (int s = 0; s < m.state_count(); ++s) {
    EXPECT_EQ(pj.prop_true_at(2, s, "q"), m.prop_true_at(1, s, "q"));
  }

  FormulaFactory fa;
  Evaluator left(m, fa);
  Evaluator right(pj, fa);
  auto pairing = projection_pairing(m, 1);
  EXPECT_EQ(pairing.size(), 3u);
  auto fam = formula_family(fa, {"p", "q"}, 2, 1);
  EquivalenceVerdict v = check_equivalent(left, right, pairing, Mode::Out, Mode::Out, fam);
  EXPECT_TRUE(v.equivalent) << v.witness_formula;
}

TEST(Copies, SplitsStatesByReader) {
  Structure atd = load("atd.json");
  CopiesResult cp = disjoint_copies(atd);
  EXPECT_EQ(cp.structure.state_names(), (std::vector<std::string>{"w_1", "w_2"}));
  EXPECT_TRUE(common_interpretation(cp.structure));
  EXPECT_TRUE(validate(cp.structure).ok());
  EXPECT_FALSE(cp.structure.has_priors());
  // Each player is certain of their own copy, and those certainties are
  // jointly unservable by any single prior.
  EXPECT_TRUE(common_prior_impossible(cp.structure));

  FormulaFactory fa;
  Evaluator left(atd, fa);
  Evaluator right(cp.structure, fa);
  auto pairing = copies_pairing(cp);
  auto fam = formula_family(fa, {"p"}, 2, 2);

  std::vector<FormulaId> belief_fragment;
  for (FormulaId f : fam) {
    if (!fa.mentions(f, NodeKind::Knows)) belief_fragment.push_back(f);
  }
  EXPECT_EQ(belief_fragment.size(), 1125u);
  EquivalenceVerdict ok = check_equivalent(left, right, pairing, Mode::In, Mode::In, belief_fragment);
  EXPECT_TRUE(ok.equivalent) << ok.witness_formula;
  EXPECT_EQ(ok.comparisons, 2250);

  // Partition knowledge does not survive: a cell spans every player's
  // copies, so K ranges over states carrying other readings.
  EquivalenceVerdict broken = check_equivalent(left, right, pairing, Mode::In, Mode::In, fam);
  EXPECT_FALSE(broken.equivalent);
  EXPECT_EQ(broken.witness_formula, "K_1(p)");
}

TEST(Labels, InstallsFreshLabelCompleteVocabulary) {
  Structure m = load("example2.json");
  LabelsResult lr = add_cell_labels(m, 0);
  EXPECT_EQ(lr.kept_states, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(lr.fresh_props,
            (std::vector<std::string>{"cell_1_1", "cell_1_2", "cell_2_1", "cell_2_2"}));
  EXPECT_TRUE(validate(lr.structure).ok());
  EXPECT_TRUE(validate_ai(lr.structure, Mode::OutAi).ok());
  EXPECT_TRUE(validate_ai(lr.structure, Mode::InAi).ok());
  EXPECT_TRUE(lr.structure.has_priors());

  FormulaFactory fa;
  Evaluator left(m, fa);
  Evaluator right(lr.structure, fa);
  auto pairing = restriction_pairing(lr);
  auto fam = formula_family(fa, {"p", "q"}, 2, 1);
  EXPECT_TRUE(check_equivalent(left, right, pairing, Mode::Out, Mode::Out, fam).equivalent);
  EXPECT_TRUE(check_equivalent(left, right, pairing, Mode::In, Mode::In, fam).equivalent);
}

TEST(Labels, RestrictsToTheReachableComponent) {
  // Two islands: {a, b} and {c}. Labeling from 'a' drops 'c' and
  // conditions the priors on the kept component.
  StructureData d;
  d.states = {"a", "b", "c"};
  d.players = 2;
  d.partitions = {{{"a", "b"}, {"c"}}, {{"a", "b"}, {"c"}}};
  d.posteriors = {{{{"a", Rational(1, 2)}, {"b", Rational(1, 2)}}, {{"c", Rational(1)}}},
                  {{{"a", Rational(3, 4)}, {"b", Rational(1, 4)}}, {{"c", Rational(1)}}}};
  d.interpretations = {{{"p"}, {}, {"p"}}, {{"p"}, {"p"}, {}}};
  d.priors = {{{"a", Rational(1, 4)}, {"b", Rational(1, 4)}, {"c", Rational(1, 2)}},
              {{"a", Rational(3, 8)}, {"b", Rational(1, 8)}, {"c", Rational(1, 2)}}};
  Structure m = build_structure(d);
  LabelsResult lr = add_cell_labels(m, 0);
  EXPECT_EQ(lr.kept_states, (std::vector<int>{0, 1}));
  EXPECT_EQ(lr.structure.state_count(), 2);
  ASSERT_TRUE(lr.structure.has_priors());
  EXPECT_EQ(lr.structure.prior(1), (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
  EXPECT_EQ(lr.structure.prior(2), (std::vector<Rational>{Rational(3, 4), Rational(1, 4)}));
  // Readings on kept states are untouched.
  EXPECT_TRUE(lr.structure.prop_true_at(2, 1, "p"));
  EXPECT_FALSE(lr.structure.prop_true_at(1, 1, "p"));
}

TEST(Equivalence, EmptyPairingComparesValidity) {
  Structure atd = load("atd.json");
  FormulaFactory fa;
  Evaluator left(atd, fa);
  Evaluator right(atd, fa);
  auto fam = formula_family(fa, {"p"}, 2, 1);
  EquivalenceVerdict v = check_equivalent(left, right, {}, Mode::In, Mode::In, fam);
  EXPECT_TRUE(v.equivalent);
  EXPECT_TRUE(v.by_validity);
}

TEST(Equivalence, ReportsTheFirstSeparatingFormula) {
  Structure atd = load("atd.json");
  Structure pj = project_outermost(atd, 1);
  FormulaFactory fa;
  Evaluator left(atd, fa);
  Evaluator right(pj, fa);
  // Viewpoint 2 reads p as false on the left, true on the right.
  std::vector<PointPair> pairing = {{{0, 2}, {0, 2}}};
  EquivalenceVerdict v =
      check_equivalent(left, right, pairing, Mode::Out, Mode::Out, {fa.prim("p")});
  EXPECT_FALSE(v.equivalent);
  EXPECT_EQ(v.witness_formula, "p");
  EXPECT_EQ(v.witness.left.state, 0);
  EXPECT_EQ(v.witness.left.viewpoint, 2);
}

TEST(Search, FindsACommonPriorTwinWhenOneExists) {
  Structure atd = load("atd.json");
  FormulaFactory fa;
  Evaluator ev(atd, fa);
  std::vector<FormulaId> probes = {
      parse_formula("p", fa),
      parse_formula("!p", fa),
      parse_formula("B_1(p)", fa),
      parse_formula("B_2(!p)", fa),
  };
  BoundedCpaSearch bounds;
  bounds.max_states = 2;
  bounds.max_denominator = 4;
  CpaSearchReport r = search_equivalent_cpa(ev, probes, bounds);
  ASSERT_TRUE(r.found);
  ASSERT_TRUE(r.witness.has_value());
  // The witness really is a validating common-prior structure that agrees
  // on every probe everywhere.
  Structure twin = build_structure(*r.witness);
  EXPECT_TRUE(validate(twin).ok());
  EXPECT_TRUE(check_cpa(twin).ok);
  FormulaFactory fb;
  Evaluator evt(twin, fb);
  for (const char* text : {"p", "!p", "B_1(p)", "B_2(!p)"}) {
    FormulaId left = parse_formula(text, fa);
    FormulaId right = parse_formula(text, fb);
    bool valid_left = true, valid_right = true;
    for (int s = 0; s < atd.state_count(); ++s)
      for (PlayerId v = 1; v <= 2; ++v) valid_left = valid_left && ev.eval(left, s, v, Mode::In);
    for (int s = 0; s < twin.state_count(); ++s)
      for (PlayerId v = 1; v <= 2; ++v) valid_right = valid_right && evt.eval(right, s, v, Mode::In);
    EXPECT_EQ(valid_left, valid_right) << text;
  }
}

TEST(Search, SmallBoundsAlreadyRefuteTheHeterogeneousExample) {
  Structure ne = load("no_equiv.json");
  FormulaFactory fa;
  Evaluator ev(ne, fa);
  std::vector<FormulaId> probes = {
      parse_formula("Pr_2(p) = 2/3", fa),
      parse_formula("Pr_3(p) = 3/4", fa),
      parse_formula("B_2(p <-> B_1(p))", fa),
      parse_formula("B_3(p <-> B_1(p))", fa),
      parse_formula("p <-> (Pr_1(p) = 1)", fa),
  };
  BoundedCpaSearch bounds;
  bounds.max_states = 2;
  bounds.max_denominator = 6;
  CpaSearchReport r = search_equivalent_cpa(ev, probes, bounds);
  EXPECT_FALSE(r.found);
  EXPECT_GT(r.full_candidates, 0);
}

TEST(Search, EveryBeliefEquivalentStructureInterpretsCommonly) {
  Structure ne = load("no_equiv.json");
  FormulaFactory fa;
  Evaluator ev(ne, fa);
  std::vector<FormulaId> probes = {
      parse_formula("p <-> B_1(p)", fa),
      parse_formula("B_2(p <-> B_1(p))", fa),
  };
  BoundedCpaSearch bounds;
  bounds.max_states = 2;
  bounds.max_denominator = 4;
  ForcedCommonReport r = search_forced_common_interpretation(ev, probes, bounds);
  EXPECT_TRUE(r.all_common_interpretation);
  EXPECT_EQ(r.matches, 26);

  // Probability thresholds other than certainty leave the belief fragment.
  std::vector<FormulaId> off = {parse_formula("Pr_1(p) >= 1/2", fa)};
  EXPECT_THROW(search_forced_common_interpretation(ev, off, bounds), EvalError);
}

}  // namespace
}  // namespace ambilogic
