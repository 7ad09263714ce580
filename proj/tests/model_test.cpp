// Structure construction, validation, priors, and model file round-trips.

#include "ambilogic/model_io.hpp"
#include "ambilogic/structure.hpp"
#include "ambilogic/validate.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

namespace ambilogic {
namespace {

const std::string kModelDir = AMBILOGIC_MODEL_DIR;

Structure load(const std::string& name) {
  return load_structure(kModelDir + "/" + name);
}

// Two players over {a, b}: player 1 sees nothing, player 2 everything.
StructureData two_player_base() {
  StructureData d;
  d.states = {"a", "b"};
  d.players = 2;
  d.partitions = {{{"a", "b"}}, {{"a"}, {"b"}}};
  d.posteriors = {{{{"a", Rational(1, 2)}, {"b", Rational(1, 2)}}},
                  {{{"a", Rational(1)}}, {{"b", Rational(1)}}}};
  d.interpretations = {{{"p"}, {}}, {{"p"}, {}}};
  return d;
}

TEST(Build, AccessorsOnLoadedModel) {
  Structure m = load("example2.json");
  EXPECT_EQ(m.state_count(), 3);
  EXPECT_EQ(m.player_count(), 2);
  EXPECT_EQ(m.state_index("w3"), 2);
  EXPECT_EQ(m.state_index("nope"), -1);
  EXPECT_EQ(m.vocabulary().front(), "p");
  EXPECT_TRUE(m.has_prop("recv_2_t"));
  EXPECT_FALSE(m.has_prop("zz"));

  EXPECT_EQ(m.cell_count(1), 2);
  EXPECT_EQ(m.cell_of(1, m.state_index("w1")), m.cell_of(1, m.state_index("w2")));
  EXPECT_EQ(m.posterior_mass(1, m.state_index("w1")), Rational(1, 2));
  EXPECT_EQ(m.posterior_measure(1, m.state_index("w1"), m.prop_extension(1, "q")), Rational(1, 2));
  EXPECT_EQ(m.prior_measure(2, StateSet::full(3)), Rational(1));
  EXPECT_EQ(m.prop_extension(1, "p").count(), 2);
  EXPECT_THROW(m.prop_extension(1, "zz"), ModelError);
  // A vocabulary proposition a player never lists denotes the empty event
  // for that player.
  EXPECT_TRUE(load("atd.json").prop_extension(2, "p").empty());

  EXPECT_TRUE(m.has_signals());
  EXPECT_EQ(m.signal(1, m.state_index("w3")).value(), "t");
  EXPECT_EQ(m.signal_names(), (std::vector<std::string>{"s", "t"}));
  EXPECT_TRUE(m.has_cell_labels());
  EXPECT_EQ(m.cell_label(2, 0), "recv_2_s");
}

TEST(Build, RejectsMalformedShape) {
  {
    StructureData d = two_player_base();
    d.partitions[0][0][0] = "zz";
    EXPECT_THROW(build_structure(d), ModelError);
  }
  {
    StructureData d = two_player_base();
    d.interpretations.pop_back();
    EXPECT_THROW(build_structure(d), ModelError);
  }
  {
    StructureData d = two_player_base();
    d.states = {"a", "a"};
    EXPECT_THROW(build_structure(d), ModelError);
  }
  {
    StructureData d;
    for (int i = 0; i < 65; ++i) d.states.push_back("s" + std::to_string(i));
    d.players = 1;
    EXPECT_THROW(build_structure(d), ModelError);
  }
}

TEST(Validate, CleanFixturesPass) {
  for (const char* name : {"atd.json", "example2.json", "critical.json", "no_equiv.json",
                           "outai_event_gap.json", "inai_formula_gap.json"}) {
    EXPECT_TRUE(validate(load(name)).ok()) << name;
  }
}

TEST(Validate, ReportsTheOffendingCheck) {
  auto failing_id = [](const StructureData& d) {
    ValidationReport r = validate(build_structure(d));
    EXPECT_FALSE(r.ok());
    for (const CheckResult& c : r.checks) {
      if (c.status == CheckStatus::Fail) return c.id;
    }
    return std::string();
  };
  {
    StructureData d = two_player_base();
    d.partitions[0] = {{"a", "b"}, {"b"}};
    d.posteriors[0] = {{{"a", Rational(1, 2)}, {"b", Rational(1, 2)}}, {{"b", Rational(1)}}};
    EXPECT_EQ(failing_id(d), "partition");
  }
  {
    StructureData d = two_player_base();
    d.partitions[0] = {{"a"}};
    d.posteriors[0] = {{{"a", Rational(1)}}};
    EXPECT_EQ(failing_id(d), "partition");
  }
  {
    StructureData d = two_player_base();
    d.posteriors[0][0] = {{"a", Rational(1, 2)}, {"b", Rational(1)}};
    EXPECT_EQ(failing_id(d), "A1");
  }
  {
    StructureData d = two_player_base();
    d.posteriors[1][0] = {{"b", Rational(1)}};  // mass outside the cell
    EXPECT_EQ(failing_id(d), "A1");
  }
  {
    StructureData d = two_player_base();
    d.posteriors[0][0] = {{"a", Rational(3, 2)}, {"b", Rational(-1, 2)}};
    EXPECT_EQ(failing_id(d), "A1");
  }
  {
    StructureData d = two_player_base();
    d.priors = {{{"a", Rational(1, 2)}}, {{"a", Rational(1, 2)}, {"b", Rational(1, 2)}}};
    EXPECT_EQ(failing_id(d), "priors");
  }
  {
    StructureData d = two_player_base();
    // Player 1's single cell would have to receive one signal at both states.
    d.signals = {{{"a", {std::optional<std::string>("s"), std::nullopt}},
                  {"b", {std::optional<std::string>("t"), std::nullopt}}}};
    EXPECT_EQ(failing_id(d), "signals");
  }
}

TEST(Validate, LabelChecksSplitByMode) {
  Structure m = load("critical.json");
  EXPECT_TRUE(validate_ai(m, Mode::InAi).ok());
  ValidationReport out = validate_ai(m, Mode::OutAi);
  EXPECT_FALSE(out.ok());
  const CheckResult* a6 = out.find("A6");
  ASSERT_NE(a6, nullptr);
  EXPECT_EQ(a6->status, CheckStatus::Fail);
  EXPECT_EQ(a6->detail, "i=1, j=2, state 'w12': state not in [[recv_1_s]] under player 2");
  EXPECT_TRUE(validate_ai(load("example2.json"), Mode::OutAi).ok());
  EXPECT_TRUE(validate_ai(load("outai_event_gap.json"), Mode::OutAi).ok());
}

TEST(ModelIo, RoundTripIsByteStable) {
  for (const char* name : {"atd.json", "example2.json", "critical.json", "no_equiv.json",
                           "outai_event_gap.json", "inai_formula_gap.json"}) {
    Structure m = load(name);
    std::string once = structure_to_json(m);
    std::string twice = structure_to_json(parse_structure_json(once));
    EXPECT_EQ(once, twice) << name;
    // to_data + rebuild preserves everything as well.
    EXPECT_EQ(structure_to_json(build_structure(m.to_data())), once) << name;
  }
}

TEST(ModelIo, RejectsUnknownFieldsAndBadDocuments) {
  EXPECT_THROW(parse_structure_json(R"({"states":["a"],"bogus":1})"), ModelError);
  EXPECT_THROW(parse_structure_json("not json"), ModelError);
  EXPECT_THROW(load_structure(kModelDir + "/does_not_exist.json"), ModelError);
}

TEST(Reachability, ClosesUnderTheGroupsCells) {
  Structure m = load("example2.json");
  EXPECT_EQ(reachable(m, {1, 2}, m.state_index("w1")), StateSet::full(3));
  StateSet own = reachable(m, {1}, m.state_index("w1"));
  EXPECT_EQ(own.members(), (std::vector<int>{0, 1}));
  Structure n = load("no_equiv.json");
  EXPECT_EQ(reachable(n, {1, 2, 3}, 0), StateSet::full(2));
  EXPECT_EQ(reachable(n, {1}, 0).count(), 1);
}

TEST(Priors, CanonicalGenerationConditionsBackToPosteriors) {
  Structure m = load("example2.json");
  auto gp = generate_priors(m);
  EXPECT_EQ(gp[0], (std::vector<Rational>{Rational(1, 4), Rational(1, 4), Rational(1, 2)}));
  EXPECT_EQ(gp[1], (std::vector<Rational>{Rational(1, 4), Rational(1, 2), Rational(1, 4)}));

  StructureData d = m.to_data();
  d.priors = std::vector<std::map<std::string, Rational>>(2);
  for (int i = 0; i < 2; ++i) {
    for (int s = 0; s < m.state_count(); ++s) (*d.priors)[i][m.state_name(s)] = gp[i][s];
  }
  PriorGenReport rep = check_prior_generated(build_structure(d));
  EXPECT_TRUE(rep.ok);
  EXPECT_TRUE(rep.mismatches.empty());
}

TEST(Priors, GenerationCheckPinpointsMismatches) {
  StructureData d;
  d.states = {"a", "b"};
  d.players = 1;
  d.partitions = {{{"a", "b"}}};
  d.posteriors = {{{{"a", Rational(1, 3)}, {"b", Rational(2, 3)}}}};
  d.interpretations = {{{"p"}, {}}};
  d.priors = {{{"a", Rational(1, 2)}, {"b", Rational(1, 2)}}};
  PriorGenReport rep = check_prior_generated(build_structure(d));
  EXPECT_FALSE(rep.ok);
  ASSERT_EQ(rep.mismatches.size(), 2u);
  EXPECT_EQ(rep.mismatches[0].player, 1);
  EXPECT_EQ(rep.mismatches[0].cell, 0);
  EXPECT_EQ(rep.mismatches[0].state, 0);
  EXPECT_EQ(rep.mismatches[0].expected, Rational(1, 2));
  EXPECT_EQ(rep.mismatches[0].actual, Rational(1, 3));

  d.priors.reset();
  EXPECT_THROW(check_prior_generated(build_structure(d)), std::invalid_argument);
}

TEST(Priors, CommonPriorCheckStagesItsReasons) {
  EXPECT_TRUE(check_cpa(load("example2.json")).ok);
  EXPECT_TRUE(check_cpa(load("atd.json")).ok);

  CpaReport differ = check_cpa(load("no_equiv.json"));
  EXPECT_FALSE(differ.ok);
  EXPECT_TRUE(differ.has_priors);
  EXPECT_FALSE(differ.priors_common);
  EXPECT_EQ(differ.differ_i, 1);
  EXPECT_EQ(differ.differ_j, 2);
  EXPECT_EQ(differ.differ_state, 0);

  StructureData d = two_player_base();
  CpaReport none = check_cpa(build_structure(d));
  EXPECT_FALSE(none.ok);
  EXPECT_FALSE(none.has_priors);

  // A common prior that starves one reachability class: both players see
  // every state, the prior sits entirely on 'a'.
  StructureData z;
  z.states = {"a", "b"};
  z.players = 2;
  z.partitions = {{{"a"}, {"b"}}, {{"a"}, {"b"}}};
  z.posteriors = {{{{"a", Rational(1)}}, {{"b", Rational(1)}}},
                  {{{"a", Rational(1)}}, {{"b", Rational(1)}}}};
  z.interpretations = {{{"p"}, {}}, {{"p"}, {}}};
  z.priors = {{{"a", Rational(1)}}, {{"a", Rational(1)}}};
  CpaReport starved = check_cpa(build_structure(z));
  EXPECT_FALSE(starved.ok);
  EXPECT_TRUE(starved.priors_common);
  EXPECT_TRUE(starved.prior_generated.ok);
  EXPECT_EQ(starved.prior_generated.unconstrained.size(), 2u);
  EXPECT_FALSE(starved.reachable_positive);
  EXPECT_EQ(starved.null_reachable_state, 1);
}

TEST(Priors, ImpossibilityCertificate) {
  EXPECT_FALSE(common_prior_impossible(load("example2.json")));
  EXPECT_FALSE(common_prior_impossible(load("no_equiv.json")));  // differing priors, not impossible
  // Disjoint full-mass supports: player 1 is sure of 'a', player 2 of 'b'.
  StructureData d = two_player_base();
  d.partitions = {{{"a", "b"}}, {{"a", "b"}}};
  d.posteriors = {{{{"a", Rational(1)}}}, {{{"b", Rational(1)}}}};
  EXPECT_TRUE(common_prior_impossible(build_structure(d)));
}

}  // namespace
}  // namespace ambilogic
