// ===== transforms.hpp — constructive model transformations =====
//
// Three rewrites connect the ambiguity-aware semantics to ordinary
// common-interpretation structures:
//
//   project_outermost   every player adopts viewpoint i's interpretation;
//                       what i could say under Out, anyone can say here.
//   disjoint_copies     one copy of the state space per player; copy j is
//                       read through player j's eyes and each player's
//                       posteriors live on their own copies. Trades the
//                       common prior away for a common interpretation.
//   add_cell_labels     restricts to the reachable component of a state and
//                       names every cell with a fresh commonly-interpreted
//                       proposition, so the conditioning semantics' label
//                       assumptions hold by construction.
//
// check_equivalent drives a probe family over paired evaluation points to
// test the contracts. The bounded searches ask the converse questions: is
// some small common-prior structure indistinguishable from a given one on a
// probe family (search_equivalent_cpa), and must every match interpret the
// language commonly (search_forced_common_interpretation)?

#pragma once

#include "ambilogic/semantics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ambilogic {

// Keeps states, partitions, posteriors, and priors; replaces every player's
// interpretation with player i's. Cell labels and signals are dropped: both
// promise facts about the interpretations they were written against.
Structure project_outermost(const Structure& m, PlayerId i);

struct CopiesResult {
  Structure structure;
  // [original state][player-1] -> index of that player's copy
  std::vector<std::vector<int>> copy_index;
};

// n disjoint copies of the state space, copy j named "<state>_<j>" (the
// separator widens if that collides). All players read copy (omega, j) by
// player j's interpretation; player i's cell at any copy collects every
// copy of the original cell, and i's posterior concentrates on i's copies
// with the original masses. Priors, labels, and signals are dropped. The
// output is common-interpretation, and for two or more players it can
// never be prior-generated by a common prior: each player's posteriors
// certify full mass on their own copies, and those events are disjoint
// (see common_prior_impossible).
//
// The equivalence contract under copies_pairing covers the knowledge-free
// fragment only. Beliefs and probabilities see just the believer's own
// copies, but a cell spans all players' copies, so K_i ranges over states
// carrying other players' readings: with one state read differently, K_2(!p)
// holds at the original yet fails at every copy.
CopiesResult disjoint_copies(const Structure& m);

struct LabelsResult {
  Structure structure;
  std::vector<int> kept_states;          // original indices, ascending
  std::vector<std::string> fresh_props;  // in (player, cell) order
};

// Restricts m to the component reachable from `state` through any player's
// cells, then adds one fresh proposition per (player, cell), true exactly on
// the cell under every interpretation, and installs these as cell labels.
// Fresh names follow cell_<i>_<k> with a numeric suffix on collision. The
// output satisfies the label assumptions in both conditioning modes, and
// formulas over the original vocabulary keep their truth values on the kept
// states. Priors are conditioned on the component when every player gives
// it positive mass, and dropped otherwise; signals are restricted.
LabelsResult add_cell_labels(const Structure& m, int state);

struct EvalPoint {
  int state = 0;
  PlayerId viewpoint = 1;
  friend bool operator==(const EvalPoint&, const EvalPoint&) = default;
};

struct PointPair {
  EvalPoint left;
  EvalPoint right;
};

struct EquivalenceVerdict {
  bool equivalent = true;
  bool by_validity = false;  // pairing was empty: compared per-formula validity
  std::string witness_formula;
  PointPair witness;
  long long comparisons = 0;
};

// Evaluates every family formula at every paired point (left structure
// under left_mode, right under right_mode) and reports the first
// disagreement. Both evaluators must share one formula factory. An empty
// pairing compares validity instead: "true everywhere" on the left against
// "true everywhere" on the right, formula by formula.
EquivalenceVerdict check_equivalent(Evaluator& left, Evaluator& right,
                                    const std::vector<PointPair>& pairing, Mode left_mode,
                                    Mode right_mode, const std::vector<FormulaId>& family);

// The pairings under which the transform contracts are stated.
std::vector<PointPair> projection_pairing(const Structure& m, PlayerId i);
std::vector<PointPair> copies_pairing(const CopiesResult& copies);
std::vector<PointPair> restriction_pairing(const LabelsResult& restricted);

struct BoundedCpaSearch {
  int max_states = 3;
  int max_denominator = 12;
};

struct CpaSearchReport {
  bool found = false;
  std::optional<StructureData> witness;
  long long full_candidates = 0;  // assignments that reached the final probe check
  long long partial_tests = 0;    // staged prefix evaluations
};

// Enumerates every structure with the target's player count, at most
// max_states states, vocabulary = the props of the probes, interpretations
// free per player, set partitions free per player, and a strictly positive
// common prior with denominator <= max_denominator (posteriors by
// conditioning, so every candidate satisfies the common prior assumption).
// Reports the first candidate whose In-validity agrees with the target's on
// every probe. Players are assigned in an order that unlocks probes early,
// and a prefix is discarded as soon as a target-valid probe already fails
// at an assigned viewpoint.
CpaSearchReport search_equivalent_cpa(Evaluator& target, const std::vector<FormulaId>& probes,
                                      const BoundedCpaSearch& bounds);

struct ForcedCommonReport {
  bool all_common_interpretation = true;
  std::optional<StructureData> counterexample;
  long long matches = 0;  // candidates equivalent to the target on the probes
};

// Checks that every candidate in the bounded class whose In-validity matches
// the target's on the probes interprets the language commonly. Probes must
// stay in the belief fragment (no probability threshold other than 1):
// under a strictly positive prior, belief events do not depend on the prior
// at all, so one representative prior per (partition, interpretation) choice
// covers the whole prior grid; the search exploits that and enumerates the
// uniform prior only. Throws EvalError on a probe outside the fragment.
ForcedCommonReport search_forced_common_interpretation(Evaluator& target,
                                                       const std::vector<FormulaId>& probes,
                                                       const BoundedCpaSearch& bounds);

}  // namespace ambilogic
