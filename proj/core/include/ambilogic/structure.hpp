// ===== structure.hpp — epistemic probability structures =====
//
// A Structure is the finite object (Omega, Pi_i, P_i, pi_i): a state space,
// one information partition per player, one posterior per player and cell,
// and one interpretation of the propositions per player. Ambiguity is
// nothing more than pi_i != pi_j. Priors, per-cell label formulas, and a
// signal assignment are optional extras used by the conditioning semantics
// and the signal analyses.
//
// Players are 1-based everywhere in this API, matching the formula syntax.
// States are dense 0-based indices in declaration order; names are only for
// I/O and diagnostics.
//
// Construction goes through StructureData + build_structure, which reject
// malformed shape (unknown names, arity mismatches, oversized spaces).
// Semantic defects such as overlapping cells or posteriors that do not sum
// to one are NOT rejected here; validate() reports them. Evaluation on a
// structure that fails validate() is unspecified.

#pragma once

#include "ambilogic/formula.hpp"
#include "ambilogic/rational.hpp"
#include "ambilogic/stateset.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ambilogic {

inline constexpr int kDefaultMaxStates = 64;

struct ModelError : std::runtime_error {
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

// Mirror of the model file: everything keyed by name, one field per JSON key.
struct StructureData {
  std::vector<std::string> states;
  int players = 0;
  // [player-1][cell][member]
  std::vector<std::vector<std::vector<std::string>>> partitions;
  // [player-1][cell]{state: mass}, sparse; absent states carry mass 0
  std::vector<std::vector<std::map<std::string, Rational>>> posteriors;
  // [player-1][state index][true props]
  std::vector<std::vector<std::vector<std::string>>> interpretations;
  std::optional<std::vector<std::map<std::string, Rational>>> priors;
  // [player-1][cell] formula text
  std::optional<std::vector<std::vector<std::string>>> cell_labels;
  // state name -> one entry per player, nullopt when no signal is received
  std::optional<std::map<std::string, std::vector<std::optional<std::string>>>> signals;
};

class Structure {
public:
  int state_count() const { return static_cast<int>(names_.size()); }
  int player_count() const { return players_; }

  const std::vector<std::string>& state_names() const { return names_; }
  const std::string& state_name(int idx) const { return names_.at(idx); }
  // -1 when unknown
  int state_index(const std::string& name) const;

  // Propositions in first-appearance order across all interpretations.
  const std::vector<std::string>& vocabulary() const { return props_; }
  bool has_prop(const std::string& name) const;

  int cell_count(PlayerId i) const;
  const StateSet& cell(PlayerId i, int cell_idx) const;
  // -1 when the state is in no cell (malformed partition)
  int cell_index(PlayerId i, int state) const;
  const StateSet& cell_of(PlayerId i, int state) const;

  // Raw per-cell posterior entries, in state order (may be off-cell or
  // non-normalized on structures that fail validate()).
  const std::map<int, Rational>& posterior_entries(PlayerId i, int cell_idx) const;
  // mu_{i,.}(single state) within its own cell
  Rational posterior_mass(PlayerId i, int state) const;
  // mu over the states of cell cell_idx that lie in e
  Rational cell_measure(PlayerId i, int cell_idx, const StateSet& e) const;
  // mu_{i,omega}(e  intersect  Pi_i(omega))
  Rational posterior_measure(PlayerId i, int state, const StateSet& e) const;

  bool prop_true_at(PlayerId i, int state, const std::string& prop) const;
  // [[p]]_i; empty set when the player never lists the proposition
  const StateSet& prop_extension(PlayerId i, const std::string& prop) const;

  bool has_priors() const { return priors_.has_value(); }
  const std::vector<Rational>& prior(PlayerId i) const;
  Rational prior_measure(PlayerId i, const StateSet& e) const;

  bool has_cell_labels() const { return labels_.has_value(); }
  const std::string& cell_label(PlayerId i, int cell_idx) const;

  bool has_signals() const { return signals_.has_value(); }
  const std::optional<std::string>& signal(PlayerId i, int state) const;
  // Distinct signal names in first-appearance order (state-major, then player).
  std::vector<std::string> signal_names() const;

  // Name-keyed copy, suitable for editing and rebuilding.
  StructureData to_data() const;

private:
  friend Structure build_structure(const StructureData& data, int max_states);

  void check_player(PlayerId i) const;

  std::vector<std::string> names_;
  std::map<std::string, int> name_to_idx_;
  int players_ = 0;
  std::vector<std::string> props_;
  std::map<std::string, int> prop_to_idx_;

  std::vector<std::vector<StateSet>> cells_;            // [player-1][cell]
  std::vector<std::vector<int>> cell_of_;               // [player-1][state]
  std::vector<std::vector<std::map<int, Rational>>> post_;  // [player-1][cell]
  std::vector<std::vector<StateSet>> ext_;              // [player-1][prop]
  StateSet empty_ext_;

  std::optional<std::vector<std::vector<Rational>>> priors_;  // [player-1][state]
  std::optional<std::vector<std::vector<std::string>>> labels_;
  std::optional<std::vector<std::vector<std::optional<std::string>>>> signals_;  // [player-1][state]
};

Structure build_structure(const StructureData& data, int max_states = kDefaultMaxStates);

// Closure of {omega} under the relation "shares a Pi_i cell for some i in
// group": the event of states reachable through any chain of group members'
// information sets.
StateSet reachable(const Structure& m, const std::vector<PlayerId>& group, int state);

// The canonical generating priors: each of player i's cells receives total
// mass 1/(number of i's cells), distributed within the cell by its posterior.
// Conditioning these priors on any cell returns exactly the stored
// posteriors, so beliefs are always prior-generated in the finite case.
std::vector<std::vector<Rational>> generate_priors(const Structure& m);

struct PriorGenMismatch {
  PlayerId player = 0;
  int cell = 0;
  int state = 0;
  Rational expected;  // nu_i(state | cell)
  Rational actual;    // stored posterior mass
};

struct PriorGenReport {
  bool ok = true;
  std::vector<PriorGenMismatch> mismatches;
  // cells with nu_i(cell) = 0: the prior puts no constraint on them
  std::vector<std::pair<PlayerId, int>> unconstrained;
};

// Checks that the structure's stored priors generate its posteriors by
// conditioning. Requires priors; throws std::invalid_argument otherwise.
PriorGenReport check_prior_generated(const Structure& m);

struct CpaReport {
  bool ok = false;
  bool has_priors = false;
  bool priors_common = false;
  // first pair of players whose priors differ, with the witness state
  PlayerId differ_i = 0, differ_j = 0;
  int differ_state = -1;
  PriorGenReport prior_generated;
  bool reachable_positive = false;
  int null_reachable_state = -1;  // state whose reachability class has prior mass 0
};

// Common prior assumption: identical priors across players, posteriors
// reproduced by conditioning, and every reachability class R_N(omega) of
// positive prior mass.
CpaReport check_cpa(const Structure& m);

// One-way certificate that NO common prior can generate the posteriors,
// whatever priors are or are not stored. Any generating prior must give
// full mass to the union of a player's posterior supports (cells of zero
// prior mass contribute nothing, and on the rest conditioning forces the
// support); when those unions have empty intersection across players, no
// single prior serves them all. Returns true only on that certificate —
// false means "not settled by this test", not "a common prior exists".
bool common_prior_impossible(const Structure& m);

}  // namespace ambilogic
