// ===== agreement.hpp — ambiguity measurement and agreement analyses =====
//
// How far apart can players' beliefs be driven by reading the language
// differently? ambiguity_measure quantifies a formula's disagreement mass
// under a common prior; check_agreement_bound scans for common belief in
// posterior gaps wider than that mass (a witness would be an implementation
// bug, not a discovery); classify_signal tests the four signal grades; the
// posterior comparisons and aumann_check probe when posteriors must
// coincide and how ambiguity lets players agree to disagree.
//
// Preconditions of the scan-style checks are reported in the result, never
// thrown: an inapplicable premise is itself a useful answer.

#pragma once

#include "ambilogic/semantics.hpp"

#include <string>
#include <vector>

namespace ambilogic {

// True when every player reads every proposition identically.
bool common_interpretation(const Structure& m);

// Propositional probes over the structure's vocabulary, grown to `depth`
// and pruned as they grow: a formula enters the pool only if its profile of
// extensions at the given viewpoints is new. Propositional connectives act
// pointwise on extensions, so pruning loses no profile reachable at these
// viewpoints, while the pool stays bounded by the number of distinct
// profiles instead of the raw formula count. Growth stops at `cap` probes.
std::vector<FormulaId> extension_probes(Evaluator& ev, const std::vector<PlayerId>& viewpoints,
                                        Mode mode, int depth, std::size_t cap = 512);

struct AmbiguityReport {
  // States where some pair of players reads the formula differently.
  StateSet disagreement;
  // Common-prior mass of the disagreement event.
  Rational epsilon;
};

// Requires a common prior (stored and identical across players) and a
// propositional formula; throws EvalError otherwise.
AmbiguityReport ambiguity_measure(Evaluator& ev, FormulaId f);

struct AgreementReport {
  bool applicable = false;
  std::string precondition_failure;  // empty when applicable
  Rational epsilon;
  long long points_checked = 0;  // (i, j, state) triples scanned
  bool consistent = true;
  PlayerId witness_i = 0;
  PlayerId witness_j = 0;
  int witness_state = -1;
};

// Scans every (i, j, omega) with R_G(omega) = Omega for
//   (M, omega) |=in CB_G((Pr_i(f) < b) and (Pr_j(f) > b'))
// under the premises: common prior assumption holds, f propositional, and
// b' > b + epsilon(f). Within the premises a witness cannot exist; finding
// one means the engine is wrong, and the report says which point.
AgreementReport check_agreement_bound(Evaluator& ev, const std::vector<PlayerId>& group,
                                      FormulaId f, const Rational& b, const Rational& b_prime);

struct SignalFlags {
  bool common = false;           // every player receives sigma at the state
  bool is_public = false;        // CB of "everyone received sigma"
  bool shared = false;           // CB that receptions coincide, pairwise
  bool strongly_shared = false;  // shared, plus CB that beliefs in them coincide
};

// Evaluates the defining formulas of the four grades at the state under the
// given mode, over the full player group. Under a viewpoint-sensitive mode
// (Out / OutAi) a grade holds only if its formula holds at every viewpoint.
// Throws EvalError when the structure has no signal map or sigma is not a
// signal of the structure.
SignalFlags classify_signal(Evaluator& ev, const std::string& sigma, int state, Mode mode);

struct PosteriorEventReport {
  bool equal = true;
  // First state (in state order) whose singleton the two measures weigh
  // differently.
  int witness_state = -1;
  Rational value_i;
  Rational value_j;
};

// Compares mu_{i,omega} and mu_{j,omega} as measures on the whole state
// space, extending by 0 off-cell.
PosteriorEventReport compare_posteriors_events(const Structure& m, int state, PlayerId i,
                                               PlayerId j);

struct PosteriorFormulaReport {
  bool equal = true;
  std::string witness;            // printed probe formula
  PlayerId witness_viewpoint = 0; // set when the comparison is viewpoint-sensitive
  Rational value_i;
  Rational value_j;
  int formulas_checked = 0;  // after pruning probes with duplicate extensions
};

// Enumerates propositional probes over the structure's vocabulary up to the
// given depth and compares the two players' probabilities for each probe.
// Under In / InAi each player's value uses their own reading of the probe:
// mu_{i,omega}([[psi]]_i) vs mu_{j,omega}([[psi]]_j). Under Out / OutAi the
// probe is read at a shared viewpoint — both believers' mode-native values
// are compared at every viewpoint (or only at `viewpoint` when nonzero),
// since an observer who is unaware of ambiguity applies one reading to
// everyone. A comparison of the believers' own readings against each other
// would be falsified already by a one-state structure where they read a
// single proposition oppositely.
PosteriorFormulaReport compare_posteriors_formulas(Evaluator& ev, int state, PlayerId i,
                                                   PlayerId j, Mode mode, int depth,
                                                   PlayerId viewpoint = 0);

struct AumannFinding {
  int state = -1;
  PlayerId i = 0;
  PlayerId j = 0;
  std::string formula;
  Rational value_i;
  Rational value_j;
};

struct AumannReport {
  bool common_interpretation = false;
  bool cpa = false;
  bool applicable() const { return common_interpretation && cpa; }
  // When applicable: genuine violations (there should be none). Otherwise:
  // demonstrations of common belief in differing posteriors reached through
  // the failed premise — the ambiguity escape hatch.
  std::vector<AumannFinding> findings;
  bool truncated = false;  // search kept counting but stopped recording
  long long points_checked = 0;
};

// For every state, every propositional probe up to `depth`, and every
// ordered pair in the group: when the players' posterior values a and c for
// the probe differ, checks |=in CB_G(Pr_i(f) = a and Pr_j(f) = c).
AumannReport aumann_check(Evaluator& ev, const std::vector<PlayerId>& group, int depth = 2);

}  // namespace ambilogic
