// ===== semantics.hpp — the four satisfaction relations =====
//
// Every relation is parameterized by an evaluation state, a viewpoint
// player i (whose reading of the language frames the query), and a mode:
//
//   Out    argument formulas keep the outer viewpoint i; a probability
//          atom over player j measures mu_{j,omega}([[f]]_i ^ Pi_j(omega))
//   In     argument formulas switch to the believing player j:
//          mu_{j,omega}([[f]]_j ^ Pi_j(omega))
//   OutAi  beliefs come from j's prior conditioned on the viewpoint's
//          reading of j's cell label: nu_j([[f]]_i | [[label_j]]_i)
//   InAi   the same with j's own reading: nu_j([[f]]_j | [[label_j]]_j)
//
// In and InAi never depend on the viewpoint except through bare
// propositions; Out and OutAi are where ambiguity of the outer speaker
// shows up. The two conditioning modes require priors and cell labels and
// raise ConditioningUndefined when a conditioning event has prior mass 0.
//
// An Evaluator is a session over one structure and one formula factory.
// Extensions are memoized per (subformula, viewpoint, mode); common belief
// per (group, argument event). Sessions are independent; two threads may
// evaluate over the same structure through separate sessions.

#pragma once

#include "ambilogic/formula.hpp"
#include "ambilogic/stateset.hpp"
#include "ambilogic/structure.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ambilogic {

enum class Mode : std::uint8_t { Out, In, OutAi, InAi };

const char* mode_name(Mode mode);
std::optional<Mode> mode_from_name(std::string_view name);  // out | in | out-ai | in-ai

constexpr bool mode_is_inner(Mode mode) { return mode == Mode::In || mode == Mode::InAi; }
constexpr bool mode_is_conditioning(Mode mode) { return mode == Mode::OutAi || mode == Mode::InAi; }

struct EvalError : std::runtime_error {
  explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

struct ConditioningUndefined : EvalError {
  ConditioningUndefined(PlayerId believer, std::string state, PlayerId viewpoint)
      : EvalError("conditioning undefined: player " + std::to_string(believer) +
                  "'s cell label at state '" + state + "' has prior mass 0 under viewpoint " +
                  std::to_string(viewpoint)),
        believer(believer),
        state(std::move(state)),
        viewpoint(viewpoint) {}

  PlayerId believer;
  std::string state;   // first state of the offending cell, in state order
  PlayerId viewpoint;
};

class Evaluator {
public:
  Evaluator(const Structure& m, FormulaFactory& factory);

  // [[f]] at the given viewpoint and mode, over the whole state space.
  const StateSet& extension(FormulaId f, PlayerId viewpoint, Mode mode);

  bool eval(FormulaId f, int state, PlayerId viewpoint, Mode mode);

  // The measure the mode assigns to Pr_believer(f) at (state, viewpoint).
  Rational prob_value(FormulaId f, int state, PlayerId viewpoint, PlayerId believer, Mode mode);

  // {omega : believer's mode-measure at omega gives e probability exactly 1};
  // always a union of the believer's cells.
  StateSet belief_event(PlayerId believer, const StateSet& e, PlayerId viewpoint, Mode mode);

  // One round of "everybody in group believes e".
  StateSet everyone_believes_event(const std::vector<PlayerId>& group, const StateSet& e,
                                   PlayerId viewpoint, Mode mode);

  // Common belief of the fixed event e: the intersection of all finite
  // iterations EB^k(e), k >= 1.
  StateSet common_belief_event(const std::vector<PlayerId>& group, const StateSet& e,
                               PlayerId viewpoint, Mode mode);

  const Structure& structure() const { return m_; }
  FormulaFactory& factory() { return factory_; }

private:
  struct ExtKey {
    FormulaId f;
    PlayerId viewpoint;
    Mode mode;
    friend bool operator==(const ExtKey&, const ExtKey&) = default;
  };
  struct ExtKeyHash {
    std::size_t operator()(const ExtKey& k) const {
      return (static_cast<std::size_t>(k.f) * 1315423911u) ^
             (static_cast<std::size_t>(k.viewpoint) << 8) ^ static_cast<std::size_t>(k.mode);
    }
  };
  struct CbKey {
    std::vector<PlayerId> group;
    StateSet event;
    PlayerId viewpoint;  // 0 when the mode ignores the viewpoint
    Mode mode;
    friend bool operator==(const CbKey&, const CbKey&) = default;
  };
  struct CbKeyHash {
    std::size_t operator()(const CbKey& k) const {
      std::size_t seed = k.event.hash();
      for (PlayerId g : k.group) seed = seed * 31 + static_cast<std::size_t>(g);
      return seed ^ (static_cast<std::size_t>(k.viewpoint) << 8) ^ static_cast<std::size_t>(k.mode);
    }
  };

  const StateSet& compute_extension(const ExtKey& key);
  StateSet eval_prob_ge(const FormulaNode& n, PlayerId viewpoint, Mode mode);

  // The mode's measure of e for the believer at any state of cell cell_idx.
  Rational cell_prob(PlayerId believer, int cell_idx, const StateSet& e, PlayerId viewpoint,
                     Mode mode);

  // Argument viewpoint for things believed by `believer` under `mode`.
  PlayerId argument_viewpoint(PlayerId believer, PlayerId viewpoint, Mode mode) const {
    return mode_is_inner(mode) ? believer : viewpoint;
  }

  // Conditioning event for ai modes: the label of believer's cell, read by
  // the conditioning viewpoint under the same mode.
  const StateSet& label_extension(PlayerId believer, int cell_idx, PlayerId viewpoint, Mode mode);
  FormulaId parsed_label(PlayerId believer, int cell_idx);

  StateSet seeded_common_belief(StateSet level_one, const std::vector<PlayerId>& group,
                                PlayerId viewpoint, Mode mode);

  void require_conditioning_support(Mode mode) const;
  void check_point(int state, PlayerId viewpoint) const;

  const Structure& m_;
  FormulaFactory& factory_;
  std::unordered_map<ExtKey, StateSet, ExtKeyHash> ext_memo_;
  std::unordered_map<CbKey, StateSet, CbKeyHash> cb_memo_;
  std::unordered_map<std::uint64_t, FormulaId> label_ids_;  // (player, cell) -> formula
};

}  // namespace ambilogic
