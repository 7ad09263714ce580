#include "ambilogic/semantics.hpp"

#include "ambilogic/parser.hpp"

namespace ambilogic {

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::Out: return "out";
    case Mode::In: return "in";
    case Mode::OutAi: return "out-ai";
    case Mode::InAi: return "in-ai";
  }
  return "?";
}

std::optional<Mode> mode_from_name(std::string_view name) {
  if (name == "out") return Mode::Out;
  if (name == "in") return Mode::In;
  if (name == "out-ai") return Mode::OutAi;
  if (name == "in-ai") return Mode::InAi;
  return std::nullopt;
}

Evaluator::Evaluator(const Structure& m, FormulaFactory& factory) : m_(m), factory_(factory) {}

void Evaluator::check_point(int state, PlayerId viewpoint) const {
  if (state < 0 || state >= m_.state_count())
    throw EvalError("state index out of range");
  if (viewpoint < 1 || viewpoint > m_.player_count())
    throw EvalError("viewpoint " + std::to_string(viewpoint) + " out of range (structure has " +
                    std::to_string(m_.player_count()) + " players)");
}

void Evaluator::require_conditioning_support(Mode mode) const {
  if (!mode_is_conditioning(mode)) return;
  if (!m_.has_priors())
    throw EvalError(std::string(mode_name(mode)) + " semantics needs priors");
  if (!m_.has_cell_labels())
    throw EvalError(std::string(mode_name(mode)) + " semantics needs cell labels");
}

bool Evaluator::eval(FormulaId f, int state, PlayerId viewpoint, Mode mode) {
  check_point(state, viewpoint);
  return extension(f, viewpoint, mode).test(state);
}

const StateSet& Evaluator::extension(FormulaId f, PlayerId viewpoint, Mode mode) {
  if (viewpoint < 1 || viewpoint > m_.player_count())
    throw EvalError("viewpoint " + std::to_string(viewpoint) + " out of range (structure has " +
                    std::to_string(m_.player_count()) + " players)");
  ExtKey key{f, viewpoint, mode};
  if (auto it = ext_memo_.find(key); it != ext_memo_.end()) return it->second;
  const StateSet& out = compute_extension(key);
  return out;
}

const StateSet& Evaluator::compute_extension(const ExtKey& key) {
  const auto [f, viewpoint, mode] = key;
  const FormulaNode n = factory_.node(f);  // copy: the factory may grow below
  const int size = m_.state_count();

  StateSet out(size);
  switch (n.kind) {
    case NodeKind::True:
      out = StateSet::full(size);
      break;
    case NodeKind::Prim:
      // Propositions outside the structure's vocabulary are false everywhere:
      // the language is larger than any one model's stock of used names.
      if (m_.has_prop(n.prop)) out = m_.prop_extension(viewpoint, n.prop);
      break;
    case NodeKind::Not:
      out = extension(n.child0, viewpoint, mode).complement();
      break;
    case NodeKind::And:
      out = extension(n.child0, viewpoint, mode) & extension(n.child1, viewpoint, mode);
      break;
    case NodeKind::Or:
      out = extension(n.child0, viewpoint, mode) | extension(n.child1, viewpoint, mode);
      break;
    case NodeKind::Implies:
      out = extension(n.child0, viewpoint, mode).complement() | extension(n.child1, viewpoint, mode);
      break;
    case NodeKind::Iff: {
      const StateSet& a = extension(n.child0, viewpoint, mode);
      StateSet b = extension(n.child1, viewpoint, mode);
      StateSet both = a & b;
      StateSet neither = (a | b).complement();
      out = both | neither;
      break;
    }
    case NodeKind::ProbGE:
      out = eval_prob_ge(n, viewpoint, mode);
      break;
    case NodeKind::Belief: {
      PlayerId j = n.player;
      StateSet arg = extension(n.child0, argument_viewpoint(j, viewpoint, mode), mode);
      out = belief_event(j, arg, viewpoint, mode);
      break;
    }
    case NodeKind::EvBelief: {
      StateSet level(size);
      bool seeded = false;
      for (PlayerId j : n.group) {
        StateSet arg = extension(n.child0, argument_viewpoint(j, viewpoint, mode), mode);
        StateSet b = belief_event(j, arg, viewpoint, mode);
        if (!seeded) { level = std::move(b); seeded = true; }
        else level &= b;
      }
      for (int k = 1; k < n.count; ++k) {
        level = everyone_believes_event(n.group, level, viewpoint, mode);
      }
      out = std::move(level);
      break;
    }
    case NodeKind::CommonBelief: {
      // Level one of the chain: under the inner modes each member believes
      // their own reading of the argument; the higher levels all act on one
      // shared event.
      StateSet level(size);
      bool seeded = false;
      for (PlayerId j : n.group) {
        StateSet arg = extension(n.child0, argument_viewpoint(j, viewpoint, mode), mode);
        StateSet b = belief_event(j, arg, viewpoint, mode);
        if (!seeded) { level = std::move(b); seeded = true; }
        else level &= b;
      }
      out = seeded_common_belief(std::move(level), n.group, viewpoint, mode);
      break;
    }
    case NodeKind::Knows: {
      PlayerId j = n.player;
      if (j > m_.player_count()) throw EvalError("player index K_" + std::to_string(j) + " out of range");
      const StateSet& arg = extension(n.child0, argument_viewpoint(j, viewpoint, mode), mode);
      for (int s = 0; s < size; ++s) {
        if (m_.cell_of(j, s).is_subset_of(arg)) out.set(s);
      }
      break;
    }
  }

  auto [it, inserted] = ext_memo_.emplace(ExtKey{f, viewpoint, mode}, std::move(out));
  return it->second;
}

StateSet Evaluator::eval_prob_ge(const FormulaNode& n, PlayerId viewpoint, Mode mode) {
  require_conditioning_support(mode);
  const int size = m_.state_count();

  // Each term's value depends on the state only through the believing
  // player's cell, so compute one value per cell and broadcast.
  std::vector<std::vector<Rational>> term_by_cell;
  term_by_cell.reserve(n.terms.size());
  for (const ProbTerm& t : n.terms) {
    if (t.player > m_.player_count())
      throw EvalError("player index Pr_" + std::to_string(t.player) + " out of range");
    StateSet arg = extension(t.arg, argument_viewpoint(t.player, viewpoint, mode), mode);
    std::vector<Rational> per_cell(m_.cell_count(t.player));
    for (int c = 0; c < m_.cell_count(t.player); ++c) {
      per_cell[c] = cell_prob(t.player, c, arg, viewpoint, mode);
    }
    term_by_cell.push_back(std::move(per_cell));
  }

  StateSet out(size);
  for (int s = 0; s < size; ++s) {
    Rational sum(0);
    for (std::size_t k = 0; k < n.terms.size(); ++k) {
      const ProbTerm& t = n.terms[k];
      int c = m_.cell_index(t.player, s);
      if (c < 0)
        throw EvalError("state '" + m_.state_name(s) + "' is in no cell of player " +
                        std::to_string(t.player));
      sum += t.coeff * term_by_cell[k][c];
    }
    if (sum >= n.bound) out.set(s);
  }
  return out;
}

Rational Evaluator::cell_prob(PlayerId believer, int cell_idx, const StateSet& e,
                              PlayerId viewpoint, Mode mode) {
  switch (mode) {
    case Mode::Out:
    case Mode::In:
      return m_.cell_measure(believer, cell_idx, e);
    case Mode::OutAi:
    case Mode::InAi: {
      PlayerId cond_viewpoint = mode == Mode::OutAi ? viewpoint : believer;
      const StateSet& d = label_extension(believer, cell_idx, cond_viewpoint, mode);
      Rational denom = m_.prior_measure(believer, d);
      if (denom.is_zero()) {
        int rep = m_.cell(believer, cell_idx).first();
        throw ConditioningUndefined(believer, m_.state_name(rep), cond_viewpoint);
      }
      return m_.prior_measure(believer, e & d) / denom;
    }
  }
  throw EvalError("unknown mode");
}

FormulaId Evaluator::parsed_label(PlayerId believer, int cell_idx) {
  std::uint64_t key = (static_cast<std::uint64_t>(believer) << 32) |
                      static_cast<std::uint32_t>(cell_idx);
  if (auto it = label_ids_.find(key); it != label_ids_.end()) return it->second;
  FormulaId f = parse_formula(m_.cell_label(believer, cell_idx), factory_);
  label_ids_[key] = f;
  return f;
}

const StateSet& Evaluator::label_extension(PlayerId believer, int cell_idx, PlayerId viewpoint,
                                           Mode mode) {
  // Labels are evaluated under the same relation that conditions on them;
  // the recursion is over the label's own syntax tree, so it terminates.
  return extension(parsed_label(believer, cell_idx), viewpoint, mode);
}

StateSet Evaluator::belief_event(PlayerId believer, const StateSet& e, PlayerId viewpoint,
                                 Mode mode) {
  require_conditioning_support(mode);
  if (believer < 1 || believer > m_.player_count())
    throw EvalError("player index " + std::to_string(believer) + " out of range");
  StateSet out(m_.state_count());
  for (int c = 0; c < m_.cell_count(believer); ++c) {
    if (cell_prob(believer, c, e, viewpoint, mode).is_one()) out |= m_.cell(believer, c);
  }
  return out;
}

StateSet Evaluator::everyone_believes_event(const std::vector<PlayerId>& group, const StateSet& e,
                                            PlayerId viewpoint, Mode mode) {
  if (group.empty()) throw EvalError("empty group");
  StateSet out(m_.state_count());
  bool seeded = false;
  for (PlayerId j : group) {
    StateSet b = belief_event(j, e, viewpoint, mode);
    if (!seeded) { out = std::move(b); seeded = true; }
    else out &= b;
  }
  return out;
}

StateSet Evaluator::common_belief_event(const std::vector<PlayerId>& group, const StateSet& e,
                                        PlayerId viewpoint, Mode mode) {
  CbKey key{group, e, mode == Mode::OutAi ? viewpoint : PlayerId{0}, mode};
  if (auto it = cb_memo_.find(key); it != cb_memo_.end()) return it->second;
  StateSet out = seeded_common_belief(everyone_believes_event(group, e, viewpoint, mode), group,
                                      viewpoint, mode);
  cb_memo_.emplace(std::move(key), out);
  return out;
}

StateSet Evaluator::seeded_common_belief(StateSet level_one, const std::vector<PlayerId>& group,
                                         PlayerId viewpoint, Mode mode) {
  // Common belief of Y is the intersection of the chain X_1 = EB(Y),
  // X_{k+1} = EB(X_k). Probability-1 belief commutes with intersections
  // (mu(A & B) = 1 exactly when mu(A) = mu(B) = 1), so EB does too, and
  // iterating E -> X_1 & EB(E) from the full space yields the partial
  // intersections X_1 & ... & X_k directly; they stabilize on the greatest
  // fixpoint within |Omega| + 1 rounds because each round either removes a
  // state or finishes.
  StateSet current = StateSet::full(m_.state_count());
  for (int round = 0; round <= m_.state_count() + 1; ++round) {
    StateSet next = level_one & everyone_believes_event(group, current, viewpoint, mode);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

Rational Evaluator::prob_value(FormulaId f, int state, PlayerId viewpoint, PlayerId believer,
                               Mode mode) {
  check_point(state, viewpoint);
  require_conditioning_support(mode);
  if (believer < 1 || believer > m_.player_count())
    throw EvalError("player index " + std::to_string(believer) + " out of range");
  StateSet arg = extension(f, argument_viewpoint(believer, viewpoint, mode), mode);
  int c = m_.cell_index(believer, state);
  if (c < 0) throw EvalError("state is in no cell of player " + std::to_string(believer));
  return cell_prob(believer, c, arg, viewpoint, mode);
}

}  // namespace ambilogic
