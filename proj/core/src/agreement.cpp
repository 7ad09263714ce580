#include "ambilogic/agreement.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace ambilogic {

namespace {

constexpr std::size_t kMaxRecordedFindings = 16;

bool has_common_prior(const Structure& m) {
  if (!m.has_priors()) return false;
  for (PlayerId i = 2; i <= m.player_count(); ++i) {
    if (m.prior(i) != m.prior(1)) return false;
  }
  return true;
}

std::vector<PlayerId> checked_group(const Structure& m, std::vector<PlayerId> group) {
  if (group.empty()) throw EvalError("player group is empty");
  std::sort(group.begin(), group.end());
  group.erase(std::unique(group.begin(), group.end()), group.end());
  for (PlayerId g : group) {
    if (g < 1 || g > m.player_count()) {
      throw EvalError("player " + std::to_string(g) + " out of range");
    }
  }
  return group;
}

std::vector<PlayerId> all_players(const Structure& m) {
  std::vector<PlayerId> group;
  for (PlayerId i = 1; i <= m.player_count(); ++i) group.push_back(i);
  return group;
}

// The reception proposition for (player, signal); reads as the empty event
// when no player ever lists it, which is exactly "never received".
FormulaId recv_prop(Evaluator& ev, PlayerId i, const std::string& sigma) {
  const std::string name = "recv_" + std::to_string(i) + "_" + sigma;
  FormulaFactory& ff = ev.factory();
  if (ev.structure().has_prop(name)) return ff.prim(name);
  return ff.negation(ff.truth());
}

bool holds_at_every_viewpoint(Evaluator& ev, FormulaId f, int state, Mode mode) {
  if (mode_is_inner(mode)) return ev.eval(f, state, 1, mode);
  for (PlayerId v = 1; v <= ev.structure().player_count(); ++v) {
    if (!ev.eval(f, state, v, mode)) return false;
  }
  return true;
}

}  // namespace

bool common_interpretation(const Structure& m) {
  for (const auto& prop : m.vocabulary()) {
    const StateSet& first = m.prop_extension(1, prop);
    for (PlayerId i = 2; i <= m.player_count(); ++i) {
      if (m.prop_extension(i, prop) != first) return false;
    }
  }
  return true;
}

std::vector<FormulaId> extension_probes(Evaluator& ev, const std::vector<PlayerId>& viewpoints,
                                        Mode mode, int depth, std::size_t cap) {
  FormulaFactory& ff = ev.factory();
  std::map<std::vector<StateSet>, bool> profiles;
  std::vector<FormulaId> pool;

  auto push = [&](FormulaId f) {
    if (pool.size() >= cap) return;
    std::vector<StateSet> profile;
    for (PlayerId v : viewpoints) profile.push_back(ev.extension(f, v, mode));
    if (profiles.emplace(std::move(profile), true).second) pool.push_back(f);
  };

  push(ff.truth());
  for (const auto& p : ev.structure().vocabulary()) {
    FormulaId atom = ff.prim(p);
    push(atom);
    push(ff.negation(atom));
  }
  for (int d = 0; d < depth; ++d) {
    const std::size_t base = pool.size();
    for (std::size_t a = 0; a < base; ++a) {
      for (std::size_t b = a + 1; b < base; ++b) {
        FormulaId both = ff.conj(pool[a], pool[b]);
        FormulaId either = ff.disj(pool[a], pool[b]);
        push(both);
        push(ff.negation(both));
        push(either);
        push(ff.negation(either));
      }
    }
    if (pool.size() == base) break;
  }
  return pool;
}

AmbiguityReport ambiguity_measure(Evaluator& ev, FormulaId f) {
  const Structure& m = ev.structure();
  if (!ev.factory().is_propositional(f)) {
    throw EvalError("ambiguity is measured on propositional formulas only");
  }
  if (!has_common_prior(m)) {
    throw EvalError("ambiguity measure needs a common prior");
  }
  AmbiguityReport report{StateSet(m.state_count()), Rational(0)};
  const StateSet& base = ev.extension(f, 1, Mode::In);
  for (PlayerId i = 2; i <= m.player_count(); ++i) {
    StateSet diff = ev.extension(f, i, Mode::In);
    diff ^= base;
    report.disagreement |= diff;
  }
  report.epsilon = m.prior_measure(1, report.disagreement);
  return report;
}

AgreementReport check_agreement_bound(Evaluator& ev, const std::vector<PlayerId>& group,
                                      FormulaId f, const Rational& b, const Rational& b_prime) {
  const Structure& m = ev.structure();
  AgreementReport report;

  if (!ev.factory().is_propositional(f)) {
    report.precondition_failure = "formula is not propositional";
    return report;
  }
  if (!check_cpa(m).ok) {
    report.precondition_failure = "common prior assumption fails";
    return report;
  }
  report.epsilon = ambiguity_measure(ev, f).epsilon;
  if (!(b_prime > b + report.epsilon)) {
    report.precondition_failure = "thresholds do not separate: need b' > b + epsilon";
    return report;
  }
  const std::vector<PlayerId> g = checked_group(m, group);
  report.applicable = true;

  FormulaFactory& ff = ev.factory();
  const StateSet everything = StateSet::full(m.state_count());
  for (int s = 0; s < m.state_count(); ++s) {
    if (reachable(m, g, s) != everything) continue;
    for (PlayerId i : g) {
      for (PlayerId j : g) {
        if (i == j) continue;
        FormulaId low = ff.prob_cmp(CmpOp::Lt, {{Rational(1), i, f}}, b);
        FormulaId high = ff.prob_cmp(CmpOp::Gt, {{Rational(1), j, f}}, b_prime);
        FormulaId cb = ff.common_belief(g, ff.conj(low, high));
        ++report.points_checked;
        if (ev.eval(cb, s, 1, Mode::In)) {
          report.consistent = false;
          report.witness_i = i;
          report.witness_j = j;
          report.witness_state = s;
          return report;
        }
      }
    }
  }
  return report;
}

SignalFlags classify_signal(Evaluator& ev, const std::string& sigma, int state, Mode mode) {
  const Structure& m = ev.structure();
  if (!m.has_signals()) throw EvalError("structure has no signal map");
  const auto known = m.signal_names();
  if (std::find(known.begin(), known.end(), sigma) == known.end()) {
    throw EvalError("unknown signal '" + sigma + "'");
  }

  SignalFlags flags;
  flags.common = true;
  for (PlayerId i = 1; i <= m.player_count(); ++i) {
    const auto& received = m.signal(i, state);
    if (!received.has_value() || *received != sigma) {
      flags.common = false;
      break;
    }
  }

  FormulaFactory& ff = ev.factory();
  const std::vector<PlayerId> g = all_players(m);

  std::vector<FormulaId> recv(m.player_count() + 1, kNoFormula);
  for (PlayerId i : g) recv[i] = recv_prop(ev, i, sigma);

  std::vector<FormulaId> all_recv;
  for (PlayerId i : g) all_recv.push_back(recv[i]);
  FormulaId public_f = ff.common_belief(g, ff.conj_all(all_recv));

  std::vector<FormulaId> shared_parts;
  std::vector<FormulaId> strong_parts;
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t c = a + 1; c < g.size(); ++c) {
      shared_parts.push_back(ff.common_belief(g, ff.iff(recv[g[a]], recv[g[c]])));
      strong_parts.push_back(ff.common_belief(
          g, ff.iff(ff.belief(g[a], recv[g[a]]), ff.belief(g[c], recv[g[c]]))));
    }
  }
  FormulaId shared_f = ff.conj_all(shared_parts);
  FormulaId strong_f = ff.conj_all(strong_parts);

  flags.is_public = holds_at_every_viewpoint(ev, public_f, state, mode);
  flags.shared = holds_at_every_viewpoint(ev, shared_f, state, mode);
  flags.strongly_shared =
      flags.shared && holds_at_every_viewpoint(ev, strong_f, state, mode);
  return flags;
}

PosteriorEventReport compare_posteriors_events(const Structure& m, int state, PlayerId i,
                                               PlayerId j) {
  PosteriorEventReport report;
  for (int s = 0; s < m.state_count(); ++s) {
    const StateSet point = StateSet::single(m.state_count(), s);
    const Rational a = m.posterior_measure(i, state, point);
    const Rational c = m.posterior_measure(j, state, point);
    if (a != c) {
      report.equal = false;
      report.witness_state = s;
      report.value_i = a;
      report.value_j = c;
      return report;
    }
  }
  return report;
}

PosteriorFormulaReport compare_posteriors_formulas(Evaluator& ev, int state, PlayerId i,
                                                   PlayerId j, Mode mode, int depth,
                                                   PlayerId viewpoint) {
  const Structure& m = ev.structure();
  const bool shared_reading = mode == Mode::Out || mode == Mode::OutAi;

  std::vector<PlayerId> viewpoints;
  if (!shared_reading) {
    viewpoints = {i, j};
  } else if (viewpoint != 0) {
    viewpoints = {viewpoint};
  } else {
    for (PlayerId v = 1; v <= m.player_count(); ++v) viewpoints.push_back(v);
  }

  PosteriorFormulaReport report;
  for (FormulaId probe : extension_probes(ev, viewpoints, mode, depth)) {
    ++report.formulas_checked;
    if (shared_reading) {
      for (PlayerId v : viewpoints) {
        const Rational a = ev.prob_value(probe, state, v, i, mode);
        const Rational c = ev.prob_value(probe, state, v, j, mode);
        if (a != c) {
          report.equal = false;
          report.witness = ev.factory().to_string(probe);
          report.witness_viewpoint = v;
          report.value_i = a;
          report.value_j = c;
          return report;
        }
      }
    } else {
      const Rational a = m.posterior_measure(i, state, ev.extension(probe, i, mode));
      const Rational c = m.posterior_measure(j, state, ev.extension(probe, j, mode));
      if (a != c) {
        report.equal = false;
        report.witness = ev.factory().to_string(probe);
        report.value_i = a;
        report.value_j = c;
        return report;
      }
    }
  }
  return report;
}

AumannReport aumann_check(Evaluator& ev, const std::vector<PlayerId>& group, int depth) {
  const Structure& m = ev.structure();
  const std::vector<PlayerId> g = checked_group(m, group);
  FormulaFactory& ff = ev.factory();

  AumannReport report;
  report.common_interpretation = common_interpretation(m);
  report.cpa = check_cpa(m).ok;

  for (FormulaId probe : extension_probes(ev, g, Mode::In, depth)) {
    for (std::size_t a = 0; a < g.size(); ++a) {
      for (std::size_t c = a + 1; c < g.size(); ++c) {
        const PlayerId pi = g[a];
        const PlayerId pj = g[c];
        const StateSet& ext_i = ev.extension(probe, pi, Mode::In);
        const StateSet& ext_j = ev.extension(probe, pj, Mode::In);
        for (int s = 0; s < m.state_count(); ++s) {
          ++report.points_checked;
          const Rational vi = m.posterior_measure(pi, s, ext_i);
          const Rational vj = m.posterior_measure(pj, s, ext_j);
          if (vi == vj) continue;
          FormulaId cb = ff.common_belief(
              g, ff.conj(ff.prob_cmp(CmpOp::Eq, {{Rational(1), pi, probe}}, vi),
                         ff.prob_cmp(CmpOp::Eq, {{Rational(1), pj, probe}}, vj)));
          if (!ev.eval(cb, s, 1, Mode::In)) continue;
          if (report.findings.size() < kMaxRecordedFindings) {
            report.findings.push_back(
                {s, pi, pj, ff.to_string(probe), vi, vj});
          } else {
            report.truncated = true;
          }
        }
      }
    }
  }
  return report;
}

}  // namespace ambilogic
