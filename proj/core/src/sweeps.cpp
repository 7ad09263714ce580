#include "ambilogic/sweeps.hpp"

#include "ambilogic/agreement.hpp"
#include "ambilogic/family.hpp"
#include "ambilogic/generator.hpp"
#include "ambilogic/semantics.hpp"
#include "ambilogic/transforms.hpp"
#include "ambilogic/validate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>

namespace ambilogic {

namespace {

constexpr std::size_t kMaxRecordedViolations = 8;

struct SweepContext {
  const SweepOptions& opts;
  SweepResult& result;
  FormulaFactory factory;
  std::map<std::string, std::vector<FormulaId>> families;
  std::uint64_t seed = 0;

  void record(std::string detail) {
    if (result.violations.size() < kMaxRecordedViolations) {
      result.violations.push_back({seed, std::move(detail)});
    } else {
      result.truncated = true;
    }
  }

  // Counts the instance; the detail closure runs only on failure.
  void require(bool holds, auto&& detail) {
    ++result.cases_checked;
    if (!holds) record(detail());
  }
};

void for_each_structure(SweepContext& ctx, const GeneratorConfig& gen,
                        const std::function<void(const Structure&)>& body) {
  for (int k = 0; k < ctx.opts.seed_count; ++k) {
    ctx.seed = ctx.opts.seed_begin + static_cast<std::uint64_t>(k);
    const Structure m = random_structure(ctx.seed, gen);
    body(m);
    ++ctx.result.seeds_run;
  }
}

std::vector<PlayerId> all_players(const Structure& m) {
  std::vector<PlayerId> group;
  for (PlayerId i = 1; i <= m.player_count(); ++i) group.push_back(i);
  return group;
}

// The generated payload propositions: everything before the first
// reception proposition in vocabulary order.
std::vector<std::string> payload_props(const Structure& m) {
  std::vector<std::string> props;
  for (const auto& p : m.vocabulary()) {
    if (p.rfind("recv_", 0) == 0) break;
    props.push_back(p);
  }
  return props;
}

const std::vector<FormulaId>& base_family(SweepContext& ctx, const Structure& m, int depth) {
  const auto props = payload_props(m);
  std::string key = std::to_string(m.player_count()) + "@" + std::to_string(depth);
  for (const auto& p : props) key += "," + p;
  auto it = ctx.families.find(key);
  if (it == ctx.families.end()) {
    it = ctx.families
             .emplace(key, formula_family(ctx.factory, props, m.player_count(), depth))
             .first;
  }
  return it->second;
}

// The payload family plus flat probes over the reception propositions, so
// label-related readings show up as formula atoms too.
std::vector<FormulaId> mixed_family(SweepContext& ctx, const Structure& m, int depth) {
  std::vector<FormulaId> family = base_family(ctx, m, depth);
  FormulaFactory& ff = ctx.factory;
  const std::vector<PlayerId> group = all_players(m);
  for (const auto& p : m.vocabulary()) {
    if (p.rfind("recv_", 0) != 0) continue;
    const FormulaId atom = ff.prim(p);
    family.push_back(atom);
    family.push_back(ff.negation(atom));
    for (PlayerId i : group) {
      family.push_back(ff.belief(i, atom));
      family.push_back(ff.knows(i, atom));
    }
    family.push_back(ff.common_belief(group, atom));
  }
  return family;
}

bool valid_in(Evaluator& ev, FormulaId f, Mode mode) {
  const StateSet everything = StateSet::full(ev.structure().state_count());
  for (PlayerId v = 1; v <= ev.structure().player_count(); ++v) {
    if (ev.extension(f, v, mode) != everything) return false;
  }
  return true;
}

std::string point_str(const Structure& m, int state, PlayerId viewpoint) {
  return "state " + m.state_name(state) + ", viewpoint " + std::to_string(viewpoint);
}

void record_verdict(SweepContext& ctx, const std::string& what, const Structure& left,
                    const EquivalenceVerdict& v) {
  ctx.result.cases_checked += v.comparisons;
  if (v.equivalent) return;
  ctx.record(what + ": " + v.witness_formula + " disagrees at left " +
             point_str(left, v.witness.left.state, v.witness.left.viewpoint) +
             " vs right state #" + std::to_string(v.witness.right.state) + ", viewpoint " +
             std::to_string(v.witness.right.viewpoint));
}

const std::vector<Rational>& threshold_grid() {
  static const std::vector<Rational> kGrid = {Rational(0), Rational(1, 4), Rational(1, 2),
                                              Rational(3, 4), Rational(1)};
  return kGrid;
}

std::vector<std::map<std::string, Rational>> name_keyed_priors(
    const Structure& m, const std::vector<std::vector<Rational>>& priors) {
  std::vector<std::map<std::string, Rational>> out;
  for (PlayerId i = 1; i <= m.player_count(); ++i) {
    std::map<std::string, Rational> nu;
    for (int s = 0; s < m.state_count(); ++s) {
      if (!priors[i - 1][s].is_zero()) nu[m.state_name(s)] = priors[i - 1][s];
    }
    out.push_back(std::move(nu));
  }
  return out;
}

// ---- suites --------------------------------------------------------------

void suite_generator_valid(SweepContext& ctx) {
  GeneratorConfig plain;
  GeneratorConfig no_prior;
  no_prior.common_prior = false;
  no_prior.allow_degenerate = true;
  GeneratorConfig signals;
  signals.with_signals = true;
  GeneratorConfig unambiguous;
  unambiguous.ambiguity = Rational(0);
  unambiguous.with_signals = true;

  for (int k = 0; k < ctx.opts.seed_count; ++k) {
    ctx.seed = ctx.opts.seed_begin + static_cast<std::uint64_t>(k);
    for (const GeneratorConfig& gen : {plain, no_prior, signals, unambiguous}) {
      const Structure m = random_structure(ctx.seed, gen);
      ctx.require(validate(m).ok(), [&] { return std::string("validate() fails"); });
      if (gen.common_prior) {
        ctx.require(check_cpa(m).ok, [&] { return std::string("generated prior fails cpa"); });
      }
      if (gen.with_signals) {
        ctx.require(validate_ai(m, Mode::OutAi).ok(),
                    [&] { return std::string("A5+A6 fail on a signal structure"); });
        ctx.require(validate_ai(m, Mode::InAi).ok(),
                    [&] { return std::string("A5+A6' fail on a signal structure"); });
      }
      if (gen.ambiguity.is_zero()) {
        ctx.require(common_interpretation(m),
                    [&] { return std::string("zero ambiguity is not commonly interpreted"); });
      }
    }
    ++ctx.result.seeds_run;
  }
}

void suite_prior_roundtrip(SweepContext& ctx) {
  GeneratorConfig gen;
  gen.common_prior = false;
  gen.allow_degenerate = true;
  for_each_structure(ctx, gen, [&](const Structure& m) {
    StructureData data = m.to_data();
    data.priors = name_keyed_priors(m, generate_priors(m));
    const Structure with = build_structure(data, m.state_count());

    const PriorGenReport rep = check_prior_generated(with);
    ctx.require(rep.ok, [&] {
      const auto& miss = rep.mismatches.front();
      return "conditioning misses: player " + std::to_string(miss.player) + ", cell " +
             std::to_string(miss.cell) + ", state " + with.state_name(miss.state) +
             ": expected " + miss.expected.str() + ", stored " + miss.actual.str();
    });
    ctx.require(rep.unconstrained.empty(), [&] {
      return "cell (" + std::to_string(rep.unconstrained.front().first) + ", " +
             std::to_string(rep.unconstrained.front().second) + ") got prior mass 0";
    });
    for (PlayerId i = 1; i <= with.player_count(); ++i) {
      const Rational expected(1, with.cell_count(i));
      for (int c = 0; c < with.cell_count(i); ++c) {
        ctx.require(with.prior_measure(i, with.cell(i, c)) == expected, [&] {
          return "player " + std::to_string(i) + " cell " + std::to_string(c) + " mass " +
                 with.prior_measure(i, with.cell(i, c)).str() + " != " + expected.str();
        });
      }
    }
  });
}

void suite_projection(SweepContext& ctx) {
  for_each_structure(ctx, GeneratorConfig{}, [&](const Structure& m) {
    const auto& family = base_family(ctx, m, ctx.opts.depth);
    Evaluator left(m, ctx.factory);
    for (PlayerId i = 1; i <= m.player_count(); ++i) {
      const Structure proj = project_outermost(m, i);
      Evaluator right(proj, ctx.factory);
      const EquivalenceVerdict v = check_equivalent(left, right, projection_pairing(m, i),
                                                    Mode::Out, Mode::Out, family);
      record_verdict(ctx, "projection onto player " + std::to_string(i), m, v);
    }
  });
}

void suite_copies(SweepContext& ctx) {
  for_each_structure(ctx, GeneratorConfig{}, [&](const Structure& m) {
    // The copies construction preserves belief and probability, not
    // partition knowledge: an output cell spans every player's copies, so
    // K_i quantifies over states carrying other players' readings.
    std::vector<FormulaId> family;
    for (FormulaId f : base_family(ctx, m, ctx.opts.depth)) {
      if (!ctx.factory.mentions(f, NodeKind::Knows)) family.push_back(f);
    }
    const CopiesResult copies = disjoint_copies(m);
    Evaluator left(m, ctx.factory);
    Evaluator right(copies.structure, ctx.factory);
    const EquivalenceVerdict v =
        check_equivalent(left, right, copies_pairing(copies), Mode::In, Mode::In, family);
    record_verdict(ctx, "disjoint copies", m, v);
  });
}

void suite_copies_cpa_fail(SweepContext& ctx) {
  for_each_structure(ctx, GeneratorConfig{}, [&](const Structure& m) {
    const CopiesResult copies = disjoint_copies(m);
    ctx.require(common_prior_impossible(copies.structure),
                [&] { return std::string("copies output admits a common prior candidate"); });

    StructureData data = copies.structure.to_data();
    data.priors = name_keyed_priors(copies.structure, generate_priors(copies.structure));
    const Structure with = build_structure(data, copies.structure.state_count());
    ctx.require(!check_cpa(with).ok,
                [&] { return std::string("canonical priors on copies pass cpa"); });

    if (check_cpa(m).ok) {
      ctx.require(!common_prior_impossible(m),
                  [&] { return std::string("impossibility certificate fired on a cpa input"); });
    }
  });
}

void suite_labels_restriction(SweepContext& ctx) {
  for_each_structure(ctx, GeneratorConfig{}, [&](const Structure& m) {
    const LabelsResult r = add_cell_labels(m, 0);
    ctx.require(validate(r.structure).ok(),
                [&] { return std::string("labelled structure fails validate()"); });
    ctx.require(validate_ai(r.structure, Mode::OutAi).ok(),
                [&] { return std::string("labelled structure fails A5+A6"); });
    ctx.require(validate_ai(r.structure, Mode::InAi).ok(),
                [&] { return std::string("labelled structure fails A5+A6'"); });
    ctx.require(r.structure.has_priors() && check_cpa(r.structure).ok,
                [&] { return std::string("restricted prior no longer a common prior"); });

    const auto& family = base_family(ctx, m, ctx.opts.depth);
    Evaluator left(m, ctx.factory);
    Evaluator right(r.structure, ctx.factory);
    const auto pairing = restriction_pairing(r);
    record_verdict(ctx, "cell labelling (in)",
                   m, check_equivalent(left, right, pairing, Mode::In, Mode::In, family));
    record_verdict(ctx, "cell labelling (out)",
                   m, check_equivalent(left, right, pairing, Mode::Out, Mode::Out, family));
  });
}

void suite_aumann(SweepContext& ctx) {
  GeneratorConfig gen;
  gen.ambiguity = Rational(0);
  for_each_structure(ctx, gen, [&](const Structure& m) {
    Evaluator ev(m, ctx.factory);
    const AumannReport rep = aumann_check(ev, all_players(m), ctx.opts.depth);
    ctx.result.cases_checked += rep.points_checked;
    if (!rep.applicable()) {
      ctx.record("premise failed on a generated common-interpretation cpa structure");
    } else if (!rep.findings.empty()) {
      const auto& f = rep.findings.front();
      ctx.record("common belief in differing posteriors: " + f.formula + " at " +
                 m.state_name(f.state) + ", players " + std::to_string(f.i) + "/" +
                 std::to_string(f.j) + " (" + f.value_i.str() + " vs " + f.value_j.str() + ")");
    }
  });
}

void suite_agreement_bound(SweepContext& ctx) {
  for_each_structure(ctx, GeneratorConfig{}, [&](const Structure& m) {
    Evaluator ev(m, ctx.factory);
    const auto group = all_players(m);
    for (FormulaId f : extension_probes(ev, group, Mode::In, ctx.opts.depth)) {
      for (const Rational& b : threshold_grid()) {
        for (const Rational& b_prime : threshold_grid()) {
          const AgreementReport rep = check_agreement_bound(ev, group, f, b, b_prime);
          if (!rep.applicable) continue;
          ctx.require(rep.consistent, [&] {
            return "common belief in a posterior gap: " + ctx.factory.to_string(f) +
                   " with b=" + b.str() + ", b'=" + b_prime.str() + " (epsilon " +
                   rep.epsilon.str() + ") at " + m.state_name(rep.witness_state) + ", players " +
                   std::to_string(rep.witness_i) + "/" + std::to_string(rep.witness_j);
          });
        }
      }
    }
  });
}

void suite_in_viewpoint_independence(SweepContext& ctx) {
  GeneratorConfig gen;
  gen.with_signals = true;
  for_each_structure(ctx, gen, [&](const Structure& m) {
    Evaluator ev(m, ctx.factory);
    for (FormulaId f : mixed_family(ctx, m, ctx.opts.depth)) {
      const NodeKind kind = ctx.factory.node(f).kind;
      if (kind != NodeKind::Belief && kind != NodeKind::Knows && kind != NodeKind::ProbGE &&
          kind != NodeKind::CommonBelief && kind != NodeKind::EvBelief) {
        continue;
      }
      for (Mode mode : {Mode::In, Mode::InAi}) {
        const StateSet& base = ev.extension(f, 1, mode);
        for (PlayerId v = 2; v <= m.player_count(); ++v) {
          ctx.require(ev.extension(f, v, mode) == base, [&] {
            return std::string(mode_name(mode)) + " extension of " +
                   ctx.factory.to_string(f) + " shifts between viewpoints 1 and " +
                   std::to_string(v);
          });
        }
      }
    }
  });
}

void suite_out_cell_union(SweepContext& ctx) {
  GeneratorConfig gen;
  gen.with_signals = true;
  for_each_structure(ctx, gen, [&](const Structure& m) {
    Evaluator ev(m, ctx.factory);
    for (FormulaId f : mixed_family(ctx, m, ctx.opts.depth)) {
      const FormulaNode& n = ctx.factory.node(f);
      PlayerId believer = 0;
      if (n.kind == NodeKind::Belief || n.kind == NodeKind::Knows) {
        believer = n.player;
      } else if (n.kind == NodeKind::ProbGE && n.terms.size() == 1) {
        believer = n.terms[0].player;
      }
      if (believer == 0) continue;
      for (Mode mode : {Mode::Out, Mode::OutAi}) {
        for (PlayerId v = 1; v <= m.player_count(); ++v) {
          const StateSet& ext = ev.extension(f, v, mode);
          bool cell_union = true;
          for (int c = 0; c < m.cell_count(believer) && cell_union; ++c) {
            const StateSet overlap = m.cell(believer, c) & ext;
            cell_union = overlap.empty() || overlap == m.cell(believer, c);
          }
          ctx.require(cell_union, [&] {
            return std::string(mode_name(mode)) + " extension of " + ctx.factory.to_string(f) +
                   " cuts a cell of player " + std::to_string(believer) + " (viewpoint " +
                   std::to_string(v) + ")";
          });
        }
      }
    }
  });
}

void suite_collapse(SweepContext& ctx) {
  GeneratorConfig gen;
  gen.ambiguity = Rational(0);
  gen.with_signals = true;
  for_each_structure(ctx, gen, [&](const Structure& m) {
    Evaluator ev(m, ctx.factory);
    for (FormulaId f : mixed_family(ctx, m, ctx.opts.depth)) {
      const StateSet& base = ev.extension(f, 1, Mode::In);
      for (PlayerId v = 1; v <= m.player_count(); ++v) {
        for (Mode mode : {Mode::Out, Mode::In, Mode::OutAi, Mode::InAi}) {
          ctx.require(ev.extension(f, v, mode) == base, [&] {
            return "mode " + std::string(mode_name(mode)) + ", viewpoint " + std::to_string(v) +
                   " diverges on " + ctx.factory.to_string(f);
          });
        }
      }
    }
  });
}

void suite_cb_unrolling(SweepContext& ctx) {
  for_each_structure(ctx, GeneratorConfig{}, [&](const Structure& m) {
    Evaluator ev(m, ctx.factory);

    std::vector<StateSet> events;
    std::map<StateSet, bool> seen;
    for (FormulaId f : extension_probes(ev, all_players(m), Mode::In, ctx.opts.depth, 64)) {
      for (PlayerId v = 1; v <= m.player_count(); ++v) {
        const StateSet& e = ev.extension(f, v, Mode::In);
        if (seen.emplace(e, true).second) events.push_back(e);
      }
    }

    std::vector<std::vector<PlayerId>> groups;
    groups.push_back(all_players(m));
    for (PlayerId i = 1; i <= m.player_count(); ++i) {
      for (PlayerId j = i + 1; j <= m.player_count(); ++j) groups.push_back({i, j});
    }

    const int rounds = m.state_count() + 2;
    for (const auto& group : groups) {
      for (const StateSet& e : events) {
        const StateSet cb = ev.common_belief_event(group, e, 1, Mode::In);
        StateSet unrolled = StateSet::full(m.state_count());
        StateSet level = e;
        bool inside = true;
        for (int k = 0; k < rounds; ++k) {
          level = ev.everyone_believes_event(group, level, 1, Mode::In);
          unrolled &= level;
          inside = inside && cb.is_subset_of(level);
        }
        ctx.require(inside, [&] {
          return std::string("common belief escapes an iterated everyone-believes level");
        });
        ctx.require(cb == unrolled, [&] {
          return std::string("fixpoint differs from the " + std::to_string(rounds) +
                             "-step unrolling");
        });
      }
    }
  });
}

void suite_inai_in_agreement(SweepContext& ctx) {
  GeneratorConfig gen;
  gen.with_signals = true;
  for_each_structure(ctx, gen, [&](const Structure& m) {
    Evaluator ev(m, ctx.factory);
    for (FormulaId f : mixed_family(ctx, m, ctx.opts.depth)) {
      for (PlayerId v = 1; v <= m.player_count(); ++v) {
        ctx.require(ev.extension(f, v, Mode::InAi) == ev.extension(f, v, Mode::In), [&] {
          return "label conditioning shifts " + ctx.factory.to_string(f) + " at viewpoint " +
                 std::to_string(v);
        });
      }
    }
  });
}

void suite_normalize_extension(SweepContext& ctx) {
  GeneratorConfig gen;
  gen.with_signals = true;
  for_each_structure(ctx, gen, [&](const Structure& m) {
    Evaluator ev(m, ctx.factory);
    for (FormulaId f : mixed_family(ctx, m, std::min(ctx.opts.depth, 1))) {
      const FormulaId nf = ctx.factory.normalize(f);
      for (Mode mode : {Mode::Out, Mode::In, Mode::OutAi, Mode::InAi}) {
        for (PlayerId v = 1; v <= m.player_count(); ++v) {
          ctx.require(ev.extension(nf, v, mode) == ev.extension(f, v, mode), [&] {
            return "normalize changes " + ctx.factory.to_string(f) + " under " +
                   mode_name(mode) + " at viewpoint " + std::to_string(v);
          });
        }
      }
    }
  });
}

void suite_signals_common(SweepContext& ctx) {
  GeneratorConfig gen;
  gen.ambiguity = Rational(0);
  gen.with_signals = true;
  for_each_structure(ctx, gen, [&](const Structure& m) {
    Evaluator ev(m, ctx.factory);
    const bool cpa = check_cpa(m).ok;
    for (const std::string& sigma : m.signal_names()) {
      for (int s = 0; s < m.state_count(); ++s) {
        const SignalFlags flags = classify_signal(ev, sigma, s, Mode::In);
        if (flags.common) {
          ctx.require(flags.is_public == flags.shared, [&] {
            return "'" + sigma + "' at " + m.state_name(s) + ": public=" +
                   (flags.is_public ? "yes" : "no") + " shared=" + (flags.shared ? "yes" : "no");
          });
        }
        if (flags.is_public && cpa) {
          for (PlayerId i = 1; i <= m.player_count(); ++i) {
            for (PlayerId j = i + 1; j <= m.player_count(); ++j) {
              const PosteriorEventReport rep = compare_posteriors_events(m, s, i, j);
              ctx.require(rep.equal, [&] {
                return "public '" + sigma + "' at " + m.state_name(s) +
                       " but event posteriors differ for players " + std::to_string(i) + "/" +
                       std::to_string(j) + " on {" + m.state_name(rep.witness_state) + "}";
              });
            }
          }
        }
      }
    }
  });
}

void suite_signals_outai(SweepContext& ctx) {
  GeneratorConfig gen;
  gen.with_signals = true;
  for_each_structure(ctx, gen, [&](const Structure& m) {
    Evaluator ev(m, ctx.factory);
    const bool cpa = check_cpa(m).ok;
    for (const std::string& sigma : m.signal_names()) {
      for (int s = 0; s < m.state_count(); ++s) {
        const SignalFlags flags = classify_signal(ev, sigma, s, Mode::OutAi);
        if (flags.common) {
          ctx.require(flags.is_public == flags.shared, [&] {
            return "'" + sigma + "' at " + m.state_name(s) + ": public=" +
                   (flags.is_public ? "yes" : "no") + " shared=" + (flags.shared ? "yes" : "no");
          });
        }
        if (flags.is_public && cpa) {
          for (PlayerId i = 1; i <= m.player_count(); ++i) {
            for (PlayerId j = i + 1; j <= m.player_count(); ++j) {
              const PosteriorFormulaReport rep =
                  compare_posteriors_formulas(ev, s, i, j, Mode::OutAi, ctx.opts.depth);
              ctx.require(rep.equal, [&] {
                return "public '" + sigma + "' at " + m.state_name(s) +
                       " but formula posteriors differ for players " + std::to_string(i) + "/" +
                       std::to_string(j) + " on " + rep.witness;
              });
            }
          }
        }
      }
    }
  });
}

void suite_signals_inai(SweepContext& ctx) {
  GeneratorConfig gen;
  gen.with_signals = true;
  for_each_structure(ctx, gen, [&](const Structure& m) {
    Evaluator ev(m, ctx.factory);
    const bool cpa = check_cpa(m).ok;
    for (const std::string& sigma : m.signal_names()) {
      for (int s = 0; s < m.state_count(); ++s) {
        const SignalFlags flags = classify_signal(ev, sigma, s, Mode::InAi);
        if (flags.common) {
          ctx.require(flags.is_public == flags.strongly_shared, [&] {
            return "'" + sigma + "' at " + m.state_name(s) + ": public=" +
                   (flags.is_public ? "yes" : "no") + " strongly shared=" +
                   (flags.strongly_shared ? "yes" : "no");
          });
        }
        if (flags.is_public && cpa) {
          for (PlayerId i = 1; i <= m.player_count(); ++i) {
            for (PlayerId j = i + 1; j <= m.player_count(); ++j) {
              const PosteriorEventReport rep = compare_posteriors_events(m, s, i, j);
              ctx.require(rep.equal, [&] {
                return "public '" + sigma + "' at " + m.state_name(s) +
                       " but event posteriors differ for players " + std::to_string(i) + "/" +
                       std::to_string(j) + " on {" + m.state_name(rep.witness_state) + "}";
              });
            }
          }
        }
      }
    }
  });
}

void suite_knowledge_truth(SweepContext& ctx) {
  GeneratorConfig gen;
  gen.ambiguity = Rational(0);
  for_each_structure(ctx, gen, [&](const Structure& m) {
    Evaluator ev(m, ctx.factory);
    for (FormulaId f : base_family(ctx, m, ctx.opts.depth)) {
      for (PlayerId i = 1; i <= m.player_count(); ++i) {
        const FormulaId axiom = ctx.factory.implies(ctx.factory.knows(i, f), f);
        ctx.require(valid_in(ev, axiom, Mode::In), [&] {
          return "K_" + std::to_string(i) + " truth axiom fails for " +
                 ctx.factory.to_string(f);
        });
      }
    }
  });
}

void suite_knowledge_disjunction(SweepContext& ctx) {
  for_each_structure(ctx, GeneratorConfig{}, [&](const Structure& m) {
    Evaluator ev(m, ctx.factory);
    for (FormulaId f : base_family(ctx, m, ctx.opts.depth)) {
      FormulaId disjunction = kNoFormula;
      for (PlayerId i = 1; i <= m.player_count(); ++i) {
        const FormulaId part = ctx.factory.implies(ctx.factory.knows(i, f), f);
        disjunction = disjunction == kNoFormula ? part : ctx.factory.disj(disjunction, part);
      }
      ctx.require(valid_in(ev, disjunction, Mode::In), [&] {
        return "someone-knows-truthfully disjunction fails for " + ctx.factory.to_string(f);
      });
    }
  });
}

void suite_ambiguity_monotonicity(SweepContext& ctx) {
  for_each_structure(ctx, GeneratorConfig{}, [&](const Structure& m) {
    const auto props = payload_props(m);
    if (props.empty()) return;
    const std::string& p = props.front();
    const std::vector<FormulaId> family = propositional_family(ctx.factory, {p}, 1);

    Evaluator ev(m, ctx.factory);
    std::vector<AmbiguityReport> before;
    before.reserve(family.size());
    for (FormulaId f : family) before.push_back(ambiguity_measure(ev, f));

    for (int s = 0; s < m.state_count(); ++s) {
      for (PlayerId i = 1; i <= m.player_count(); ++i) {
        for (PlayerId j = 1; j <= m.player_count(); ++j) {
          if (i == j || m.prop_true_at(i, s, p) == m.prop_true_at(j, s, p)) continue;
          StructureData data = m.to_data();
          auto& row = data.interpretations[i - 1][s];
          if (m.prop_true_at(j, s, p)) {
            row.push_back(p);
          } else {
            row.erase(std::remove(row.begin(), row.end(), p), row.end());
          }
          const Structure edited = build_structure(data, m.state_count());
          Evaluator after_ev(edited, ctx.factory);
          for (std::size_t k = 0; k < family.size(); ++k) {
            const AmbiguityReport after = ambiguity_measure(after_ev, family[k]);
            ctx.require(after.disagreement.is_subset_of(before[k].disagreement) &&
                            after.epsilon <= before[k].epsilon,
                        [&] {
                          return "aligning player " + std::to_string(i) + " with " +
                                 std::to_string(j) + " on '" + p + "' at " + m.state_name(s) +
                                 " grew the disagreement for " +
                                 ctx.factory.to_string(family[k]);
                        });
          }
        }
      }
    }
  });
}

struct Suite {
  const char* name;
  const char* description;
  void (*run)(SweepContext&);
};

constexpr Suite kSuites[] = {
    {"generator-valid", "generated structures pass validate, cpa, and label checks",
     suite_generator_valid},
    {"prior-roundtrip", "canonical priors regenerate every posterior, cell mass 1/N_i",
     suite_prior_roundtrip},
    {"projection-equivalence", "outermost projection preserves out-mode truth pointwise",
     suite_projection},
    {"copies-equivalence", "disjoint copies preserve in-mode truth across the pairing",
     suite_copies},
    {"copies-cpa-fail", "disjoint copies can never be generated by a common prior",
     suite_copies_cpa_fail},
    {"labels-restriction", "cell labelling keeps truth on the component and satisfies A5/A6",
     suite_labels_restriction},
    {"aumann", "no common belief in differing posteriors under common interpretation + cpa",
     suite_aumann},
    {"agreement-bound", "no common belief in posterior gaps wider than the ambiguity mass",
     suite_agreement_bound},
    {"in-viewpoint-independence", "inner-mode operator extensions ignore the viewpoint",
     suite_in_viewpoint_independence},
    {"out-cell-union", "outer-mode belief extensions are unions of the believer's cells",
     suite_out_cell_union},
    {"common-interpretation-collapse", "all modes and viewpoints coincide without ambiguity",
     suite_collapse},
    {"cb-unrolling", "the common-belief fixpoint matches its finite unrolling",
     suite_cb_unrolling},
    {"inai-in-agreement", "label conditioning reproduces stored posteriors on generated models",
     suite_inai_in_agreement},
    {"normalize-extension", "normalization preserves extensions in every mode",
     suite_normalize_extension},
    {"signals-common", "public iff shared, and posteriors agree, under common interpretation",
     suite_signals_common},
    {"signals-outai", "public iff shared, and formula posteriors agree, under out-ai",
     suite_signals_outai},
    {"signals-inai", "public iff strongly shared, and event posteriors agree, under in-ai",
     suite_signals_inai},
    {"knowledge-truth", "K_i f -> f is valid under common interpretation",
     suite_knowledge_truth},
    {"knowledge-disjunction", "someone's knowledge is truthful at every point",
     suite_knowledge_disjunction},
    {"ambiguity-monotonicity", "aligning one reading never grows a disagreement event",
     suite_ambiguity_monotonicity},
};

}  // namespace

const std::vector<std::string>& sweep_suite_names() {
  static const std::vector<std::string> kNames = [] {
    std::vector<std::string> names;
    for (const Suite& s : kSuites) names.emplace_back(s.name);
    return names;
  }();
  return kNames;
}

const std::string& sweep_suite_description(const std::string& suite) {
  static std::map<std::string, std::string> kDescriptions = [] {
    std::map<std::string, std::string> out;
    for (const Suite& s : kSuites) out[s.name] = s.description;
    return out;
  }();
  const auto it = kDescriptions.find(suite);
  if (it == kDescriptions.end()) {
    throw std::invalid_argument("unknown sweep suite '" + suite + "'");
  }
  return it->second;
}

SweepResult run_sweep(const std::string& suite, const SweepOptions& opts) {
  for (const Suite& s : kSuites) {
    if (suite == s.name) {
      SweepResult result;
      result.suite = suite;
      SweepContext ctx{opts, result};
      s.run(ctx);
      return result;
    }
  }
  throw std::invalid_argument("unknown sweep suite '" + suite + "'");
}

}  // namespace ambilogic
