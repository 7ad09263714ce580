#include "ambilogic/transforms.hpp"

#include "ambilogic/agreement.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>
#include <unordered_set>
#include <utility>

namespace ambilogic {

namespace {

std::vector<std::string> interpretation_row(const Structure& m, PlayerId reader, int state) {
  std::vector<std::string> row;
  for (const auto& prop : m.vocabulary()) {
    if (m.prop_true_at(reader, state, prop)) row.push_back(prop);
  }
  return row;
}

bool valid_in(Evaluator& ev, FormulaId f, Mode mode) {
  const Structure& m = ev.structure();
  const StateSet everything = StateSet::full(m.state_count());
  for (PlayerId v = 1; v <= m.player_count(); ++v) {
    if (ev.extension(f, v, mode) != everything) return false;
  }
  return true;
}

}  // namespace

Structure project_outermost(const Structure& m, PlayerId i) {
  StructureData data = m.to_data();
  for (int j = 0; j < m.player_count(); ++j) {
    for (int s = 0; s < m.state_count(); ++s) {
      data.interpretations[j][s] = interpretation_row(m, i, s);
    }
  }
  data.cell_labels.reset();
  data.signals.reset();
  return build_structure(data, m.state_count());
}

CopiesResult disjoint_copies(const Structure& m) {
  const int n = m.player_count();
  const int ns = m.state_count();

  std::string sep = "_";
  std::vector<std::string> names;
  for (;;) {
    names.clear();
    std::unordered_set<std::string> seen;
    bool clash = false;
    for (int s = 0; s < ns && !clash; ++s) {
      for (int j = 1; j <= n && !clash; ++j) {
        names.push_back(m.state_name(s) + sep + std::to_string(j));
        clash = !seen.insert(names.back()).second;
      }
    }
    if (!clash) break;
    sep += "_";
  }
  const auto copy_name = [&](int s, PlayerId j) -> const std::string& {
    return names[s * n + (j - 1)];
  };

  StructureData data;
  data.states = names;
  data.players = n;

  for (PlayerId i = 1; i <= n; ++i) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::map<std::string, Rational>> posts;
    for (int c = 0; c < m.cell_count(i); ++c) {
      std::vector<std::string> members;
      for (int s : m.cell(i, c).members()) {
        for (PlayerId j = 1; j <= n; ++j) members.push_back(copy_name(s, j));
      }
      std::map<std::string, Rational> post;
      for (const auto& [s, mass] : m.posterior_entries(i, c)) {
        post[copy_name(s, i)] = mass;
      }
      cells.push_back(std::move(members));
      posts.push_back(std::move(post));
    }
    data.partitions.push_back(std::move(cells));
    data.posteriors.push_back(std::move(posts));
  }

  std::vector<std::vector<std::string>> rows(names.size());
  for (int s = 0; s < ns; ++s) {
    for (PlayerId j = 1; j <= n; ++j) rows[s * n + (j - 1)] = interpretation_row(m, j, s);
  }
  data.interpretations.assign(n, rows);

  CopiesResult result{build_structure(data, static_cast<int>(names.size())), {}};
  result.copy_index.assign(ns, std::vector<int>(n));
  for (int s = 0; s < ns; ++s) {
    for (int j = 0; j < n; ++j) result.copy_index[s][j] = s * n + j;
  }
  return result;
}

LabelsResult add_cell_labels(const Structure& m, int state) {
  std::vector<PlayerId> everyone;
  for (PlayerId i = 1; i <= m.player_count(); ++i) everyone.push_back(i);
  const StateSet region = reachable(m, everyone, state);

  LabelsResult result;
  result.kept_states = region.members();

  StructureData data;
  for (int s : result.kept_states) data.states.push_back(m.state_name(s));
  data.players = m.player_count();

  std::unordered_set<std::string> used(m.vocabulary().begin(), m.vocabulary().end());
  std::vector<std::vector<std::string>> labels(m.player_count());
  std::vector<std::vector<StateSet>> kept_cells(m.player_count());

  for (PlayerId i = 1; i <= m.player_count(); ++i) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::map<std::string, Rational>> posts;
    for (int c = 0; c < m.cell_count(i); ++c) {
      if (!m.cell(i, c).intersects(region)) continue;
      const StateSet kept = m.cell(i, c) & region;

      std::vector<std::string> members;
      for (int s : kept.members()) members.push_back(m.state_name(s));
      std::map<std::string, Rational> post;
      for (const auto& [s, mass] : m.posterior_entries(i, c)) {
        if (region.test(s)) post[m.state_name(s)] = mass;
      }

      const std::string base =
          "cell_" + std::to_string(i) + "_" + std::to_string(cells.size() + 1);
      std::string name = base;
      for (int suffix = 2; used.count(name); ++suffix) {
        name = base + "_" + std::to_string(suffix);
      }
      used.insert(name);
      result.fresh_props.push_back(name);
      labels[i - 1].push_back(name);
      kept_cells[i - 1].push_back(kept);

      cells.push_back(std::move(members));
      posts.push_back(std::move(post));
    }
    data.partitions.push_back(std::move(cells));
    data.posteriors.push_back(std::move(posts));
  }

  const int kept_n = static_cast<int>(result.kept_states.size());
  for (PlayerId j = 1; j <= m.player_count(); ++j) {
    std::vector<std::vector<std::string>> rows(kept_n);
    for (int k = 0; k < kept_n; ++k) rows[k] = interpretation_row(m, j, result.kept_states[k]);
    std::size_t prop_idx = 0;
    for (PlayerId i = 1; i <= m.player_count(); ++i) {
      for (const StateSet& cell : kept_cells[i - 1]) {
        const std::string& prop = result.fresh_props[prop_idx++];
        for (int k = 0; k < kept_n; ++k) {
          if (cell.test(result.kept_states[k])) rows[k].push_back(prop);
        }
      }
    }
    data.interpretations.push_back(std::move(rows));
  }
  data.cell_labels = std::move(labels);

  if (m.has_priors()) {
    bool positive = true;
    std::vector<Rational> masses;
    for (PlayerId i = 1; i <= m.player_count(); ++i) {
      masses.push_back(m.prior_measure(i, region));
      positive = positive && !masses.back().is_zero();
    }
    if (positive) {
      std::vector<std::map<std::string, Rational>> priors;
      for (PlayerId i = 1; i <= m.player_count(); ++i) {
        std::map<std::string, Rational> nu;
        for (int s : result.kept_states) {
          const Rational mass = m.prior(i)[s] / masses[i - 1];
          if (!mass.is_zero()) nu[m.state_name(s)] = mass;
        }
        priors.push_back(std::move(nu));
      }
      data.priors = std::move(priors);
    }
  }

  if (m.has_signals()) {
    std::map<std::string, std::vector<std::optional<std::string>>> sigs;
    for (int s : result.kept_states) {
      std::vector<std::optional<std::string>> per_player;
      for (PlayerId i = 1; i <= m.player_count(); ++i) per_player.push_back(m.signal(i, s));
      sigs[m.state_name(s)] = std::move(per_player);
    }
    data.signals = std::move(sigs);
  }

  result.structure = build_structure(data, std::max(kept_n, 1));
  return result;
}

EquivalenceVerdict check_equivalent(Evaluator& left, Evaluator& right,
                                    const std::vector<PointPair>& pairing, Mode left_mode,
                                    Mode right_mode, const std::vector<FormulaId>& family) {
  assert(&left.factory() == &right.factory());
  EquivalenceVerdict verdict;
  if (pairing.empty()) {
    verdict.by_validity = true;
    for (FormulaId f : family) {
      ++verdict.comparisons;
      if (valid_in(left, f, left_mode) != valid_in(right, f, right_mode)) {
        verdict.equivalent = false;
        verdict.witness_formula = left.factory().to_string(f);
        return verdict;
      }
    }
    return verdict;
  }
  for (FormulaId f : family) {
    for (const PointPair& pair : pairing) {
      ++verdict.comparisons;
      if (left.eval(f, pair.left.state, pair.left.viewpoint, left_mode) !=
          right.eval(f, pair.right.state, pair.right.viewpoint, right_mode)) {
        verdict.equivalent = false;
        verdict.witness_formula = left.factory().to_string(f);
        verdict.witness = pair;
        return verdict;
      }
    }
  }
  return verdict;
}

std::vector<PointPair> projection_pairing(const Structure& m, PlayerId i) {
  std::vector<PointPair> out;
  for (int s = 0; s < m.state_count(); ++s) out.push_back({{s, i}, {s, i}});
  return out;
}

std::vector<PointPair> copies_pairing(const CopiesResult& copies) {
  std::vector<PointPair> out;
  for (int s = 0; s < static_cast<int>(copies.copy_index.size()); ++s) {
    const auto& per_player = copies.copy_index[s];
    for (int j = 0; j < static_cast<int>(per_player.size()); ++j) {
      out.push_back({{s, j + 1}, {per_player[j], 1}});
    }
  }
  return out;
}

std::vector<PointPair> restriction_pairing(const LabelsResult& restricted) {
  std::vector<PointPair> out;
  for (int k = 0; k < static_cast<int>(restricted.kept_states.size()); ++k) {
    for (PlayerId v = 1; v <= restricted.structure.player_count(); ++v) {
      out.push_back({{restricted.kept_states[k], v}, {k, v}});
    }
  }
  return out;
}

// ---- bounded candidate search ------------------------------------------

namespace {

void collect_players(const FormulaFactory& ff, FormulaId f, std::set<PlayerId>& out,
                     std::unordered_set<FormulaId>& seen) {
  if (!seen.insert(f).second) return;
  const FormulaNode& n = ff.node(f);
  if (n.player != 0) out.insert(n.player);
  for (PlayerId g : n.group) out.insert(g);
  for (const ProbTerm& t : n.terms) {
    out.insert(t.player);
    collect_players(ff, t.arg, out, seen);
  }
  if (n.child0 != kNoFormula) collect_players(ff, n.child0, out, seen);
  if (n.child1 != kNoFormula) collect_players(ff, n.child1, out, seen);
}

std::vector<PlayerId> players_of(const FormulaFactory& ff, FormulaId f) {
  std::set<PlayerId> set;
  std::unordered_set<FormulaId> seen;
  collect_players(ff, f, set, seen);
  return {set.begin(), set.end()};
}

void check_belief_fragment(const FormulaFactory& ff, FormulaId f,
                           std::unordered_set<FormulaId>& seen) {
  if (!seen.insert(f).second) return;
  const FormulaNode& n = ff.node(f);
  if (n.kind == NodeKind::ProbGE) {
    const bool prob_one = n.terms.size() == 1 && n.terms[0].coeff == Rational(1) &&
                          n.bound == Rational(1);
    const bool trivial_cap = n.terms.size() == 1 && n.terms[0].coeff == Rational(-1) &&
                             n.bound == Rational(-1);
    if (!prob_one && !trivial_cap) {
      throw EvalError("probe leaves the belief fragment: " + ff.to_string(f));
    }
  }
  for (const ProbTerm& t : n.terms) check_belief_fragment(ff, t.arg, seen);
  if (n.child0 != kNoFormula) check_belief_fragment(ff, n.child0, seen);
  if (n.child1 != kNoFormula) check_belief_fragment(ff, n.child1, seen);
}

void enumerate_rgs(int pos, int max_label, std::vector<int>& assignment,
                   std::vector<std::vector<std::vector<int>>>& out) {
  const int n = static_cast<int>(assignment.size());
  if (pos == n) {
    std::vector<std::vector<int>> cells(max_label + 1);
    for (int i = 0; i < n; ++i) cells[assignment[i]].push_back(i);
    out.push_back(std::move(cells));
    return;
  }
  for (int label = 0; label <= max_label + 1; ++label) {
    assignment[pos] = label;
    enumerate_rgs(pos + 1, std::max(max_label, label), assignment, out);
  }
}

std::vector<std::vector<std::vector<int>>> set_partitions(int n) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<int> assignment(n, 0);
  if (n == 0) return out;
  enumerate_rgs(1, 0, assignment, out);
  return out;
}

void enumerate_compositions(int remaining, int slots, std::vector<long long>& parts,
                            long long d, std::set<std::vector<Rational>>& grid) {
  if (slots == 1) {
    if (remaining < 1) return;
    parts.push_back(remaining);
    std::vector<Rational> nu;
    for (long long a : parts) nu.emplace_back(a, d);
    grid.insert(std::move(nu));
    parts.pop_back();
    return;
  }
  for (int a = 1; a + (slots - 1) <= remaining; ++a) {
    parts.push_back(a);
    enumerate_compositions(remaining - a, slots - 1, parts, d, grid);
    parts.pop_back();
  }
}

std::vector<std::vector<Rational>> prior_grid(int states, int max_denominator) {
  std::set<std::vector<Rational>> grid;
  for (int d = states; d <= max_denominator; ++d) {
    std::vector<long long> parts;
    enumerate_compositions(d, states, parts, d, grid);
  }
  return {grid.begin(), grid.end()};
}

struct SearchContext {
  Evaluator& target;
  std::vector<FormulaId> probes;
  std::vector<bool> target_valid;
  std::vector<std::vector<PlayerId>> probe_players;
  std::vector<std::string> props;
  int players = 0;
};

SearchContext make_context(Evaluator& target, const std::vector<FormulaId>& probes) {
  SearchContext ctx{target, probes, {}, {}, {}, target.structure().player_count()};
  FormulaFactory& ff = target.factory();
  std::unordered_set<std::string> seen_props;
  for (FormulaId p : probes) {
    ctx.target_valid.push_back(valid_in(target, p, Mode::In));
    ctx.probe_players.push_back(players_of(ff, p));
    for (PlayerId g : ctx.probe_players.back()) {
      if (g > ctx.players) {
        throw EvalError("probe mentions player " + std::to_string(g) +
                        " beyond the target's player count");
      }
    }
    for (const auto& prop : ff.props_of(p)) {
      if (seen_props.insert(prop).second) ctx.props.push_back(prop);
    }
  }
  return ctx;
}

// Players assigned greedily so that probes become fully testable as early
// as possible; ties go to the smallest index.
std::vector<PlayerId> stage_order(const SearchContext& ctx) {
  std::vector<PlayerId> order;
  std::vector<bool> assigned(ctx.players + 1, false);
  std::vector<bool> unlocked(ctx.probes.size(), false);
  for (int round = 0; round < ctx.players; ++round) {
    PlayerId best = 0;
    int best_gain = -1;
    for (PlayerId p = 1; p <= ctx.players; ++p) {
      if (assigned[p]) continue;
      int gain = 0;
      for (std::size_t q = 0; q < ctx.probes.size(); ++q) {
        if (unlocked[q]) continue;
        bool covered = true;
        for (PlayerId r : ctx.probe_players[q]) {
          if (r != p && !assigned[r]) {
            covered = false;
            break;
          }
        }
        if (covered) ++gain;
      }
      if (gain > best_gain) {
        best_gain = gain;
        best = p;
      }
    }
    assigned[best] = true;
    order.push_back(best);
    for (std::size_t q = 0; q < ctx.probes.size(); ++q) {
      if (unlocked[q]) continue;
      bool covered = true;
      for (PlayerId r : ctx.probe_players[q]) covered = covered && assigned[r];
      unlocked[q] = covered;
    }
  }
  return order;
}

using Assignment = std::vector<std::pair<int, std::uint64_t>>;  // (partition, prop mask)

Structure materialize(const SearchContext& ctx, const std::vector<std::string>& names,
                      const std::vector<std::vector<std::vector<int>>>& partitions,
                      const std::vector<Rational>& nu, const std::vector<PlayerId>& order,
                      const Assignment& assigned) {
  const int s = static_cast<int>(names.size());
  StructureData data;
  data.states = names;
  data.players = ctx.players;
  data.priors = std::vector<std::map<std::string, Rational>>();

  std::map<std::string, Rational> prior_map;
  for (int st = 0; st < s; ++st) prior_map[names[st]] = nu[st];

  std::vector<std::vector<int>> whole = {{}};
  for (int st = 0; st < s; ++st) whole[0].push_back(st);

  for (PlayerId p = 1; p <= ctx.players; ++p) {
    const std::vector<std::vector<int>>* cells = &whole;
    std::uint64_t mask = 0;
    for (std::size_t t = 0; t < assigned.size(); ++t) {
      if (order[t] == p) {
        cells = &partitions[assigned[t].first];
        mask = assigned[t].second;
        break;
      }
    }

    std::vector<std::vector<std::string>> named_cells;
    std::vector<std::map<std::string, Rational>> posts;
    for (const auto& cell : *cells) {
      Rational mass(0);
      for (int st : cell) mass += nu[st];
      std::vector<std::string> members;
      std::map<std::string, Rational> post;
      for (int st : cell) {
        members.push_back(names[st]);
        post[names[st]] = nu[st] / mass;
      }
      named_cells.push_back(std::move(members));
      posts.push_back(std::move(post));
    }
    data.partitions.push_back(std::move(named_cells));
    data.posteriors.push_back(std::move(posts));

    std::vector<std::vector<std::string>> rows(s);
    for (std::size_t k = 0; k < ctx.props.size(); ++k) {
      for (int st = 0; st < s; ++st) {
        if ((mask >> (k * s + st)) & 1) rows[st].push_back(ctx.props[k]);
      }
    }
    data.interpretations.push_back(std::move(rows));
    data.priors->push_back(prior_map);
  }
  return build_structure(data, s);
}

// Enumerates the candidate class; calls on_match for every full candidate
// whose probe validity matches the target's, until on_match returns true.
void run_bounded_search(SearchContext& ctx, const BoundedCpaSearch& bounds, bool uniform_only,
                        long long* partial_tests, long long* full_candidates,
                        const std::function<bool(Evaluator&)>& on_match) {
  const std::vector<PlayerId> order = stage_order(ctx);
  FormulaFactory& ff = ctx.target.factory();

  for (int s = 1; s <= bounds.max_states; ++s) {
    if (s * ctx.props.size() >= 63) {
      throw EvalError("bounded search grid too large: " + std::to_string(s) + " states x " +
                      std::to_string(ctx.props.size()) + " propositions");
    }
    std::vector<std::string> names;
    for (int st = 0; st < s; ++st) names.push_back("w" + std::to_string(st + 1));
    const auto partitions = set_partitions(s);
    const std::uint64_t mask_end = std::uint64_t{1} << (s * ctx.props.size());

    std::vector<std::vector<Rational>> priors;
    if (uniform_only) {
      priors.push_back(std::vector<Rational>(s, Rational(1, s)));
    } else {
      priors = prior_grid(s, bounds.max_denominator);
    }

    for (const auto& nu : priors) {
      std::vector<Assignment> survivors = {{}};
      for (std::size_t stage = 0; stage < order.size() && !survivors.empty(); ++stage) {
        const bool final_stage = stage + 1 == order.size();

        std::vector<std::size_t> testable;
        for (std::size_t q = 0; q < ctx.probes.size(); ++q) {
          bool covered = true;
          for (PlayerId r : ctx.probe_players[q]) {
            covered = covered && std::find(order.begin(), order.begin() + stage + 1, r) !=
                                     order.begin() + stage + 1;
          }
          if (covered) testable.push_back(q);
        }

        std::vector<Assignment> next;
        for (const Assignment& base : survivors) {
          for (int part = 0; part < static_cast<int>(partitions.size()); ++part) {
            for (std::uint64_t mask = 0; mask < mask_end; ++mask) {
              Assignment cand = base;
              cand.emplace_back(part, mask);
              Structure cs = materialize(ctx, names, partitions, nu, order, cand);
              Evaluator ev(cs, ff);

              if (final_stage) {
                ++*full_candidates;
                bool match = true;
                for (std::size_t q = 0; q < ctx.probes.size() && match; ++q) {
                  match = valid_in(ev, ctx.probes[q], Mode::In) == ctx.target_valid[q];
                }
                if (match && on_match(ev)) return;
                continue;
              }

              ++*partial_tests;
              bool dead = false;
              for (std::size_t q : testable) {
                if (!ctx.target_valid[q]) continue;
                for (std::size_t a = 0; a <= stage && !dead; ++a) {
                  dead = ev.extension(ctx.probes[q], order[a], Mode::In) !=
                         StateSet::full(s);
                }
                if (dead) break;
              }
              if (!dead) next.push_back(std::move(cand));
            }
          }
        }
        survivors = std::move(next);
      }
    }
  }
}

}  // namespace

CpaSearchReport search_equivalent_cpa(Evaluator& target, const std::vector<FormulaId>& probes,
                                      const BoundedCpaSearch& bounds) {
  SearchContext ctx = make_context(target, probes);
  CpaSearchReport report;
  run_bounded_search(ctx, bounds, false, &report.partial_tests, &report.full_candidates,
                     [&](Evaluator& ev) {
                       report.found = true;
                       report.witness = ev.structure().to_data();
                       return true;
                     });
  return report;
}

ForcedCommonReport search_forced_common_interpretation(Evaluator& target,
                                                       const std::vector<FormulaId>& probes,
                                                       const BoundedCpaSearch& bounds) {
  std::unordered_set<FormulaId> seen;
  for (FormulaId p : probes) check_belief_fragment(target.factory(), p, seen);

  SearchContext ctx = make_context(target, probes);
  ForcedCommonReport report;
  long long partial = 0, full = 0;
  run_bounded_search(ctx, bounds, true, &partial, &full, [&](Evaluator& ev) {
    ++report.matches;
    if (!common_interpretation(ev.structure())) {
      report.all_common_interpretation = false;
      report.counterexample = ev.structure().to_data();
      return true;
    }
    return false;
  });
  return report;
}

}  // namespace ambilogic
