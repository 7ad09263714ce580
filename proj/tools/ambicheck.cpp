// ===== ambicheck.cpp — model checking from the command line =====
//
//   ambicheck validate <model> [--ai-mode out-ai|in-ai]
//   ambicheck eval     <model> <formula> [--mode M] [--state S] [--viewpoint V]
//   ambicheck analyze  <model> cpa|priors|ambiguity|agreement|signals|posteriors|aumann ...
//   ambicheck transform <model> project|copies|labels [--player N] [--state S]
//                       [--out PATH] [--verify] [--depth K]
//   ambicheck sweep    --suite NAME|all --seeds A..B [--depth K] | --list
//   ambicheck gen      --seed N [knobs] [--out PATH]
//
// Exit codes are a stable contract: 0 when the command ran and its verdict
// is affirmative (formula true at every requested point, validation passed,
// analysis found no gap, sweep clean); 1 when the command ran but the
// verdict is negative; 2 on usage, I/O, or semantic errors (unparseable
// files or formulas, unknown states or propositions, undefined
// conditioning). --json swaps the human report for one JSON document on
// stdout with the same content.

#include "ambilogic/agreement.hpp"
#include "ambilogic/family.hpp"
#include "ambilogic/generator.hpp"
#include "ambilogic/model_io.hpp"
#include "ambilogic/parser.hpp"
#include "ambilogic/semantics.hpp"
#include "ambilogic/structure.hpp"
#include "ambilogic/sweeps.hpp"
#include "ambilogic/transforms.hpp"
#include "ambilogic/validate.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace ambilogic;
using nlohmann::json;

namespace {

// Reported on stderr with exit code 2, like every other malformed input.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* yesno(bool b) { return b ? "yes" : "no"; }

Mode mode_arg(const std::string& name) {
  std::optional<Mode> m = mode_from_name(name);
  if (!m) throw UsageError("unknown mode '" + name + "' (expected out, in, out-ai, or in-ai)");
  return *m;
}

int state_arg(const Structure& m, const std::string& name) {
  int s = m.state_index(name);
  if (s < 0) throw UsageError("unknown state '" + name + "'");
  return s;
}

PlayerId player_arg(const Structure& m, PlayerId i, const char* what) {
  if (i < 1 || i > m.player_count())
    throw UsageError(std::string(what) + " must name a player between 1 and " +
                     std::to_string(m.player_count()));
  return i;
}

// "1,3" -> {1,3}; empty -> every player.
std::vector<PlayerId> group_arg(const Structure& m, const std::string& text) {
  std::vector<PlayerId> group;
  if (text.empty()) {
    for (PlayerId i = 1; i <= m.player_count(); ++i) group.push_back(i);
    return group;
  }
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      group.push_back(player_arg(m, std::stoi(tok), "--group"));
    } catch (const std::logic_error&) {
      throw UsageError("--group expects a comma-separated list of players, got '" + text + "'");
    }
  }
  std::sort(group.begin(), group.end());
  group.erase(std::unique(group.begin(), group.end()), group.end());
  if (group.empty()) throw UsageError("--group must not be empty");
  return group;
}

// Deepest EB^m iteration anywhere in f; unrolling is exponential in m.
int max_eb_depth(const FormulaFactory& fa, FormulaId f) {
  int deepest = 0;
  std::vector<FormulaId> stack{f};
  std::vector<bool> seen(fa.size(), false);
  while (!stack.empty()) {
    FormulaId id = stack.back();
    stack.pop_back();
    if (seen[id]) continue;
    seen[id] = true;
    const FormulaNode& n = fa.node(id);
    if (n.kind == NodeKind::EvBelief) deepest = std::max(deepest, n.count);
    for (const ProbTerm& t : n.terms) stack.push_back(t.arg);
    if (n.child0 != kNoFormula) stack.push_back(n.child0);
    if (n.child1 != kNoFormula) stack.push_back(n.child1);
  }
  return deepest;
}

// The evaluator reads an unknown proposition as false everywhere, which is
// the right semantics for generated vocabularies but silently masks typos
// on the command line; players beyond the structure are a hard error there
// too, and EB unrolling is capped before it can go exponential.
void check_formula_fits(const Structure& m, const FormulaFactory& fa, FormulaId f) {
  for (const std::string& p : fa.props_of(f)) {
    if (!m.has_prop(p))
      throw UsageError("formula mentions '" + p + "', which no player interprets");
  }
  if (fa.max_player(f) > m.player_count())
    throw UsageError("formula mentions player " + std::to_string(fa.max_player(f)) +
                     ", but the model has " + std::to_string(m.player_count()) + " players");
  if (int mdepth = max_eb_depth(fa, f); mdepth > 8)
    throw UsageError("EB^" + std::to_string(mdepth) + " exceeds the iteration cap of 8");
}

std::vector<std::string> state_names(const Structure& m, const StateSet& e) {
  std::vector<std::string> out;
  for (int s = 0; s < m.state_count(); ++s) {
    if (e.test(s)) out.push_back(m.state_name(s));
  }
  return out;
}

std::string joined(const std::vector<std::string>& parts, const char* sep = ", ") {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) out += sep;
    out += parts[k];
  }
  return out;
}

// "a..b" or a single "n" (meaning n..n); both ends inclusive.
std::pair<long long, long long> range_arg(const std::string& text, const char* what) {
  auto bad = [&] {
    throw UsageError(std::string(what) + " expects N or A..B, got '" + text + "'");
  };
  try {
    std::size_t dots = text.find("..");
    if (dots == std::string::npos) {
      long long n = std::stoll(text);
      return {n, n};
    }
    long long a = std::stoll(text.substr(0, dots));
    long long b = std::stoll(text.substr(dots + 2));
    if (b < a) bad();
    return {a, b};
  } catch (const std::logic_error&) {
    bad();
  }
  return {0, 0};  // unreachable
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

// ---------------------------------------------------------------- validate

int cmd_validate(const std::string& path, const std::string& ai_mode, bool as_json) {
  Structure m = load_structure(path);
  std::vector<CheckResult> checks = validate(m).checks;
  if (!ai_mode.empty()) {
    Mode mode = mode_arg(ai_mode);
    if (!mode_is_conditioning(mode)) throw UsageError("--ai-mode expects out-ai or in-ai");
    ValidationReport ai = validate_ai(m, mode);
    checks.insert(checks.end(), ai.checks.begin(), ai.checks.end());
  }
  bool ok = std::all_of(checks.begin(), checks.end(),
                        [](const CheckResult& c) { return c.status != CheckStatus::Fail; });
  if (as_json) {
    json out{{"ok", ok}, {"checks", json::array()}};
    for (const CheckResult& c : checks) {
      out["checks"].push_back(
          {{"id", c.id}, {"status", check_status_name(c.status)}, {"detail", c.detail}});
    }
    emit(out);
  } else {
    for (const CheckResult& c : checks) {
      std::cout << c.id << ": " << check_status_name(c.status);
      if (!c.detail.empty()) std::cout << " — " << c.detail;
      std::cout << "\n";
    }
    std::cout << "result: " << (ok ? "pass" : "fail") << "\n";
  }
  return ok ? 0 : 1;
}

// -------------------------------------------------------------------- eval

int cmd_eval(const std::string& path, const std::string& formula, const std::string& mode_text,
             const std::string& state, PlayerId viewpoint, bool as_json) {
  Structure m = load_structure(path);
  FormulaFactory fa;
  FormulaId f = parse_formula(formula, fa);
  check_formula_fits(m, fa, f);
  Mode mode = mode_arg(mode_text);

  std::vector<int> states;
  if (state.empty()) {
    for (int s = 0; s < m.state_count(); ++s) states.push_back(s);
  } else {
    states.push_back(state_arg(m, state));
  }
  std::vector<PlayerId> viewpoints;
  if (viewpoint == 0) {
    for (PlayerId v = 1; v <= m.player_count(); ++v) viewpoints.push_back(v);
  } else {
    viewpoints.push_back(player_arg(m, viewpoint, "--viewpoint"));
  }

  Evaluator ev(m, fa);
  bool all_true = true;
  std::vector<std::vector<bool>> table(states.size());
  for (std::size_t r = 0; r < states.size(); ++r) {
    for (PlayerId v : viewpoints) {
      bool value = ev.eval(f, states[r], v, mode);
      table[r].push_back(value);
      all_true = all_true && value;
    }
  }

  if (as_json) {
    json out{{"formula", fa.to_string(f)},
             {"mode", mode_name(mode)},
             {"all_true", all_true},
             {"points", json::array()}};
    for (std::size_t r = 0; r < states.size(); ++r) {
      for (std::size_t c = 0; c < viewpoints.size(); ++c) {
        out["points"].push_back({{"state", m.state_name(states[r])},
                                 {"viewpoint", viewpoints[c]},
                                 {"true", static_cast<bool>(table[r][c])}});
      }
    }
    emit(out);
  } else {
    std::cout << "formula: " << fa.to_string(f) << "\n";
    std::cout << "mode: " << mode_name(mode) << "\n";
    std::size_t width = 5;
    for (int s : states) width = std::max(width, m.state_name(s).size());
    std::cout << std::left << std::setw(static_cast<int>(width + 2)) << "state";
    for (PlayerId v : viewpoints) std::cout << std::setw(7) << ("v" + std::to_string(v));
    std::cout << "\n";
    for (std::size_t r = 0; r < states.size(); ++r) {
      std::cout << std::setw(static_cast<int>(width + 2)) << m.state_name(states[r]);
      for (bool value : table[r]) std::cout << std::setw(7) << (value ? "true" : "false");
      std::cout << "\n";
    }
    std::cout << (all_true ? "true at every requested point"
                           : "false at some requested point")
              << "\n";
  }
  return all_true ? 0 : 1;
}

// ----------------------------------------------------------------- analyze

int cmd_analyze_cpa(const Structure& m, bool as_json) {
  CpaReport r = check_cpa(m);
  std::string reason;
  if (!r.has_priors) {
    reason = "no stored priors";
  } else if (!r.priors_common) {
    reason = "priors differ: players " + std::to_string(r.differ_i) + " and " +
             std::to_string(r.differ_j) + " at state '" + m.state_name(r.differ_state) + "'";
  } else if (!r.prior_generated.ok) {
    const PriorGenMismatch& w = r.prior_generated.mismatches.front();
    reason = "posteriors not generated by the prior: player " + std::to_string(w.player) +
             ", state '" + m.state_name(w.state) + "': conditioning gives " + w.expected.str() +
             ", stored " + w.actual.str();
  } else if (!r.reachable_positive) {
    reason = "reachability class of state '" + m.state_name(r.null_reachable_state) +
             "' has prior mass 0";
  }
  if (as_json) {
    emit(json{{"ok", r.ok},
              {"has_priors", r.has_priors},
              {"priors_common", r.priors_common},
              {"prior_generated", r.prior_generated.ok},
              {"reachable_positive", r.reachable_positive},
              {"reason", reason}});
  } else {
    if (r.ok) {
      std::cout << "cpa: pass\n";
    } else {
      std::cout << "cpa: fail — " << reason << "\n";
    }
  }
  return r.ok ? 0 : 1;
}

int cmd_analyze_priors(const Structure& m, bool as_json) {
  if (m.has_priors()) {
    PriorGenReport r = check_prior_generated(m);
    if (as_json) {
      json out{{"stored", true}, {"generate_posteriors", r.ok}, {"mismatches", json::array()},
               {"unconstrained", json::array()}};
      for (const PriorGenMismatch& w : r.mismatches) {
        out["mismatches"].push_back({{"player", w.player},
                                     {"state", m.state_name(w.state)},
                                     {"conditioned", w.expected.str()},
                                     {"stored", w.actual.str()}});
      }
      for (auto [i, c] : r.unconstrained)
        out["unconstrained"].push_back({{"player", i}, {"cell", c}});
      emit(out);
    } else {
      std::cout << "stored priors generate the posteriors: " << yesno(r.ok) << "\n";
      for (const PriorGenMismatch& w : r.mismatches) {
        std::cout << "  player " << w.player << ", state '" << m.state_name(w.state)
                  << "': conditioning gives " << w.expected << ", stored " << w.actual << "\n";
      }
      if (r.unconstrained.empty()) {
        std::cout << "unconstrained cells: none\n";
      } else {
        for (auto [i, c] : r.unconstrained)
          std::cout << "unconstrained: player " << i << ", cell " << c
                    << " (prior mass 0 there)\n";
      }
    }
    return r.ok ? 0 : 1;
  }

  // No stored priors: report the canonical generating ones instead.
  std::vector<std::vector<Rational>> pri = generate_priors(m);
  if (as_json) {
    json out{{"stored", false}, {"generated", json::array()}};
    for (PlayerId i = 1; i <= m.player_count(); ++i) {
      json row = json::object();
      for (int s = 0; s < m.state_count(); ++s) row[m.state_name(s)] = pri[i - 1][s].str();
      out["generated"].push_back(row);
    }
    emit(out);
  } else {
    std::cout << "no stored priors; canonical generating priors (cells weighted equally):\n";
    for (PlayerId i = 1; i <= m.player_count(); ++i) {
      std::cout << "player " << i << ":";
      for (int s = 0; s < m.state_count(); ++s)
        std::cout << " " << m.state_name(s) << "=" << pri[i - 1][s];
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_analyze_ambiguity(const Structure& m, const std::string& formula, bool as_json) {
  FormulaFactory fa;
  FormulaId f = parse_formula(formula, fa);
  check_formula_fits(m, fa, f);
  Evaluator ev(m, fa);
  AmbiguityReport r = ambiguity_measure(ev, f);
  std::vector<std::string> where = state_names(m, r.disagreement);
  if (as_json) {
    emit(json{{"formula", fa.to_string(f)},
              {"disagreement", where},
              {"epsilon", r.epsilon.str()}});
  } else {
    std::cout << "formula: " << fa.to_string(f) << "\n";
    std::cout << "disagreement states: " << (where.empty() ? "none" : joined(where)) << "\n";
    std::cout << "epsilon: " << r.epsilon << "\n";
  }
  return 0;
}

int cmd_analyze_agreement(const Structure& m, const std::string& formula, const std::string& b,
                          const std::string& b_prime, const std::string& group_text,
                          bool as_json) {
  FormulaFactory fa;
  FormulaId f = parse_formula(formula, fa);
  check_formula_fits(m, fa, f);
  Rational lo = parse_rational_text(b);
  Rational hi = parse_rational_text(b_prime);
  Evaluator ev(m, fa);
  std::vector<PlayerId> group = group_arg(m, group_text);
  AgreementReport r = check_agreement_bound(ev, group, f, lo, hi);
  if (as_json) {
    json out{{"applicable", r.applicable},
             {"points_checked", r.points_checked},
             {"consistent", r.consistent}};
    if (!r.applicable) out["precondition_failure"] = r.precondition_failure;
    if (r.applicable) out["epsilon"] = r.epsilon.str();
    if (!r.consistent) {
      out["witness"] = {{"i", r.witness_i},
                        {"j", r.witness_j},
                        {"state", m.state_name(r.witness_state)}};
    }
    emit(out);
  } else {
    if (!r.applicable) {
      std::cout << "applicable: no — " << r.precondition_failure << "\n";
    } else {
      std::cout << "applicable: yes\n";
      std::cout << "epsilon: " << r.epsilon << "\n";
      std::cout << "points checked: " << r.points_checked << "\n";
      if (r.consistent) {
        std::cout << "consistent: yes — no common belief in a gap wider than epsilon\n";
      } else {
        std::cout << "consistent: NO — players " << r.witness_i << "/" << r.witness_j
                  << " at state '" << m.state_name(r.witness_state) << "'\n";
      }
    }
  }
  return r.applicable && r.consistent ? 0 : 1;
}

int cmd_analyze_signals(const Structure& m, const std::string& state_name,
                        const std::string& sigma, const std::string& mode_text, bool as_json) {
  if (!m.has_signals()) throw UsageError("model has no signal assignment");
  if (state_name.empty()) throw UsageError("signals analysis needs --state");
  int state = state_arg(m, state_name);
  Mode mode = mode_arg(mode_text);

  std::vector<std::string> sigmas;
  if (!sigma.empty()) {
    sigmas.push_back(sigma);
  } else {
    // Default to the signals actually received at the state.
    for (PlayerId i = 1; i <= m.player_count(); ++i) {
      const std::optional<std::string>& s = m.signal(i, state);
      if (s && std::find(sigmas.begin(), sigmas.end(), *s) == sigmas.end())
        sigmas.push_back(*s);
    }
    if (sigmas.empty())
      throw UsageError("no player receives a signal at '" + state_name +
                       "'; pick one with --sigma");
  }

  FormulaFactory fa;
  Evaluator ev(m, fa);
  json out{{"state", state_name}, {"mode", mode_name(mode)}, {"signals", json::array()}};
  for (const std::string& s : sigmas) {
    SignalFlags fl = classify_signal(ev, s, state, mode);
    if (as_json) {
      out["signals"].push_back({{"sigma", s},
                                {"common", fl.common},
                                {"public", fl.is_public},
                                {"shared", fl.shared},
                                {"strongly_shared", fl.strongly_shared}});
    } else {
      if (sigmas.size() > 1) std::cout << s << ": ";
      std::cout << "common: " << yesno(fl.common) << ", public: " << yesno(fl.is_public)
                << ", shared: " << yesno(fl.shared)
                << ", strongly shared: " << yesno(fl.strongly_shared) << "\n";
    }
  }
  if (as_json) emit(out);
  return 0;
}

int cmd_analyze_posteriors(const Structure& m, const std::string& state_name, PlayerId i,
                           PlayerId j, const std::string& mode_text, int depth,
                           PlayerId viewpoint, bool as_json) {
  if (state_name.empty()) throw UsageError("posteriors analysis needs --state");
  int state = state_arg(m, state_name);
  player_arg(m, i, "--i");
  player_arg(m, j, "--j");
  if (viewpoint != 0) player_arg(m, viewpoint, "--viewpoint");
  Mode mode = mode_arg(mode_text);

  PosteriorEventReport events = compare_posteriors_events(m, state, i, j);
  FormulaFactory fa;
  Evaluator ev(m, fa);
  PosteriorFormulaReport formulas =
      compare_posteriors_formulas(ev, state, i, j, mode, depth, viewpoint);

  if (as_json) {
    json out{{"state", state_name},
             {"i", i},
             {"j", j},
             {"mode", mode_name(mode)},
             {"depth", depth},
             {"events", json{{"equal", events.equal}}},
             {"formulas", json{{"equal", formulas.equal},
                               {"formulas_checked", formulas.formulas_checked}}}};
    if (!events.equal) {
      out["events"]["witness_state"] = m.state_name(events.witness_state);
      out["events"]["value_i"] = events.value_i.str();
      out["events"]["value_j"] = events.value_j.str();
    }
    if (!formulas.equal) {
      out["formulas"]["witness"] = formulas.witness;
      if (formulas.witness_viewpoint != 0)
        out["formulas"]["viewpoint"] = formulas.witness_viewpoint;
      out["formulas"]["value_i"] = formulas.value_i.str();
      out["formulas"]["value_j"] = formulas.value_j.str();
    }
    emit(out);
  } else {
    if (events.equal) {
      std::cout << "events: equal\n";
    } else {
      std::cout << "events: differ — state '" << m.state_name(events.witness_state) << "': "
                << events.value_i << " vs " << events.value_j << "\n";
    }
    std::cout << "formulas (mode " << mode_name(mode) << ", depth " << depth << "): ";
    if (formulas.equal) {
      std::cout << "equal (" << formulas.formulas_checked << " probes)\n";
    } else {
      std::cout << "differ — " << formulas.witness << ": " << formulas.value_i << " vs "
                << formulas.value_j;
      if (formulas.witness_viewpoint != 0)
        std::cout << " (viewpoint " << formulas.witness_viewpoint << ")";
      std::cout << "\n";
    }
  }
  return events.equal && formulas.equal ? 0 : 1;
}

int cmd_analyze_aumann(const Structure& m, int depth, const std::string& group_text,
                       bool as_json) {
  FormulaFactory fa;
  Evaluator ev(m, fa);
  std::vector<PlayerId> group = group_arg(m, group_text);
  AumannReport r = aumann_check(ev, group, depth);
  bool ok = r.applicable() && r.findings.empty();
  if (as_json) {
    json out{{"common_interpretation", r.common_interpretation},
             {"cpa", r.cpa},
             {"applicable", r.applicable()},
             {"points_checked", r.points_checked},
             {"truncated", r.truncated},
             {"findings", json::array()}};
    for (const AumannFinding& w : r.findings) {
      out["findings"].push_back({{"state", m.state_name(w.state)},
                                 {"i", w.i},
                                 {"j", w.j},
                                 {"formula", w.formula},
                                 {"value_i", w.value_i.str()},
                                 {"value_j", w.value_j.str()}});
    }
    emit(out);
  } else {
    std::cout << "common interpretation: " << yesno(r.common_interpretation) << "\n";
    std::cout << "common prior: " << yesno(r.cpa) << "\n";
    std::cout << "points checked: " << r.points_checked << "\n";
    if (r.applicable()) {
      std::cout << (r.findings.empty()
                        ? "violations: none — posteriors under common belief agree\n"
                        : "violations: FOUND (an engine defect, not a discovery)\n");
    } else if (r.findings.empty()) {
      std::cout << "not applicable; no common belief in differing posteriors found\n";
    } else {
      std::cout << "not applicable; common belief in differing posteriors:\n";
    }
    for (const AumannFinding& w : r.findings) {
      std::cout << "  state '" << m.state_name(w.state) << "', players " << w.i << "/" << w.j
                << ", " << w.formula << ": " << w.value_i << " vs " << w.value_j << "\n";
    }
    if (r.truncated) std::cout << "  (more findings not recorded)\n";
  }
  return ok ? 0 : 1;
}

// --------------------------------------------------------------- transform

std::string default_out_path(const std::string& input, const std::string& kind) {
  std::filesystem::path p(input);
  std::filesystem::path out = p.parent_path() / (p.stem().string() + "." + kind + ".json");
  return out.string();
}

std::string pairing_out_path(const std::string& model_out) {
  std::filesystem::path p(model_out);
  std::filesystem::path out = p.parent_path() / (p.stem().string() + ".pairing.json");
  return out.string();
}

json pairing_json(const Structure& left, const Structure& right,
                  const std::vector<PointPair>& pairs) {
  json arr = json::array();
  for (const PointPair& pp : pairs) {
    arr.push_back({{"left", {{"state", left.state_name(pp.left.state)},
                             {"viewpoint", pp.left.viewpoint}}},
                   {"right", {{"state", right.state_name(pp.right.state)},
                              {"viewpoint", pp.right.viewpoint}}}});
  }
  return arr;
}

struct VerifyOutcome {
  bool ran = false;
  bool equivalent = true;
  std::vector<std::string> lines;
  json reports = json::array();
};

void run_verify(VerifyOutcome& out, const std::string& tag, Evaluator& left, Evaluator& right,
                const std::vector<PointPair>& pairing, Mode lm, Mode rm,
                const std::vector<FormulaId>& family, const Structure& lstruct,
                const Structure& rstruct) {
  EquivalenceVerdict v = check_equivalent(left, right, pairing, lm, rm, family);
  out.ran = true;
  out.equivalent = out.equivalent && v.equivalent;
  std::ostringstream line;
  line << "verify " << tag << ": ";
  if (v.equivalent) {
    line << "equivalent (family size " << family.size() << ", " << v.comparisons
         << " comparisons)";
  } else {
    line << "NOT equivalent — " << v.witness_formula << " at left ('"
         << lstruct.state_name(v.witness.left.state) << "', v" << v.witness.left.viewpoint
         << ") vs right ('" << rstruct.state_name(v.witness.right.state) << "', v"
         << v.witness.right.viewpoint << ")";
  }
  out.lines.push_back(line.str());
  json rep{{"tag", tag},
           {"equivalent", v.equivalent},
           {"family_size", family.size()},
           {"comparisons", v.comparisons}};
  if (!v.equivalent) {
    rep["witness"] = {{"formula", v.witness_formula},
                      {"left", {{"state", lstruct.state_name(v.witness.left.state)},
                                {"viewpoint", v.witness.left.viewpoint}}},
                      {"right", {{"state", rstruct.state_name(v.witness.right.state)},
                                 {"viewpoint", v.witness.right.viewpoint}}}};
  }
  out.reports.push_back(rep);
}

int cmd_transform(const std::string& path, const std::string& kind, PlayerId player,
                  const std::string& state_name, std::string out_path, bool verify, int depth,
                  bool as_json) {
  Structure m = load_structure(path);
  if (out_path.empty()) out_path = default_out_path(path, kind);

  Structure result;
  std::vector<PointPair> pairs;
  json extras = json::object();
  Mode left_mode = Mode::In;
  Mode right_mode = Mode::In;
  std::string verify_tag;
  std::optional<LabelsResult> labels;
  std::optional<CopiesResult> copies;

  if (kind == "project") {
    player_arg(m, player, "--player");
    result = project_outermost(m, player);
    pairs = projection_pairing(m, player);
    left_mode = right_mode = Mode::Out;
    verify_tag = "project (out, viewpoint " + std::to_string(player) + ")";
  } else if (kind == "copies") {
    copies = disjoint_copies(m);
    result = copies->structure;
    pairs = copies_pairing(*copies);
    left_mode = right_mode = Mode::In;
    verify_tag = "copies (in, knowledge-free family)";
  } else {
    if (state_name.empty()) throw UsageError("labels transform needs --state");
    labels = add_cell_labels(m, state_arg(m, state_name));
    result = labels->structure;
    pairs = restriction_pairing(*labels);
    std::vector<std::string> kept;
    for (int s : labels->kept_states) kept.push_back(m.state_name(s));
    extras["kept_states"] = kept;
    extras["fresh_props"] = labels->fresh_props;
  }

  save_structure(result, out_path);
  std::string pairing_path = pairing_out_path(out_path);
  {
    json sidecar{{"transform", kind},
                 {"input", path},
                 {"output", out_path},
                 {"left_mode", mode_name(left_mode)},
                 {"right_mode", mode_name(right_mode)},
                 {"pairs", pairing_json(m, result, pairs)}};
    for (auto& [k, v] : extras.items()) sidecar[k] = v;
    std::ofstream out(pairing_path);
    if (!out) throw UsageError("cannot write '" + pairing_path + "'");
    out << sidecar.dump(2) << "\n";
  }

  VerifyOutcome vo;
  if (verify) {
    FormulaFactory fa;
    std::vector<FormulaId> family =
        formula_family(fa, m.vocabulary(), m.player_count(), depth);
    Evaluator left(m, fa);
    Evaluator right(result, fa);
    if (kind == "copies") {
      // Beliefs and probabilities survive the copies construction; partition
      // knowledge does not (a cell spans every player's copies), so the
      // contract is stated over the knowledge-free fragment.
      std::vector<FormulaId> kept;
      for (FormulaId f : family) {
        if (!fa.mentions(f, NodeKind::Knows)) kept.push_back(f);
      }
      run_verify(vo, verify_tag, left, right, pairs, left_mode, right_mode, kept, m, result);
    } else if (kind == "project") {
      run_verify(vo, verify_tag, left, right, pairs, left_mode, right_mode, family, m, result);
    } else {
      run_verify(vo, "labels (out)", left, right, pairs, Mode::Out, Mode::Out, family, m,
                 result);
      run_verify(vo, "labels (in)", left, right, pairs, Mode::In, Mode::In, family, m, result);
    }
  }

  if (as_json) {
    json out{{"transform", kind},
             {"output", out_path},
             {"pairing", pairing_path},
             {"verify", vo.ran ? json(vo.reports) : json()}};
    for (auto& [k, v] : extras.items()) out[k] = v;
    emit(out);
  } else {
    std::cout << "wrote " << out_path << "\n";
    std::cout << "wrote " << pairing_path << "\n";
    if (extras.contains("fresh_props")) {
      std::cout << "kept states: " << joined(extras["kept_states"].get<std::vector<std::string>>())
                << "\n";
      std::cout << "fresh labels: "
                << joined(extras["fresh_props"].get<std::vector<std::string>>()) << "\n";
    }
    for (const std::string& line : vo.lines) std::cout << line << "\n";
  }
  return vo.ran && !vo.equivalent ? 1 : 0;
}

// ------------------------------------------------------------------- sweep

int cmd_sweep(const std::string& suite, const std::string& seeds, int depth, bool list,
              bool as_json) {
  if (list) {
    if (as_json) {
      json out = json::array();
      for (const std::string& name : sweep_suite_names())
        out.push_back({{"suite", name}, {"description", sweep_suite_description(name)}});
      emit(out);
    } else {
      for (const std::string& name : sweep_suite_names())
        std::cout << name << " — " << sweep_suite_description(name) << "\n";
    }
    return 0;
  }
  if (suite.empty()) throw UsageError("pick a suite with --suite NAME (or --list to see them)");

  SweepOptions opts;
  opts.depth = depth;
  if (!seeds.empty()) {
    auto [a, b] = range_arg(seeds, "--seeds");
    if (a < 0) throw UsageError("--seeds must be non-negative");
    opts.seed_begin = static_cast<std::uint64_t>(a);
    opts.seed_count = static_cast<int>(b - a + 1);
  }

  std::vector<std::string> names;
  if (suite == "all") {
    names = sweep_suite_names();
  } else {
    names.push_back(suite);
  }

  bool ok = true;
  json out = json::array();
  for (const std::string& name : names) {
    SweepResult r = run_sweep(name, opts);
    ok = ok && r.ok();
    if (as_json) {
      json v = json::array();
      for (const SweepViolation& w : r.violations)
        v.push_back({{"seed", w.seed}, {"detail", w.detail}});
      out.push_back({{"suite", r.suite},
                     {"seeds_run", r.seeds_run},
                     {"cases_checked", r.cases_checked},
                     {"ok", r.ok()},
                     {"truncated", r.truncated},
                     {"violations", v}});
    } else {
      std::cout << r.suite << ": " << r.violations.size() << " violations (seeds "
                << opts.seed_begin << ".." << (opts.seed_begin + opts.seed_count - 1) << ", "
                << r.cases_checked << " cases)\n";
      for (const SweepViolation& w : r.violations)
        std::cout << "  seed " << w.seed << ": " << w.detail << "\n";
      if (r.truncated) std::cout << "  (more violations not recorded)\n";
    }
  }
  if (as_json) emit(out);
  return ok ? 0 : 1;
}

// --------------------------------------------------------------------- gen

int cmd_gen(std::uint64_t seed, const std::string& states, const std::string& players,
            const std::string& props, const std::string& ambiguity, bool no_common_prior,
            bool with_signals, bool degenerate, const std::string& out_path) {
  GeneratorConfig cfg;
  if (!states.empty()) {
    auto [a, b] = range_arg(states, "--states");
    cfg.min_states = static_cast<int>(a);
    cfg.max_states = static_cast<int>(b);
  }
  if (!players.empty()) {
    auto [a, b] = range_arg(players, "--players");
    cfg.min_players = static_cast<int>(a);
    cfg.max_players = static_cast<int>(b);
  }
  if (!props.empty()) {
    auto [a, b] = range_arg(props, "--props");
    cfg.min_props = static_cast<int>(a);
    cfg.max_props = static_cast<int>(b);
  }
  if (!ambiguity.empty()) cfg.ambiguity = parse_rational_text(ambiguity);
  cfg.common_prior = !no_common_prior;
  cfg.with_signals = with_signals;
  cfg.allow_degenerate = degenerate;

  Structure m = random_structure(seed, cfg);
  if (out_path.empty()) {
    std::cout << structure_to_json(m) << "\n";
  } else {
    save_structure(m, out_path);
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ambicheck — epistemic probability structures: validation, evaluation,"
               " agreement analyses, transformations, and property sweeps"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit one JSON document instead of the human report");

  // validate
  std::string v_model, v_ai;
  CLI::App* validate = app.add_subcommand("validate", "check the model assumptions");
  validate->fallthrough();
  validate->add_option("model", v_model, "model file")->required();
  validate->add_option("--ai-mode", v_ai, "also check the label assumptions (out-ai | in-ai)");

  // eval
  std::string e_model, e_formula, e_mode = "in", e_state;
  PlayerId e_viewpoint = 0;
  CLI::App* eval = app.add_subcommand("eval", "evaluate a formula over (state, viewpoint)");
  eval->fallthrough();
  eval->add_option("model", e_model, "model file")->required();
  eval->add_option("formula", e_formula, "formula text")->required();
  eval->add_option("--mode", e_mode, "out | in | out-ai | in-ai (default in)");
  eval->add_option("--state", e_state, "restrict to one state");
  eval->add_option("--viewpoint", e_viewpoint, "restrict to one viewpoint");

  // analyze
  std::string a_model;
  CLI::App* analyze = app.add_subcommand("analyze", "run one analysis over a model");
  analyze->fallthrough();
  analyze->require_subcommand(1);
  analyze->add_option("model", a_model, "model file")->required();

  CLI::App* a_cpa = analyze->add_subcommand("cpa", "common prior assumption");
  a_cpa->fallthrough();

  CLI::App* a_priors = analyze->add_subcommand("priors", "prior-generated beliefs");
  a_priors->fallthrough();

  std::string amb_formula;
  CLI::App* a_amb = analyze->add_subcommand("ambiguity", "disagreement mass of a formula");
  a_amb->fallthrough();
  a_amb->add_option("formula", amb_formula, "propositional formula")->required();

  std::string ag_formula, ag_b, ag_b2, ag_group;
  CLI::App* a_agree = analyze->add_subcommand(
      "agreement", "scan for common belief in posterior gaps wider than epsilon");
  a_agree->fallthrough();
  a_agree->add_option("formula", ag_formula, "propositional formula")->required();
  a_agree->add_option("--b", ag_b, "lower threshold (rational)")->required();
  a_agree->add_option("--b2", ag_b2, "upper threshold (rational)")->required();
  a_agree->add_option("--group", ag_group, "players, comma-separated (default all)");

  std::string sg_state, sg_sigma, sg_mode = "in";
  CLI::App* a_signals = analyze->add_subcommand("signals", "classify a signal's grade");
  a_signals->fallthrough();
  a_signals->add_option("--state", sg_state, "evaluation state")->required();
  a_signals->add_option("--sigma", sg_sigma, "signal name (default: received at the state)");
  a_signals->add_option("--mode", sg_mode, "out | in | out-ai | in-ai (default in)");

  std::string po_state, po_mode = "in";
  PlayerId po_i = 0, po_j = 0, po_viewpoint = 0;
  int po_depth = 2;
  CLI::App* a_post = analyze->add_subcommand("posteriors", "compare two players' posteriors");
  a_post->fallthrough();
  a_post->add_option("--state", po_state, "evaluation state")->required();
  a_post->add_option("--i", po_i, "first player")->required();
  a_post->add_option("--j", po_j, "second player")->required();
  a_post->add_option("--mode", po_mode, "out | in | out-ai | in-ai (default in)");
  a_post->add_option("--depth", po_depth, "probe depth (default 2)")->check(CLI::Range(0, 3));
  a_post->add_option("--viewpoint", po_viewpoint,
                     "fix the reading viewpoint (out-family modes only)");

  std::string au_group;
  int au_depth = 2;
  CLI::App* a_aumann = analyze->add_subcommand(
      "aumann", "no common belief in differing posteriors (or the ambiguity escape)");
  a_aumann->fallthrough();
  a_aumann->add_option("--depth", au_depth, "probe depth (default 2)")->check(CLI::Range(0, 3));
  a_aumann->add_option("--group", au_group, "players, comma-separated (default all)");

  // transform
  std::string t_model, t_state, t_out;
  PlayerId t_player = 0;
  bool t_verify = false;
  int t_depth = 2;
  CLI::App* transform = app.add_subcommand("transform", "apply a model transformation");
  transform->fallthrough();
  transform->require_subcommand(1);
  transform->add_option("model", t_model, "model file")->required();
  CLI::App* t_project =
      transform->add_subcommand("project", "give every player one viewpoint's readings");
  t_project->fallthrough();
  t_project->add_option("--player", t_player, "whose readings to project")->required();
  CLI::App* t_copies =
      transform->add_subcommand("copies", "one commonly-read copy of the space per player");
  t_copies->fallthrough();
  CLI::App* t_labels = transform->add_subcommand(
      "labels", "restrict to a reachable component and name every cell");
  t_labels->fallthrough();
  t_labels->add_option("--state", t_state, "component seed state")->required();
  for (CLI::App* sub : {t_project, t_copies, t_labels}) {
    sub->add_option("--out", t_out, "output model path (default <input>.<kind>.json)");
    sub->add_flag("--verify", t_verify, "check the equivalence contract over a probe family");
    sub->add_option("--depth", t_depth, "probe family depth (default 2)")
        ->check(CLI::Range(0, 3));
  }

  // sweep
  std::string s_suite, s_seeds;
  int s_depth = 2;
  bool s_list = false;
  CLI::App* sweep = app.add_subcommand("sweep", "run property suites over random structures");
  sweep->fallthrough();
  sweep->add_option("--suite", s_suite, "suite name, or 'all'");
  sweep->add_option("--seeds", s_seeds, "seed range A..B, inclusive (default 0..199)");
  sweep->add_option("--depth", s_depth, "probe family depth (default 2)")
      ->check(CLI::Range(0, 3));
  sweep->add_flag("--list", s_list, "list the suites and exit");

  // gen
  std::uint64_t g_seed = 0;
  std::string g_states, g_players, g_props, g_ambiguity, g_out;
  bool g_no_common = false, g_signals = false, g_degenerate = false;
  CLI::App* gen = app.add_subcommand("gen", "generate a random structure");
  gen->fallthrough();
  gen->add_option("--seed", g_seed, "generator seed (default 0)");
  gen->add_option("--states", g_states, "state count or range a..b (default 2..6)");
  gen->add_option("--players", g_players, "player count or range a..b (default 2..3)");
  gen->add_option("--props", g_props, "proposition count or range a..b (default 1..2)");
  gen->add_option("--ambiguity", g_ambiguity, "per-prop flip chance, rational (default 1/4)");
  gen->add_flag("--no-common-prior", g_no_common, "draw posteriors cell by cell instead");
  gen->add_flag("--signals", g_signals, "attach signals, receptions, and cell labels");
  gen->add_flag("--degenerate", g_degenerate, "allow point-mass posteriors");
  gen->add_option("--out", g_out, "write the model here instead of stdout");

  try {
    app.parse(argc, argv);

    if (*validate) return cmd_validate(v_model, v_ai, as_json);
    if (*eval) return cmd_eval(e_model, e_formula, e_mode, e_state, e_viewpoint, as_json);
    if (*analyze) {
      Structure m = load_structure(a_model);
      if (*a_cpa) return cmd_analyze_cpa(m, as_json);
      if (*a_priors) return cmd_analyze_priors(m, as_json);
      if (*a_amb) return cmd_analyze_ambiguity(m, amb_formula, as_json);
      if (*a_agree) return cmd_analyze_agreement(m, ag_formula, ag_b, ag_b2, ag_group, as_json);
      if (*a_signals) return cmd_analyze_signals(m, sg_state, sg_sigma, sg_mode, as_json);
      if (*a_post)
        return cmd_analyze_posteriors(m, po_state, po_i, po_j, po_mode, po_depth, po_viewpoint,
                                      as_json);
      if (*a_aumann) return cmd_analyze_aumann(m, au_depth, au_group, as_json);
    }
    if (*transform) {
      std::string kind = t_project->parsed() ? "project" : t_copies->parsed() ? "copies"
                                                                              : "labels";
      return cmd_transform(t_model, kind, t_player, t_state, t_out, t_verify, t_depth, as_json);
    }
    if (*sweep) return cmd_sweep(s_suite, s_seeds, s_depth, s_list, as_json);
    if (*gen)
      return cmd_gen(g_seed, g_states, g_players, g_props, g_ambiguity, g_no_common, g_signals,
                     g_degenerate, g_out);
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
