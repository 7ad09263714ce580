#include "ambilogic/validate.hpp"

#include "ambilogic/parser.hpp"

namespace ambilogic {

const char* check_status_name(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::ByConstruction: return "by-construction";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

namespace {

void check_partitions(const Structure& m, ValidationReport& report) {
  CheckResult r{"partition", CheckStatus::Pass, ""};
  for (PlayerId i = 1; i <= m.player_count() && r.status == CheckStatus::Pass; ++i) {
    StateSet covered(m.state_count());
    for (int c = 0; c < m.cell_count(i); ++c) {
      const StateSet& cell = m.cell(i, c);
      if (covered.intersects(cell)) {
        StateSet overlap = covered & cell;
        r.status = CheckStatus::Fail;
        r.detail = "player " + std::to_string(i) + ": state '" +
                   m.state_name(overlap.first()) + "' lies in two cells";
        break;
      }
      covered |= cell;
    }
    if (r.status == CheckStatus::Pass && covered != StateSet::full(m.state_count())) {
      StateSet missing = covered.complement();
      r.status = CheckStatus::Fail;
      r.detail = "player " + std::to_string(i) + ": state '" + m.state_name(missing.first()) +
                 "' is in no cell";
    }
  }
  report.checks.push_back(std::move(r));
}

void check_posteriors(const Structure& m, ValidationReport& report) {
  CheckResult r{"A1", CheckStatus::Pass, ""};
  for (PlayerId i = 1; i <= m.player_count() && r.status == CheckStatus::Pass; ++i) {
    for (int c = 0; c < m.cell_count(i) && r.status == CheckStatus::Pass; ++c) {
      const StateSet& cell = m.cell(i, c);
      Rational sum(0);
      for (const auto& [state, mass] : m.posterior_entries(i, c)) {
        if (mass.is_negative()) {
          r.status = CheckStatus::Fail;
          r.detail = "player " + std::to_string(i) + ", cell of '" +
                     m.state_name(cell.first()) + "': negative mass at '" +
                     m.state_name(state) + "'";
          break;
        }
        if (!cell.test(state) && !mass.is_zero()) {
          r.status = CheckStatus::Fail;
          r.detail = "player " + std::to_string(i) + ", cell of '" +
                     m.state_name(cell.first()) + "': mass outside the cell at '" +
                     m.state_name(state) + "'";
          break;
        }
        if (cell.test(state)) sum += mass;
      }
      if (r.status == CheckStatus::Pass && !sum.is_one()) {
        r.status = CheckStatus::Fail;
        r.detail = "player " + std::to_string(i) + ", cell of '" + m.state_name(cell.first()) +
                   "': posterior not a probability measure (sums to " + sum.str() + ")";
      }
    }
  }
  report.checks.push_back(std::move(r));
}

void check_priors(const Structure& m, ValidationReport& report) {
  CheckResult r{"priors", CheckStatus::Skipped, "no priors present"};
  if (m.has_priors()) {
    r.status = CheckStatus::Pass;
    r.detail.clear();
    for (PlayerId i = 1; i <= m.player_count(); ++i) {
      Rational sum(0);
      for (int s = 0; s < m.state_count(); ++s) {
        const Rational& mass = m.prior(i)[s];
        if (mass.is_negative()) {
          r.status = CheckStatus::Fail;
          r.detail = "player " + std::to_string(i) + ": negative prior mass at '" +
                     m.state_name(s) + "'";
          break;
        }
        sum += mass;
      }
      if (r.status == CheckStatus::Fail) break;
      if (!sum.is_one()) {
        r.status = CheckStatus::Fail;
        r.detail = "player " + std::to_string(i) + ": prior sums to " + sum.str();
        break;
      }
    }
  }
  report.checks.push_back(std::move(r));
}

void check_signals(const Structure& m, ValidationReport& report) {
  CheckResult r{"signals", CheckStatus::Skipped, "no signals present"};
  if (m.has_signals()) {
    r.status = CheckStatus::Pass;
    r.detail.clear();
    for (PlayerId i = 1; i <= m.player_count() && r.status == CheckStatus::Pass; ++i) {
      for (int s = 0; s < m.state_count(); ++s) {
        const auto& sig = m.signal(i, s);
        if (!sig) continue;
        std::string prop = "recv_" + std::to_string(i) + "_" + *sig;
        if (!m.has_prop(prop)) {
          r.status = CheckStatus::Fail;
          r.detail = "state '" + m.state_name(s) + "': player " + std::to_string(i) +
                     " receives '" + *sig + "' but proposition '" + prop + "' is not interpreted";
          break;
        }
        if (m.prop_extension(i, prop) != m.cell_of(i, s)) {
          r.status = CheckStatus::Fail;
          r.detail = "state '" + m.state_name(s) + "': [[" + prop + "]] under player " +
                     std::to_string(i) + " is not that player's cell";
          break;
        }
      }
    }
  }
  report.checks.push_back(std::move(r));
}

}  // namespace

ValidationReport validate(const Structure& m) {
  ValidationReport report;
  check_partitions(m, report);
  check_posteriors(m, report);
  report.checks.push_back(
      {"A2", CheckStatus::ByConstruction, "posteriors are stored per cell"});
  report.checks.push_back(
      {"A3", CheckStatus::ByConstruction, "every event over a finite space is measurable"});
  report.checks.push_back(
      {"A4", CheckStatus::ByConstruction, "formula extensions are subsets of a finite space"});
  check_priors(m, report);
  check_signals(m, report);
  return report;
}

ValidationReport validate_ai(const Structure& m, Mode mode) {
  ValidationReport report;
  if (!mode_is_conditioning(mode)) {
    report.checks.push_back({"mode", CheckStatus::Fail,
                             std::string("mode '") + mode_name(mode) +
                                 "' carries no label obligations; use out-ai or in-ai"});
    return report;
  }
  if (!m.has_cell_labels()) {
    report.checks.push_back({"labels", CheckStatus::Fail, "cell labels required"});
    return report;
  }

  const Mode base = mode == Mode::OutAi ? Mode::Out : Mode::In;
  FormulaFactory factory;
  Evaluator eval(m, factory);
  // [player-1][cell] -> parsed label
  std::vector<std::vector<FormulaId>> labels(m.player_count());
  for (PlayerId i = 1; i <= m.player_count(); ++i) {
    for (int c = 0; c < m.cell_count(i); ++c) {
      labels[i - 1].push_back(parse_formula(m.cell_label(i, c), factory));
    }
  }

  CheckResult a5{"A5", CheckStatus::Pass, ""};
  for (PlayerId i = 1; i <= m.player_count() && a5.status == CheckStatus::Pass; ++i) {
    for (int c = 0; c < m.cell_count(i); ++c) {
      const StateSet& cell = m.cell(i, c);
      if (eval.extension(labels[i - 1][c], i, base) != cell) {
        a5.status = CheckStatus::Fail;
        a5.detail = "player " + std::to_string(i) + ": [[" + m.cell_label(i, c) +
                    "]] is not the cell of '" + m.state_name(cell.first()) + "'";
        break;
      }
    }
  }
  report.checks.push_back(std::move(a5));

  const bool own_labels_only = mode == Mode::InAi;
  CheckResult a6{own_labels_only ? "A6'" : "A6", CheckStatus::Pass, ""};
  for (PlayerId i = 1; i <= m.player_count() && a6.status == CheckStatus::Pass; ++i) {
    for (PlayerId j = 1; j <= m.player_count(); ++j) {
      if (own_labels_only && j != i) continue;

      // Pointwise: every state must sit inside reader j's take on the label
      // of its own cell.
      std::vector<StateSet> read;
      for (int c = 0; c < m.cell_count(i); ++c) {
        read.push_back(eval.extension(labels[i - 1][c], j, base));
      }
      bool bad = false;
      for (int s = 0; s < m.state_count() && !bad; ++s) {
        int c = m.cell_index(i, s);
        if (c < 0) continue;  // partition defects are validate()'s report
        if (!read[c].test(s)) {
          a6.status = CheckStatus::Fail;
          a6.detail = "i=" + std::to_string(i) + ", j=" + std::to_string(j) + ", state '" +
                      m.state_name(s) + "': state not in [[" + m.cell_label(i, c) +
                      "]] under player " + std::to_string(j);
          bad = true;
        }
      }
      if (bad) break;

      // The distinct label readings must tile the space.
      std::vector<StateSet> distinct;
      for (const StateSet& e : read) {
        bool dup = false;
        for (const StateSet& d : distinct) {
          if (d == e) { dup = true; break; }
        }
        if (!dup) distinct.push_back(e);
      }
      StateSet covered(m.state_count());
      for (const StateSet& e : distinct) {
        if (covered.intersects(e)) {
          a6.status = CheckStatus::Fail;
          a6.detail = "i=" + std::to_string(i) + ", j=" + std::to_string(j) +
                      ": label readings overlap at '" +
                      m.state_name((covered & e).first()) + "'";
          bad = true;
          break;
        }
        covered |= e;
      }
      if (!bad && covered != StateSet::full(m.state_count())) {
        a6.status = CheckStatus::Fail;
        a6.detail = "i=" + std::to_string(i) + ", j=" + std::to_string(j) +
                    ": label readings miss '" + m.state_name(covered.complement().first()) + "'";
      }
      if (a6.status == CheckStatus::Fail) break;
    }
  }
  report.checks.push_back(std::move(a6));
  return report;
}

}  // namespace ambilogic
